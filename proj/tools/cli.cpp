#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <promethee/promethee.hpp>

namespace promethee::cli {
namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_data = 2;
constexpr int exit_mismatch = 3;

/// Writes either to --out or to the session's standard output stream.
struct OutputTarget {
    std::ostream* stream = nullptr;
    std::ofstream file;

    bool open(const std::string& path, std::ostream& fallback, std::ostream& err) {
        if (path.empty()) {
            stream = &fallback;
            return true;
        }
        file.open(path, std::ios::binary);
        if (!file) {
            err << "error: cannot open '" << path << "' for writing\n";
            return false;
        }
        stream = &file;
        return true;
    }
};

[[nodiscard]] PreferenceKind kind_from_name(const std::string& name) {
    return name == "level" ? PreferenceKind::level : PreferenceKind::linear;
}

[[nodiscard]] FlowResult compute_with(const std::string& engine, const DecisionMatrix& matrix,
                                      std::size_t threads) {
    return engine == "pairwise" ? compute_flows_pairwise(matrix, threads)
                                : compute_flows_sorting(matrix, threads);
}

[[nodiscard]] DecisionMatrix load_matrix(const std::string& data_path,
                                         const std::string& config_path, double& tie_eps) {
    std::ifstream data(data_path, std::ios::binary);
    if (!data) throw std::runtime_error("cannot open '" + data_path + "'");
    const RawTable table = read_evaluation_csv(data);

    std::ifstream cfg(config_path, std::ios::binary);
    if (!cfg) throw std::runtime_error("cannot open '" + config_path + "'");
    const RankingConfig config = read_config_json(cfg);

    tie_eps = config.tie_eps;
    return assemble(table, config);
}

[[nodiscard]] double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::fabs(a[i] - b[i]));
    }
    return worst;
}

struct GenOptions {
    std::size_t n = 0;
    std::size_t criteria = 1;
    std::uint64_t seed = 0;
    std::string function = "linear";
    double q = 0.01;
    double p = 0.05;
    std::string out_path;
    std::string config_out_path;
};

struct TableOptions {
    std::string data_path;
    std::string config_path;
    std::string engine = "sorting";
    std::size_t threads = 1;
    std::string out_path;
};

struct RankOptions : TableOptions {
    std::string method = "net";
    double tie_eps = -1.0;  // negative: take it from the config file
    bool tie_eps_set = false;
};

struct VerifyOptions {
    std::string data_path;
    std::string config_path;
    std::size_t n = 0;
    bool n_set = false;
    std::size_t criteria = 1;
    std::uint64_t seed = 0;
    std::string function = "linear";
    double q = 0.01;
    double p = 0.05;
    std::size_t threads = 1;
    double tolerance = 1e-9;
    std::string out_path;
};

struct BenchOptions {
    std::size_t min_exp = 10;
    std::size_t max_exp = 20;
    std::size_t criteria = 1;
    std::uint64_t seed = 42;
    std::size_t repeats = 3;
    std::size_t max_pairwise_n = 65536;
    std::string engine = "both";
    std::string function = "linear";
    double q = 0.01;
    double p = 0.05;
    std::size_t threads = 1;
    std::string out_path;
};

bool check_thresholds(double q, double p, std::ostream& err) {
    if (!std::isfinite(q) || !std::isfinite(p) || q < 0.0 || p < q) {
        err << "error: thresholds must satisfy 0 <= q <= p and be finite\n";
        return false;
    }
    return true;
}

int run_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.n < 2) {
        err << "error: --n must be at least 2\n";
        return exit_usage;
    }
    if (opt.criteria == 0) {
        err << "error: --criteria must be at least 1\n";
        return exit_usage;
    }
    if (!check_thresholds(opt.q, opt.p, err)) return exit_usage;

    GenerateSpec spec;
    spec.alternatives = opt.n;
    spec.criteria = opt.criteria;
    spec.seed = opt.seed;
    spec.kind = kind_from_name(opt.function);
    spec.q = opt.q;
    spec.p = opt.p;
    const DecisionMatrix matrix = generate_matrix(spec);

    OutputTarget target;
    if (!target.open(opt.out_path, out, err)) return exit_data;
    std::vector<std::string> columns;
    columns.reserve(matrix.criterion_count());
    for (const auto& c : matrix.criteria()) columns.push_back(c.name);
    write_evaluation_csv(*target.stream, matrix.ids(), columns, matrix.values());

    if (!opt.config_out_path.empty()) {
        std::ofstream cfg(opt.config_out_path, std::ios::binary);
        if (!cfg) {
            err << "error: cannot open '" << opt.config_out_path << "' for writing\n";
            return exit_data;
        }
        std::vector<Criterion> criteria = matrix.criteria();
        for (auto& c : criteria) c.weight = 1.0;  // write the unnormalized weights back
        write_config_json(cfg, criteria);
    }
    return exit_ok;
}

int run_flows(const TableOptions& opt, std::ostream& out, std::ostream& err) {
    double tie_eps = 0.0;
    const DecisionMatrix matrix = load_matrix(opt.data_path, opt.config_path, tie_eps);
    const FlowResult flows = compute_with(opt.engine, matrix, opt.threads);

    OutputTarget target;
    if (!target.open(opt.out_path, out, err)) return exit_data;
    write_flows_csv(*target.stream, matrix, flows);
    return exit_ok;
}

int run_rank(const RankOptions& opt, std::ostream& out, std::ostream& err) {
    double tie_eps = 0.0;
    const DecisionMatrix matrix = load_matrix(opt.data_path, opt.config_path, tie_eps);
    if (opt.tie_eps_set) {
        if (!(opt.tie_eps >= 0.0)) {
            err << "error: --tie-eps must be >= 0\n";
            return exit_usage;
        }
        tie_eps = opt.tie_eps;
    }
    const FlowResult flows = compute_with(opt.engine, matrix, opt.threads);

    OutputTarget target;
    if (!target.open(opt.out_path, out, err)) return exit_data;
    if (opt.method == "partial") {
        write_partial_ranking_csv(*target.stream, matrix, partial_ranking(flows, tie_eps));
    } else {
        write_net_ranking_csv(*target.stream, matrix, flows,
                              net_flow_ranking(flows, tie_eps));
    }
    return exit_ok;
}

int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    const bool file_mode = !opt.data_path.empty() || !opt.config_path.empty();
    if (file_mode && (opt.data_path.empty() || opt.config_path.empty())) {
        err << "error: verify needs both --data and --config\n";
        return exit_usage;
    }
    if (file_mode && opt.n_set) {
        err << "error: --n cannot be combined with --data/--config\n";
        return exit_usage;
    }
    if (!file_mode && !opt.n_set) {
        err << "error: verify needs either --data/--config or --n\n";
        return exit_usage;
    }
    if (!(opt.tolerance >= 0.0)) {
        err << "error: --tolerance must be >= 0\n";
        return exit_usage;
    }

    double tie_eps = 0.0;
    DecisionMatrix matrix = [&]() -> DecisionMatrix {
        if (file_mode) return load_matrix(opt.data_path, opt.config_path, tie_eps);
        if (opt.n < 2) throw std::runtime_error("--n must be at least 2");
        if (opt.criteria == 0) throw std::runtime_error("--criteria must be at least 1");
        if (!std::isfinite(opt.q) || !std::isfinite(opt.p) || opt.q < 0.0 || opt.p < opt.q) {
            throw std::runtime_error("thresholds must satisfy 0 <= q <= p");
        }
        GenerateSpec spec;
        spec.alternatives = opt.n;
        spec.criteria = opt.criteria;
        spec.seed = opt.seed;
        spec.kind = kind_from_name(opt.function);
        spec.q = opt.q;
        spec.p = opt.p;
        return generate_matrix(spec);
    }();

    const FlowResult a = compute_flows_pairwise(matrix, opt.threads);
    const FlowResult b = compute_flows_sorting(matrix, opt.threads);

    std::vector<double> net_a(matrix.alternative_count() * matrix.criterion_count());
    std::vector<double> net_b(net_a.size());
    for (std::size_t i = 0; i < net_a.size(); ++i) {
        net_a[i] = a.uni_plus[i] - a.uni_minus[i];
        net_b[i] = b.uni_plus[i] - b.uni_minus[i];
    }

    struct Field {
        const char* name;
        double diff;
    };
    const Field fields[] = {
        {"uni_plus", max_abs_diff(a.uni_plus, b.uni_plus)},
        {"uni_minus", max_abs_diff(a.uni_minus, b.uni_minus)},
        {"uni_net", max_abs_diff(net_a, net_b)},
        {"phi_plus", max_abs_diff(a.phi_plus, b.phi_plus)},
        {"phi_minus", max_abs_diff(a.phi_minus, b.phi_minus)},
        {"phi", max_abs_diff(a.phi, b.phi)},
    };

    OutputTarget target;
    if (!target.open(opt.out_path, out, err)) return exit_data;
    std::ostream& os = *target.stream;

    os << "pairwise vs sorting on n=" << matrix.alternative_count()
       << " criteria=" << matrix.criterion_count() << '\n';
    double worst = 0.0;
    for (const Field& f : fields) {
        os << f.name << " " << format_double(f.diff, 3) << '\n';
        worst = std::max(worst, f.diff);
    }
    const bool ok = worst <= opt.tolerance;
    os << "max " << format_double(worst, 3) << " tolerance "
       << format_double(opt.tolerance, 3) << " -> " << (ok ? "OK" : "FAIL") << '\n';
    return ok ? exit_ok : exit_mismatch;
}

int run_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.min_exp > opt.max_exp) {
        err << "error: --min-exp must not exceed --max-exp\n";
        return exit_usage;
    }
    if (opt.max_exp > 30) {
        err << "error: --max-exp is capped at 30\n";
        return exit_usage;
    }
    if (opt.repeats == 0) {
        err << "error: --repeats must be at least 1\n";
        return exit_usage;
    }
    if (opt.criteria == 0) {
        err << "error: --criteria must be at least 1\n";
        return exit_usage;
    }
    if (!check_thresholds(opt.q, opt.p, err)) return exit_usage;

    BenchConfig config;
    for (std::size_t e = opt.min_exp; e <= opt.max_exp; ++e) {
        config.sizes.push_back(std::size_t{1} << e);
    }
    config.criteria = opt.criteria;
    config.seed = opt.seed;
    config.repeats = opt.repeats;
    config.max_pairwise_n = opt.max_pairwise_n;
    config.workers = opt.threads;
    config.q = opt.q;
    config.p = opt.p;
    config.kind = kind_from_name(opt.function);
    config.run_pairwise = opt.engine != "sorting";
    config.run_sorting = opt.engine != "pairwise";

    const BenchReport report = run_bench(config, [&err](const BenchRow& row) {
        err << row.engine << " n=" << row.n;
        if (row.skipped) {
            err << " skipped (exceeds pairwise size limit)";
        } else {
            err << " median=" << format_double(*row.median_seconds, 4) << "s";
            if (row.ratio) err << " ratio=" << format_double(*row.ratio, 4);
        }
        err << '\n';
    });

    OutputTarget target;
    if (!target.open(opt.out_path, out, err)) return exit_data;
    write_bench_csv(*target.stream, report);
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact outranking flows and rankings, at scale"};
    app.set_version_flag("--version", "promethee 1.0.0");
    app.require_subcommand(1);

    GenOptions gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a synthetic evaluation table");
    gen_cmd->add_option("--n", gen.n, "Number of alternatives (>= 2)")->required();
    gen_cmd->add_option("--criteria", gen.criteria, "Number of criteria");
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_option("--function", gen.function, "Preference function shape")
        ->check(CLI::IsMember({"linear", "level"}));
    gen_cmd->add_option("--q-threshold", gen.q, "Indifference threshold");
    gen_cmd->add_option("--p-threshold", gen.p, "Preference threshold");
    gen_cmd->add_option("--out", gen.out_path, "Write the table here instead of stdout");
    gen_cmd->add_option("--config-out", gen.config_out_path,
                        "Also write a matching criterion configuration");

    TableOptions flows;
    CLI::App* flows_cmd = app.add_subcommand("flows", "Compute the flow table");
    flows_cmd->add_option("--data", flows.data_path, "Evaluation table (CSV)")->required();
    flows_cmd->add_option("--config", flows.config_path, "Criterion configuration (JSON)")
        ->required();
    flows_cmd->add_option("--engine", flows.engine, "Flow engine")
        ->check(CLI::IsMember({"pairwise", "sorting"}));
    flows_cmd->add_option("--threads", flows.threads, "Worker threads");
    flows_cmd->add_option("--out", flows.out_path, "Write CSV here instead of stdout");

    RankOptions rank;
    CLI::App* rank_cmd = app.add_subcommand("rank", "Rank alternatives");
    rank_cmd->add_option("--data", rank.data_path, "Evaluation table (CSV)")->required();
    rank_cmd->add_option("--config", rank.config_path, "Criterion configuration (JSON)")
        ->required();
    rank_cmd->add_option("--engine", rank.engine, "Flow engine")
        ->check(CLI::IsMember({"pairwise", "sorting"}));
    rank_cmd->add_option("--method", rank.method,
                         "net: total preorder by net flow; partial: pairwise relations")
        ->check(CLI::IsMember({"net", "partial"}));
    rank_cmd->add_option("--tie-eps", rank.tie_eps,
                         "Tolerance for treating flow scores as tied (overrides the config)");
    rank_cmd->add_option("--threads", rank.threads, "Worker threads");
    rank_cmd->add_option("--out", rank.out_path, "Write CSV here instead of stdout");

    VerifyOptions verify;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Run both engines and compare every flow field");
    verify_cmd->add_option("--data", verify.data_path, "Evaluation table (CSV)");
    verify_cmd->add_option("--config", verify.config_path, "Criterion configuration (JSON)");
    verify_cmd->add_option("--n", verify.n, "Synthetic instance size");
    verify_cmd->add_option("--criteria", verify.criteria, "Synthetic criterion count");
    verify_cmd->add_option("--seed", verify.seed, "Synthetic generator seed");
    verify_cmd->add_option("--function", verify.function, "Synthetic preference function")
        ->check(CLI::IsMember({"linear", "level"}));
    verify_cmd->add_option("--q-threshold", verify.q, "Synthetic indifference threshold");
    verify_cmd->add_option("--p-threshold", verify.p, "Synthetic preference threshold");
    verify_cmd->add_option("--threads", verify.threads, "Worker threads");
    verify_cmd->add_option("--tolerance", verify.tolerance, "Maximum allowed difference");
    verify_cmd->add_option("--out", verify.out_path, "Write the report here instead of stdout");

    BenchOptions bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Time both engines over doubling instance sizes");
    bench_cmd->add_option("--min-exp", bench.min_exp, "Smallest size as a power of two");
    bench_cmd->add_option("--max-exp", bench.max_exp, "Largest size as a power of two");
    bench_cmd->add_option("--criteria", bench.criteria, "Criterion count");
    bench_cmd->add_option("--seed", bench.seed, "Base generator seed (per-size seed + n)");
    bench_cmd->add_option("--repeats", bench.repeats, "Timed repeats per size");
    bench_cmd->add_option("--max-pairwise-n", bench.max_pairwise_n,
                          "Skip the pairwise engine above this size");
    bench_cmd->add_option("--engine", bench.engine, "Which engines to run")
        ->check(CLI::IsMember({"both", "pairwise", "sorting"}));
    bench_cmd->add_option("--function", bench.function, "Preference function shape")
        ->check(CLI::IsMember({"linear", "level"}));
    bench_cmd->add_option("--q-threshold", bench.q, "Indifference threshold");
    bench_cmd->add_option("--p-threshold", bench.p, "Preference threshold");
    bench_cmd->add_option("--threads", bench.threads, "Worker threads");
    bench_cmd->add_option("--out", bench.out_path, "Write CSV here instead of stdout");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("promethee");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    verify.n_set = verify_cmd->count("--n") > 0;
    rank.tie_eps_set = rank_cmd->count("--tie-eps") > 0;

    try {
        for (CLI::App* cmd : {gen_cmd, flows_cmd, rank_cmd, verify_cmd, bench_cmd}) {
            if (!cmd->parsed()) continue;
            const std::size_t threads =
                cmd == gen_cmd ? 1
                : cmd == flows_cmd ? flows.threads
                : cmd == rank_cmd ? rank.threads
                : cmd == verify_cmd ? verify.threads
                                    : bench.threads;
            if (threads == 0) {
                err << "error: --threads must be at least 1\n";
                return exit_usage;
            }
        }
        if (gen_cmd->parsed()) return run_gen(gen, out, err);
        if (flows_cmd->parsed()) return run_flows(flows, out, err);
        if (rank_cmd->parsed()) return run_rank(rank, out, err);
        if (verify_cmd->parsed()) return run_verify(verify, out, err);
        if (bench_cmd->parsed()) return run_bench(bench, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const SchemaMismatch& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_data;
    }
    return exit_usage;
}

}  // namespace promethee::cli
