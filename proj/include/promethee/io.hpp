#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "flows.hpp"
#include "model.hpp"
#include "ranking.hpp"

namespace promethee {

/// Syntax error in an input file. Lines and columns are 1-based; 0 means the
/// position is unknown (for example when the JSON parser only reports a byte
/// offset in its message).
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error(line == 0 ? message
                                       : "line " + std::to_string(line) + ", column " +
                                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// The evaluation table and the criterion configuration do not describe the
/// same set of criteria.
class SchemaMismatch : public std::runtime_error {
  public:
    explicit SchemaMismatch(const std::string& message) : std::runtime_error(message) {}
};

/// Evaluation table as read from CSV, before any criterion semantics are
/// attached: alternative ids, column names, and row-major values.
struct RawTable {
    std::vector<std::string> ids;
    std::vector<std::string> columns;
    std::vector<double> values;
};

/// Criterion configuration plus ranking options, as read from JSON.
struct RankingConfig {
    std::vector<Criterion> criteria;
    double tie_eps = 0.0;
};

/// Shortest fixed-precision decimal formatting. 17 significant digits round
/// trip any double exactly; 12 is the reporting precision for scores.
[[nodiscard]] inline std::string format_double(double v, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, v);
    return buf;
}

[[nodiscard]] inline std::string format_value(double v) { return format_double(v, 17); }
[[nodiscard]] inline std::string format_score(double v) { return format_double(v, 12); }

namespace detail {

/// Split one CSV record on commas. No quoting dialect: fields must not
/// contain commas or line breaks. Returns the fields and their 1-based
/// starting columns.
inline void split_csv_record(const std::string& line, std::vector<std::string_view>& fields,
                             std::vector<std::size_t>& starts) {
    fields.clear();
    starts.clear();
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.emplace_back(line.data() + begin, i - begin);
            starts.push_back(begin + 1);
            begin = i + 1;
        }
    }
}

inline double parse_csv_double(std::string_view field, std::size_t line, std::size_t column) {
    double out = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw ParseError(line, column,
                         "expected a number, got '" + std::string(field) + "'");
    }
    return out;
}

/// Read one line, tolerating a trailing carriage return. Returns false at
/// end of input.
inline bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

}  // namespace detail

/// Parse an evaluation table. Format: header `id,<name>,...` followed by one
/// record per alternative; comma separated, `.` decimal point, no quoting.
/// Raises ParseError with a 1-based line and column on any malformed input.
[[nodiscard]] inline RawTable read_evaluation_csv(std::istream& in) {
    RawTable table;
    std::string line;
    std::vector<std::string_view> fields;
    std::vector<std::size_t> starts;

    if (!detail::read_line(in, line)) {
        throw ParseError(1, 1, "missing header record");
    }
    detail::split_csv_record(line, fields, starts);
    if (fields.empty() || fields[0] != "id") {
        throw ParseError(1, 1, "header must start with 'id'");
    }
    if (fields.size() < 2) {
        throw ParseError(1, 1, "header needs at least one criterion column");
    }
    for (std::size_t k = 1; k < fields.size(); ++k) {
        if (fields[k].empty()) {
            throw ParseError(1, starts[k], "empty column name");
        }
        table.columns.emplace_back(fields[k]);
    }

    const std::size_t expected = fields.size();
    std::size_t line_no = 1;
    while (detail::read_line(in, line)) {
        ++line_no;
        if (line.empty()) {
            // A final newline produces one empty tail line; anything else is a hole.
            if (in.peek() == std::istream::traits_type::eof()) break;
            throw ParseError(line_no, 1, "empty record");
        }
        detail::split_csv_record(line, fields, starts);
        if (fields.size() != expected) {
            throw ParseError(line_no, 1,
                             "expected " + std::to_string(expected) + " fields, got " +
                                 std::to_string(fields.size()));
        }
        if (fields[0].empty()) {
            throw ParseError(line_no, 1, "empty alternative id");
        }
        table.ids.emplace_back(fields[0]);
        for (std::size_t k = 1; k < fields.size(); ++k) {
            table.values.push_back(detail::parse_csv_double(fields[k], line_no, starts[k]));
        }
    }
    return table;
}

/// Write an evaluation table with full 17-digit precision so that reading it
/// back reproduces every value bit for bit.
inline void write_evaluation_csv(std::ostream& out, const std::vector<std::string>& ids,
                                 const std::vector<std::string>& columns,
                                 const std::vector<double>& values) {
    out << "id";
    for (const auto& c : columns) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out << ids[i];
        for (std::size_t k = 0; k < columns.size(); ++k) {
            out << ',' << format_value(values[i * columns.size() + k]);
        }
        out << '\n';
    }
}

/// Parse the criterion configuration:
///
///   {
///     "criteria": [
///       {"name": "...", "direction": "max"|"min",
///        "function": "linear"|"level", "q": num, "p": num, "weight": num},
///       ...
///     ],
///     "tie_eps": num   // optional, default 0
///   }
///
/// Unknown keys anywhere are rejected, as are missing or mistyped fields.
/// Threshold and weight *values* are validated later, when the matrix is
/// assembled.
[[nodiscard]] inline RankingConfig read_config_json(std::istream& in) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, 0, std::string("config is not valid JSON: ") + e.what());
    }

    if (!root.is_object()) throw ParseError(0, 0, "config root must be an object");
    for (const auto& item : root.items()) {
        if (item.key() != "criteria" && item.key() != "tie_eps") {
            throw ParseError(0, 0, "unknown config key '" + item.key() + "'");
        }
    }
    if (!root.contains("criteria") || !root["criteria"].is_array() || root["criteria"].empty()) {
        throw ParseError(0, 0, "config requires a non-empty 'criteria' array");
    }

    RankingConfig config;
    if (root.contains("tie_eps")) {
        if (!root["tie_eps"].is_number()) throw ParseError(0, 0, "'tie_eps' must be a number");
        config.tie_eps = root["tie_eps"].get<double>();
        if (!(config.tie_eps >= 0.0)) throw ParseError(0, 0, "'tie_eps' must be >= 0");
    }

    static const char* const keys[] = {"name", "direction", "function", "q", "p", "weight"};
    for (const auto& entry : root["criteria"]) {
        if (!entry.is_object()) throw ParseError(0, 0, "each criterion must be an object");
        for (const auto& item : entry.items()) {
            bool known = false;
            for (const char* k : keys) known = known || item.key() == k;
            if (!known) throw ParseError(0, 0, "unknown criterion key '" + item.key() + "'");
        }
        for (const char* k : keys) {
            if (!entry.contains(k)) {
                throw ParseError(0, 0, std::string("criterion is missing '") + k + "'");
            }
        }
        Criterion c;
        if (!entry["name"].is_string() || entry["name"].get<std::string>().empty()) {
            throw ParseError(0, 0, "criterion 'name' must be a non-empty string");
        }
        c.name = entry["name"].get<std::string>();

        const auto direction = entry["direction"];
        if (!direction.is_string() ||
            (direction.get<std::string>() != "max" && direction.get<std::string>() != "min")) {
            throw ParseError(0, 0, "criterion 'direction' must be \"max\" or \"min\"");
        }
        c.direction = direction.get<std::string>() == "max" ? Direction::maximize
                                                            : Direction::minimize;

        const auto function = entry["function"];
        if (!function.is_string() ||
            (function.get<std::string>() != "linear" && function.get<std::string>() != "level")) {
            throw ParseError(0, 0, "criterion 'function' must be \"linear\" or \"level\"");
        }
        c.kind = function.get<std::string>() == "linear" ? PreferenceKind::linear
                                                         : PreferenceKind::level;

        for (const char* k : {"q", "p", "weight"}) {
            if (!entry[k].is_number()) {
                throw ParseError(0, 0, std::string("criterion '") + k + "' must be a number");
            }
        }
        c.q = entry["q"].get<double>();
        c.p = entry["p"].get<double>();
        c.weight = entry["weight"].get<double>();
        config.criteria.push_back(std::move(c));
    }
    return config;
}

/// Serialize a criterion configuration in the same shape read_config_json
/// accepts.
inline void write_config_json(std::ostream& out, const std::vector<Criterion>& criteria,
                              double tie_eps = 0.0) {
    nlohmann::json root;
    root["criteria"] = nlohmann::json::array();
    for (const auto& c : criteria) {
        nlohmann::json entry;
        entry["name"] = c.name;
        entry["direction"] = c.direction == Direction::maximize ? "max" : "min";
        entry["function"] = c.kind == PreferenceKind::linear ? "linear" : "level";
        entry["q"] = c.q;
        entry["p"] = c.p;
        entry["weight"] = c.weight;
        root["criteria"].push_back(std::move(entry));
    }
    if (tie_eps != 0.0) root["tie_eps"] = tie_eps;
    out << root.dump(2) << '\n';
}

/// Join a table with its configuration into a validated decision matrix.
/// The configured criteria must match the table columns one-to-one by name;
/// the table's column order wins.
[[nodiscard]] inline DecisionMatrix assemble(const RawTable& table,
                                             const RankingConfig& config) {
    if (config.criteria.size() != table.columns.size()) {
        throw SchemaMismatch("config describes " + std::to_string(config.criteria.size()) +
                             " criteria but the table has " +
                             std::to_string(table.columns.size()) + " columns");
    }
    std::unordered_map<std::string, std::size_t> by_name;
    for (std::size_t k = 0; k < config.criteria.size(); ++k) {
        if (!by_name.emplace(config.criteria[k].name, k).second) {
            throw SchemaMismatch("config criterion '" + config.criteria[k].name +
                                 "' appears twice");
        }
    }
    std::unordered_set<std::string> seen;
    std::vector<Criterion> ordered;
    ordered.reserve(table.columns.size());
    for (const auto& column : table.columns) {
        if (!seen.insert(column).second) {
            throw SchemaMismatch("table column '" + column + "' appears twice");
        }
        auto it = by_name.find(column);
        if (it == by_name.end()) {
            throw SchemaMismatch("table column '" + column + "' is not configured");
        }
        ordered.push_back(config.criteria[it->second]);
    }
    return DecisionMatrix(table.ids, std::move(ordered), table.values);
}

/// Write the full flow table: aggregated scores first, then the
/// per-criterion leaving/entering/net flows in matrix column order.
inline void write_flows_csv(std::ostream& out, const DecisionMatrix& matrix,
                            const FlowResult& flows) {
    out << "id,phi_plus,phi_minus,phi";
    for (const auto& c : matrix.criteria()) {
        out << ',' << c.name << "_plus," << c.name << "_minus," << c.name << "_net";
    }
    out << '\n';
    for (std::size_t i = 0; i < matrix.alternative_count(); ++i) {
        out << matrix.ids()[i] << ',' << format_score(flows.phi_plus[i]) << ','
            << format_score(flows.phi_minus[i]) << ',' << format_score(flows.phi[i]);
        for (std::size_t k = 0; k < matrix.criterion_count(); ++k) {
            out << ',' << format_score(flows.uni_plus_at(i, k)) << ','
                << format_score(flows.uni_minus_at(i, k)) << ','
                << format_score(flows.uni_net_at(i, k));
        }
        out << '\n';
    }
}

/// Write the net-flow ranking, best alternative first. Tied alternatives
/// share a dense rank.
inline void write_net_ranking_csv(std::ostream& out, const DecisionMatrix& matrix,
                                  const FlowResult& flows, const NetRanking& ranking) {
    out << "rank,id,phi,phi_plus,phi_minus\n";
    for (std::size_t i : ranking.order) {
        out << ranking.rank[i] << ',' << matrix.ids()[i] << ',' << format_score(flows.phi[i])
            << ',' << format_score(flows.phi_plus[i]) << ','
            << format_score(flows.phi_minus[i]) << '\n';
    }
}

/// Write one record per unordered pair. Preferences point from `a` to `b`
/// (the winner is always in the first column); indifference and
/// incomparability keep the lower-index alternative first.
inline void write_partial_ranking_csv(std::ostream& out, const DecisionMatrix& matrix,
                                      const PartialRanking& partial) {
    const std::size_t n = partial.alternative_count;
    out << "a,b,relation\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Relation r = partial.at(i, j);
            const std::size_t a = r == Relation::preferred_by ? j : i;
            const std::size_t b = r == Relation::preferred_by ? i : j;
            out << matrix.ids()[a] << ',' << matrix.ids()[b] << ',' << relation_symbol(r)
                << '\n';
        }
    }
}

}  // namespace promethee
