#pragma once

// Umbrella header: the whole outranking toolkit.

#include "bench.hpp"
#include "flows.hpp"
#include "generate.hpp"
#include "io.hpp"
#include "model.hpp"
#include "pairwise_engine.hpp"
#include "preference.hpp"
#include "ranking.hpp"
#include "sorting_engine.hpp"
