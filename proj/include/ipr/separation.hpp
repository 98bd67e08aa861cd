#pragma once

#include "ipr/matrix.hpp"
#include "ipr/rational.hpp"
#include "ipr/search.hpp"

#include <nlohmann/json_fwd.hpp>

#include <vector>

namespace ipr {

struct SeparationColorReport {
    int color = 0;
    int depth = 0;  // max L with both tuples monochromatic in this class; 0 = none
    bool exhausted = true;
    std::vector<Rational> witness_a;  // lexicographically least at length `depth`
    std::vector<Rational> witness_b;
};

struct SeparationReport {
    int window_lo = 0;
    int window_hi = 0;
    int maxlen = 0;
    std::vector<Rational> tuple_a;
    std::vector<Rational> tuple_b;
    std::vector<SeparationColorReport> colors;  // one per phi-class 0,1,2
};

// For each class C_i of the dyadic even-0-block 3-coloring: the largest
// L <= maxlen admitting term sequences x, y (supports inside the window,
// values in (0,2)) with MT(a,x) and MT(b,y) both inside C_i. Exploratory:
// a finite plateau, not a theorem check. Tuples need positive natural
// entries (the scaled integer fast path relies on it).
SeparationReport separation_depth_search(int window_lo, int window_hi, int maxlen,
                                         const CompressedTuple& tuple_a,
                                         const CompressedTuple& tuple_b,
                                         std::uint64_t node_budget = kDefaultNodeBudget,
                                         const EngineConfig& config = {});

nlohmann::ordered_json separation_report_to_json(const SeparationReport& report);

}  // namespace ipr
