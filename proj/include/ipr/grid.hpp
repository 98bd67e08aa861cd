#pragma once

#include "ipr/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ipr {

// A finite, explicitly enumerated domain of positive rationals together with
// the rule that generated it. Every coloring and search names its grid this
// way so certificates can rebuild the exact domain.
//
// Rules:
//   "int:LO..HI"      integers LO..HI (LO >= 1)
//   "dyadic:LO..HI"   every dyadic with nonempty support contained in [LO,HI]
//   "list:a,b,c"      explicit values, "p/q" literals
struct Grid {
    std::string rule;
    std::vector<Rational> values;  // ascending, unique, all positive

    static Grid integer_range(long lo, long hi);
    static Grid dyadic_window(int lo, int hi);
    static Grid explicit_list(std::vector<Rational> vals);
    static Grid from_rule(const std::string& rule);

    bool contains(const Rational& v) const;
    std::optional<size_t> index_of(const Rational& v) const;
    size_t size() const { return values.size(); }

    bool operator==(const Grid& other) const { return values == other.values; }
};

}  // namespace ipr
