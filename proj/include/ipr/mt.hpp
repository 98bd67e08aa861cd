#pragma once

#include "ipr/matrix.hpp"
#include "ipr/rational.hpp"

#include <cstdint>
#include <vector>

namespace ipr {

// Ordered sequence of positive terms; blocks respect index order.
struct TermSequence {
    std::vector<Rational> terms;

    explicit TermSequence(std::vector<Rational> values);

    size_t size() const { return terms.size(); }
};

struct MtResult {
    std::vector<Rational> values;  // sorted ascending, duplicates merged
    std::uint64_t multiplicity;    // number of block patterns
};

// Milliken-Taylor values sum_t a_t * sum{x_i : i in F_t} over block patterns
// F_1 < F_2 < ... < F_m. Primary strategy: recursive block split.
MtResult mt_enumerate(const CompressedTuple& a, const TermSequence& x);

// Independent strategy: filter all label vectors in {0..m}^n. Kept separate
// so the two enumerations can check each other.
MtResult mt_enumerate_labelings(const CompressedTuple& a, const TermSequence& x);

}  // namespace ipr
