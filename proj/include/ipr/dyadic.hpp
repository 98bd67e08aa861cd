#pragma once

#include "ipr/rational.hpp"

#include <cstdint>
#include <vector>

namespace ipr {

// A positive dyadic rational sum{2^t : t in support}, stored as its support
// set. The empty support is the zero value; it is constructible so containers
// can default-init, but start/end/phi reject it.
class Dyadic {
  public:
    Dyadic() = default;

    // support may arrive unsorted; duplicates are rejected (a support is a set).
    static Dyadic from_support(std::vector<int32_t> support);

    // Requires q > 0 (NotPositive) with a power-of-two denominator (NotDyadic).
    static Dyadic from_rational(const Rational& q);

    const std::vector<int32_t>& support() const { return support_; }
    bool is_zero() const { return support_.empty(); }

    int32_t start() const;  // max of support
    int32_t end() const;    // min of support

    Rational to_rational() const;

    // Count of maximal zero-runs of even positive length strictly between
    // start and end in the binary expansion.
    int phi_even_zero_blocks() const;

    // Support nonempty and start <= 0, i.e. value in (0,2).
    bool in_unit_two_interval() const;

    Dyadic shifted(int32_t delta) const;  // value * 2^delta

    Dyadic plus(const Dyadic& other) const;

    bool operator==(const Dyadic& other) const { return support_ == other.support_; }

  private:
    std::vector<int32_t> support_;  // ascending
};

}  // namespace ipr
