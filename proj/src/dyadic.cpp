#include "ipr/dyadic.hpp"

#include "ipr/error.hpp"

#include <algorithm>

namespace ipr {

Dyadic Dyadic::from_support(std::vector<int32_t> support) {
    std::sort(support.begin(), support.end());
    if (std::adjacent_find(support.begin(), support.end()) != support.end())
        throw Error(Errc::InvalidInput, "duplicate exponent in dyadic support");
    Dyadic d;
    d.support_ = std::move(support);
    return d;
}

Dyadic Dyadic::from_rational(const Rational& q) {
    if (q <= 0) throw Error(Errc::NotPositive, "dyadic values are positive, got " + rational_to_string(q));
    BigInt den = rat_den(q);
    if ((den & (den - 1)) != 0)
        throw Error(Errc::NotDyadic, "denominator of " + rational_to_string(q) + " is not a power of two");
    long shift = static_cast<long>(boost::multiprecision::lsb(den));
    BigInt num = rat_num(q);
    std::vector<int32_t> support;
    for (unsigned b = 0; b <= boost::multiprecision::msb(num); ++b) {
        if (boost::multiprecision::bit_test(num, b))
            support.push_back(static_cast<int32_t>(static_cast<long>(b) - shift));
    }
    Dyadic d;
    d.support_ = std::move(support);
    return d;
}

int32_t Dyadic::start() const {
    if (support_.empty()) throw Error(Errc::EmptySupport, "start of the zero value");
    return support_.back();
}

int32_t Dyadic::end() const {
    if (support_.empty()) throw Error(Errc::EmptySupport, "end of the zero value");
    return support_.front();
}

Rational Dyadic::to_rational() const {
    Rational sum(0);
    for (int32_t t : support_) sum += pow2(t);
    return sum;
}

int Dyadic::phi_even_zero_blocks() const {
    if (support_.empty()) throw Error(Errc::EmptySupport, "phi of the zero value");
    int count = 0;
    for (size_t i = 1; i < support_.size(); ++i) {
        int32_t gap = support_[i] - support_[i - 1] - 1;
        if (gap > 0 && gap % 2 == 0) ++count;
    }
    return count;
}

bool Dyadic::in_unit_two_interval() const { return !support_.empty() && support_.back() <= 0; }

Dyadic Dyadic::shifted(int32_t delta) const {
    Dyadic d;
    d.support_.reserve(support_.size());
    for (int32_t t : support_) d.support_.push_back(t + delta);
    return d;
}

Dyadic Dyadic::plus(const Dyadic& other) const {
    return from_rational(to_rational() + other.to_rational());
}

}  // namespace ipr
