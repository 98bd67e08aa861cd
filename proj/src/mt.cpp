#include "ipr/mt.hpp"

#include "ipr/error.hpp"

#include <algorithm>

namespace ipr {

TermSequence::TermSequence(std::vector<Rational> values) {
    if (values.empty()) throw Error(Errc::InvalidInput, "term sequence cannot be empty");
    for (const auto& v : values) {
        if (v <= 0) throw Error(Errc::NotPositive, "terms must be positive");
    }
    terms = std::move(values);
}

namespace {

void check_arity(const CompressedTuple& a, const TermSequence& x) {
    if (a.size() > x.size())
        throw Error(Errc::TupleTooLong, "tuple needs " + std::to_string(a.size()) +
                                            " blocks but only " + std::to_string(x.size()) +
                                            " terms are available");
}

void finish(MtResult& r) {
    std::sort(r.values.begin(), r.values.end());
    r.values.erase(std::unique(r.values.begin(), r.values.end()), r.values.end());
}

// Extends the block that currently ends at `last`, or closes it and starts
// the next one past its maximum.
void split_rec(const CompressedTuple& a, const std::vector<Rational>& x, size_t block,
               size_t last, const Rational& block_sum, const Rational& acc, MtResult& out) {
    Rational closed = acc + a.entries[block] * block_sum;
    if (block + 1 == a.size()) {
        out.values.push_back(closed);
        ++out.multiplicity;
    } else {
        for (size_t next = last + 1; next < x.size(); ++next)
            split_rec(a, x, block + 1, next, x[next], closed, out);
    }
    for (size_t next = last + 1; next < x.size(); ++next)
        split_rec(a, x, block, next, block_sum + x[next], acc, out);
}

}  // namespace

MtResult mt_enumerate(const CompressedTuple& a, const TermSequence& x) {
    check_arity(a, x);
    MtResult out{{}, 0};
    for (size_t first = 0; first < x.size(); ++first)
        split_rec(a, x.terms, 0, first, x.terms[first], Rational(0), out);
    finish(out);
    return out;
}

MtResult mt_enumerate_labelings(const CompressedTuple& a, const TermSequence& x) {
    check_arity(a, x);
    size_t n = x.size();
    size_t m = a.size();
    MtResult out{{}, 0};
    std::vector<size_t> label(n, 0);
    while (true) {
        // valid iff nonzero labels are nondecreasing with steps of one,
        // reaching exactly m
        size_t prev = 0;
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) {
            if (label[i] == 0) continue;
            if (label[i] < prev || label[i] > prev + 1) ok = false;
            prev = std::max(prev, label[i]);
        }
        if (ok && prev == m) {
            Rational value(0);
            for (size_t i = 0; i < n; ++i) {
                if (label[i] > 0) value += a.entries[label[i] - 1] * x.terms[i];
            }
            out.values.push_back(value);
            ++out.multiplicity;
        }
        size_t pos = 0;
        while (pos < n && label[pos] == m) label[pos++] = 0;
        if (pos == n) break;
        ++label[pos];
    }
    finish(out);
    return out;
}

}  // namespace ipr
