#include "ipr/grid.hpp"

#include "ipr/error.hpp"

#include <algorithm>
#include <sstream>

namespace ipr {

namespace {

constexpr int kMaxDyadicWindowWidth = 20;

// Parses "LO..HI" with optional signs.
std::pair<long, long> parse_span(const std::string& body) {
    size_t dots = body.find("..");
    if (dots == std::string::npos)
        throw Error(Errc::InvalidInput, "grid span must look like LO..HI, got '" + body + "'");
    try {
        long lo = std::stol(body.substr(0, dots));
        long hi = std::stol(body.substr(dots + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        throw Error(Errc::InvalidInput, "bad grid span '" + body + "'");
    }
}

}  // namespace

Grid Grid::integer_range(long lo, long hi) {
    if (lo < 1) throw Error(Errc::InvalidInput, "integer grids start at 1 or above");
    if (hi < lo) throw Error(Errc::InvalidInput, "empty integer grid");
    if (hi - lo >= 5'000'000) throw Error(Errc::SizeTooLarge, "integer grid too large");
    Grid g;
    std::ostringstream rule;
    rule << "int:" << lo << ".." << hi;
    g.rule = rule.str();
    g.values.reserve(static_cast<size_t>(hi - lo + 1));
    for (long v = lo; v <= hi; ++v) g.values.emplace_back(v);
    return g;
}

Grid Grid::dyadic_window(int lo, int hi) {
    if (hi < lo) throw Error(Errc::InvalidInput, "empty dyadic window");
    int width = hi - lo + 1;
    if (width > kMaxDyadicWindowWidth)
        throw Error(Errc::SizeTooLarge, "dyadic window wider than " + std::to_string(kMaxDyadicWindowWidth));
    Grid g;
    std::ostringstream rule;
    rule << "dyadic:" << lo << ".." << hi;
    g.rule = rule.str();
    unsigned long count = (1ul << width) - 1;
    g.values.reserve(count);
    Rational scale = pow2(lo);
    // mask order is value order: value = mask * 2^lo.
    for (unsigned long mask = 1; mask <= count; ++mask) g.values.push_back(Rational(mask) * scale);
    return g;
}

Grid Grid::explicit_list(std::vector<Rational> vals) {
    if (vals.empty()) throw Error(Errc::InvalidInput, "empty grid list");
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    if (vals.front() <= 0) throw Error(Errc::NotPositive, "grid values must be positive");
    Grid g;
    std::ostringstream rule;
    rule << "list:";
    for (size_t i = 0; i < vals.size(); ++i) {
        if (i) rule << ",";
        rule << rational_to_string(vals[i]);
    }
    g.rule = rule.str();
    g.values = std::move(vals);
    return g;
}

Grid Grid::from_rule(const std::string& rule) {
    if (rule.rfind("int:", 0) == 0) {
        auto [lo, hi] = parse_span(rule.substr(4));
        return integer_range(lo, hi);
    }
    if (rule.rfind("dyadic:", 0) == 0) {
        auto [lo, hi] = parse_span(rule.substr(7));
        return dyadic_window(static_cast<int>(lo), static_cast<int>(hi));
    }
    if (rule.rfind("list:", 0) == 0) return explicit_list(parse_rational_list(rule.substr(5)));
    throw Error(Errc::InvalidInput, "unknown grid rule '" + rule + "'");
}

bool Grid::contains(const Rational& v) const {
    return std::binary_search(values.begin(), values.end(), v);
}

std::optional<size_t> Grid::index_of(const Rational& v) const {
    auto it = std::lower_bound(values.begin(), values.end(), v);
    if (it == values.end() || *it != v) return std::nullopt;
    return static_cast<size_t>(it - values.begin());
}

}  // namespace ipr
