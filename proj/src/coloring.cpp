#include "ipr/coloring.hpp"

#include "ipr/error.hpp"

#include <algorithm>

namespace ipr {

int dyadic_three_color(const Dyadic& x) {
    if (!x.in_unit_two_interval())
        throw Error(Errc::OutOfRange, "dyadic 3-coloring is defined on D in (0,2)");
    return x.phi_even_zero_blocks() % 3;
}

Coloring Coloring::table(Grid domain, int r, std::map<Rational, int> assignment) {
    if (r < 1) throw Error(Errc::InvalidInput, "palette needs at least one color");
    Coloring c;
    c.kind_ = Kind::Table;
    c.domain_ = std::move(domain);
    c.r_ = r;
    c.table_ = std::move(assignment);
    return c;
}

Coloring Coloring::interval(Grid domain, std::vector<Rational> cuts) {
    for (size_t i = 1; i < cuts.size(); ++i) {
        if (cuts[i] <= cuts[i - 1])
            throw Error(Errc::InvalidInput, "interval cuts must be strictly increasing");
    }
    Coloring c;
    c.kind_ = Kind::Interval;
    c.domain_ = std::move(domain);
    c.r_ = static_cast<int>(cuts.size()) + 1;
    c.cuts_ = std::move(cuts);
    return c;
}

Coloring Coloring::dyadic_phi(Grid domain) {
    for (const auto& v : domain.values) {
        Dyadic d = Dyadic::from_rational(v);  // throws NotDyadic on bad grids
        if (!d.in_unit_two_interval())
            throw Error(Errc::OutOfRange,
                        "dyadic-phi domain must lie in (0,2); offending value " + rational_to_string(v));
    }
    Coloring c;
    c.kind_ = Kind::DyadicPhi;
    c.domain_ = std::move(domain);
    c.r_ = 3;
    return c;
}

std::optional<int> Coloring::try_color(const Rational& v) const {
    if (!domain_.contains(v)) return std::nullopt;
    switch (kind_) {
        case Kind::Table:
        case Kind::Product: {
            auto it = table_.find(v);
            if (it == table_.end()) return std::nullopt;
            return it->second;
        }
        case Kind::Interval: {
            int color = 0;
            for (const auto& cut : cuts_) {
                if (v >= cut) ++color;
            }
            return color;
        }
        case Kind::DyadicPhi:
            return dyadic_three_color(Dyadic::from_rational(v));
    }
    return std::nullopt;
}

int Coloring::color_of(const Rational& v) const {
    auto c = try_color(v);
    if (!c) throw Error(Errc::OutOfRange, rational_to_string(v) + " is outside the coloring domain");
    return *c;
}

Coloring::Report Coloring::validate() const {
    Report rep;
    rep.class_sizes.assign(static_cast<size_t>(r_), 0);
    for (const auto& v : domain_.values) {
        auto c = try_color(v);
        if (!c) {
            rep.valid = false;
            rep.violations.push_back("no color for " + rational_to_string(v));
            continue;
        }
        if (*c < 0 || *c >= r_) {
            rep.valid = false;
            rep.violations.push_back("color out of palette for " + rational_to_string(v));
            continue;
        }
        ++rep.class_sizes[static_cast<size_t>(*c)];
    }
    if (kind_ == Kind::Table || kind_ == Kind::Product) {
        for (const auto& [v, c] : table_) {
            if (!domain_.contains(v)) {
                rep.valid = false;
                rep.violations.push_back("assignment names " + rational_to_string(v) +
                                         " outside the domain");
            }
            (void)c;
        }
    }
    if (kind_ == Kind::Product) {
        // signatures must agree with the base coloring
        for (const auto& v : domain_.values) {
            for (int t = 1; t <= k_; ++t) {
                if (!base_->try_color(Rational(t) * v)) {
                    rep.valid = false;
                    rep.violations.push_back("multiple " + std::to_string(t) + "*" +
                                             rational_to_string(v) + " left the base domain");
                }
            }
        }
    }
    return rep;
}

Coloring product_coloring(const Coloring& base, int k, const std::optional<Grid>& sub) {
    if (k < 1) throw Error(Errc::InvalidInput, "product coloring needs k >= 1");
    std::vector<Rational> domain_values;
    if (sub) {
        for (const auto& v : sub->values) {
            for (int t = 1; t <= k; ++t) {
                if (!base.domain().contains(Rational(t) * v))
                    throw Error(Errc::DomainNotClosed,
                                "multiple (" + rational_to_string(v) + ", t=" + std::to_string(t) +
                                    ") leaves the base domain");
            }
            domain_values.push_back(v);
        }
    } else {
        for (const auto& v : base.domain().values) {
            bool closed = true;
            for (int t = 2; t <= k && closed; ++t) closed = base.domain().contains(Rational(t) * v);
            if (closed) domain_values.push_back(v);
        }
        if (domain_values.empty())
            throw Error(Errc::DomainNotClosed, "no point of the base domain keeps all multiples inside");
    }

    std::vector<std::vector<int>> signatures;
    std::vector<std::pair<Rational, std::vector<int>>> sigs_by_value;
    sigs_by_value.reserve(domain_values.size());
    for (const auto& v : domain_values) {
        std::vector<int> sig;
        sig.reserve(static_cast<size_t>(k));
        for (int t = 1; t <= k; ++t) sig.push_back(base.color_of(Rational(t) * v));
        signatures.push_back(sig);
        sigs_by_value.emplace_back(v, std::move(sig));
    }
    std::sort(signatures.begin(), signatures.end());
    signatures.erase(std::unique(signatures.begin(), signatures.end()), signatures.end());

    Coloring c;
    c.kind_ = Coloring::Kind::Product;
    c.domain_ = sub ? *sub : Grid::explicit_list(domain_values);
    c.r_ = static_cast<int>(signatures.size());
    c.base_ = std::make_shared<Coloring>(base);
    c.k_ = k;
    c.signatures_ = signatures;
    for (auto& [v, sig] : sigs_by_value) {
        auto it = std::lower_bound(signatures.begin(), signatures.end(), sig);
        c.table_.emplace(v, static_cast<int>(it - signatures.begin()));
    }
    return c;
}

}  // namespace ipr
