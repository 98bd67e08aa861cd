#include "ipr/verify.hpp"

#include "ipr/error.hpp"
#include "ipr/grid.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace ipr {

int phi_even_zero_blocks_by_scan(const Dyadic& x) {
    if (x.is_zero()) throw Error(Errc::EmptySupport, "phi of the zero value");
    std::string bits;
    for (int32_t t = x.start(); t >= x.end(); --t) {
        bool one = std::binary_search(x.support().begin(), x.support().end(), t);
        bits.push_back(one ? '1' : '0');
    }
    int count = 0;
    size_t i = 0;
    while (i < bits.size()) {
        if (bits[i] == '1') {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < bits.size() && bits[j] == '0') ++j;
        if ((j - i) % 2 == 0) ++count;
        i = j;
    }
    return count;
}

namespace {

void fail(VerifyReport& rep, const std::string& message) {
    rep.valid = false;
    rep.violations.push_back(message);
}

// Plain row-by-row dot products; the verifier's own multiply.
std::vector<Rational> multiply(const SparseMatrix& m, const std::vector<Rational>& x) {
    std::vector<Rational> out;
    out.reserve(static_cast<size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        Rational sum(0);
        for (const auto& [col, val] : m.row(i)) sum += val * x[static_cast<size_t>(col)];
        out.push_back(std::move(sum));
    }
    return out;
}

// Verifier-side color lookup; dyadic-phi goes through the bit-string scanner.
std::optional<int> color_lookup(const Coloring& coloring, const Rational& v) {
    if (!coloring.domain().contains(v)) return std::nullopt;
    switch (coloring.kind()) {
        case Coloring::Kind::Table:
        case Coloring::Kind::Product: {
            auto it = coloring.assignment().find(v);
            if (it == coloring.assignment().end()) return std::nullopt;
            return it->second;
        }
        case Coloring::Kind::Interval: {
            int c = 0;
            for (const auto& cut : coloring.cuts()) {
                if (v >= cut) ++c;
            }
            return c;
        }
        case Coloring::Kind::DyadicPhi: {
            Dyadic d = Dyadic::from_rational(v);
            if (!d.in_unit_two_interval()) return std::nullopt;
            return phi_even_zero_blocks_by_scan(d) % 3;
        }
    }
    return std::nullopt;
}

void verify_witness(const Certificate& cert, const WitnessPayload& w, VerifyReport& rep) {
    if (static_cast<int>(w.x.size()) != cert.matrix.cols()) {
        fail(rep, "witness length does not match the column count");
        return;
    }
    std::vector<Rational> image = multiply(cert.matrix, w.x);
    if (image.size() != w.image.size()) {
        fail(rep, "image length mismatch");
        return;
    }
    for (size_t i = 0; i < image.size(); ++i) {
        if (image[i] != w.image[i]) {
            fail(rep, "image entry " + std::to_string(i) + " recomputes to " +
                          rational_to_string(image[i]) + ", certificate says " +
                          rational_to_string(w.image[i]));
        }
    }
    if (cert.epsilon) {
        for (size_t i = 0; i < image.size(); ++i) {
            if (!(image[i] > 0 && image[i] < *cert.epsilon))
                fail(rep, "image entry " + std::to_string(i) + " = " + rational_to_string(image[i]) +
                              " is outside (0, " + rational_to_string(*cert.epsilon) + ")");
        }
    }
    if (w.color) {
        if (!cert.coloring) {
            fail(rep, "color claimed but no coloring embedded");
            return;
        }
        for (size_t i = 0; i < image.size(); ++i) {
            auto c = color_lookup(*cert.coloring, image[i]);
            if (!c) {
                fail(rep, "image entry " + std::to_string(i) + " has no color in the domain");
            } else if (*c != *w.color) {
                fail(rep, "image entry " + std::to_string(i) + " has color " + std::to_string(*c) +
                              ", certificate says " + std::to_string(*w.color));
            }
        }
    }
}

// Scans every vector over domain^cols; true when some image is monochromatic.
bool exists_monochromatic_image(const SparseMatrix& m, const Coloring& coloring,
                                const Grid& domain) {
    if (m.has_zero_row()) return false;
    size_t v = static_cast<size_t>(m.cols());
    double est = 1;
    for (size_t c = 0; c < v; ++c) {
        est *= static_cast<double>(domain.size());
        if (est > 5e6) throw Error(Errc::SizeTooLarge, "refutation rescan too large");
    }
    std::vector<size_t> idx(v, 0);
    std::vector<Rational> x(v);
    while (true) {
        for (size_t c = 0; c < v; ++c) x[c] = domain.values[idx[c]];
        std::vector<Rational> image = multiply(m, x);
        int target = -1;
        bool mono = true;
        for (const auto& entry : image) {
            auto c = color_lookup(coloring, entry);
            if (!c) {
                mono = false;
                break;
            }
            if (target < 0) target = *c;
            else if (*c != target) mono = false;
            if (!mono) break;
        }
        if (mono) return true;
        size_t c = 0;
        while (c < v && idx[c] + 1 == domain.size()) idx[c++] = 0;
        if (c == v) return false;
        ++idx[c];
    }
}

void verify_refutation(const Certificate& cert, const RefutationPayload& payload,
                       VerifyReport& rep) {
    if (!cert.coloring) {
        fail(rep, "refutation without an embedded coloring");
        return;
    }
    const Coloring& coloring = *cert.coloring;
    if (coloring.r() > payload.r)
        fail(rep, "avoiding coloring uses more colors than claimed");
    for (const auto& v : coloring.domain().values) {
        auto c = color_lookup(coloring, v);
        if (!c || *c < 0 || *c >= payload.r) {
            fail(rep, "coloring is not a total map into the palette at " + rational_to_string(v));
            return;
        }
    }
    if (exists_monochromatic_image(cert.matrix, coloring, coloring.domain()))
        fail(rep, "a monochromatic image survives the rescan");
}

// Independent unavoidability check: enumerate colorings recursively with the
// first point pinned to color 0 (complete up to renaming), pruning violated
// image constraints.
bool avoiding_coloring_exists(const SparseMatrix& m, int r, const Grid& domain) {
    size_t points = domain.size();
    if (points > 24) throw Error(Errc::SizeTooLarge, "bound recheck domain too large");
    std::vector<std::vector<int>> constraints;
    {
        size_t v = static_cast<size_t>(m.cols());
        if (m.has_zero_row()) return true;  // no vector lands in the positive domain
        std::vector<size_t> idx(v, 0);
        std::vector<Rational> x(v);
        while (true) {
            for (size_t c = 0; c < v; ++c) x[c] = domain.values[idx[c]];
            std::vector<Rational> image = multiply(m, x);
            std::vector<int> constraint;
            bool inside = true;
            for (const auto& e : image) {
                auto pos = domain.index_of(e);
                if (!pos) {
                    inside = false;
                    break;
                }
                constraint.push_back(static_cast<int>(*pos));
            }
            if (inside) {
                std::sort(constraint.begin(), constraint.end());
                constraint.erase(std::unique(constraint.begin(), constraint.end()),
                                 constraint.end());
                constraints.push_back(std::move(constraint));
            }
            size_t c = 0;
            while (c < v && idx[c] + 1 == domain.size()) idx[c++] = 0;
            if (c == v) break;
            ++idx[c];
        }
    }
    std::vector<int> colors(points, -1);
    auto ok_so_far = [&]() {
        for (const auto& constraint : constraints) {
            bool all = true;
            int first = -1;
            for (int p : constraint) {
                int c = colors[static_cast<size_t>(p)];
                if (c < 0) {
                    all = false;
                    break;
                }
                if (first < 0) first = c;
                else if (c != first) { all = false; break; }
            }
            if (all && first >= 0) return false;
        }
        return true;
    };
    auto dfs = [&](auto&& self, size_t pos) -> bool {
        if (pos == points) return true;
        for (int c = 0; c < r; ++c) {
            colors[pos] = c;
            if (ok_so_far() && self(self, pos + 1)) return true;
        }
        colors[pos] = -1;
        return false;
    };
    colors[0] = 0;
    if (!ok_so_far()) return false;
    return dfs(dfs, 1);
}

void verify_bound(const Certificate& cert, const BoundPayload& payload, VerifyReport& rep) {
    if (payload.n < 1) {
        fail(rep, "bound must be at least 1");
        return;
    }
    if (payload.n > 1) {
        if (!payload.refutation_below) {
            fail(rep, "missing avoiding coloring at N-1");
        } else {
            Grid below = Grid::integer_range(1, payload.n - 1);
            if (!(payload.refutation_below->domain() == below)) {
                fail(rep, "embedded refutation is not over [1..N-1]");
            } else if (exists_monochromatic_image(cert.matrix, *payload.refutation_below, below)) {
                fail(rep, "embedded N-1 coloring admits a monochromatic image");
            }
        }
    }
    if (avoiding_coloring_exists(cert.matrix, payload.r, Grid::integer_range(1, payload.n)))
        fail(rep, "an avoiding coloring exists at N after all");
}

// Greedy subset-sum decomposition; exact for superincreasing generator lists
// (each generator exceeds the sum of all later ones), which base-4 families are.
bool greedy_member(const Rational& value, const std::vector<Rational>& gens, size_t tail_start) {
    Rational remaining = value;
    for (size_t i = tail_start; i < gens.size() && remaining > 0; ++i) {
        if (gens[i] <= remaining) remaining -= gens[i];
    }
    return remaining == 0;
}

bool check_superincreasing(const std::vector<Rational>& gens) {
    Rational tail(0);
    for (size_t i = gens.size(); i-- > 0;) {
        if (gens[i] <= tail) return false;
        tail += gens[i];
    }
    return true;
}

void verify_segmented(const Certificate&, const SegmentedPayload& payload, VerifyReport& rep) {
    if (!check_superincreasing(payload.generators)) {
        fail(rep, "generator list is not superincreasing; greedy recheck unavailable");
        return;
    }
    if (payload.depth < 0 || payload.depth >= payload.spec.block_count()) {
        fail(rep, "depth out of range");
        return;
    }
    SparseMatrix prefix = payload.spec.prefix(payload.depth);
    if (static_cast<int>(payload.x.size()) != prefix.cols()) {
        fail(rep, "x length does not match the prefix width");
        return;
    }
    std::vector<Rational> image = multiply(prefix, payload.x);
    if (image.size() != payload.image.size()) {
        fail(rep, "image length mismatch");
        return;
    }
    for (size_t i = 0; i < image.size(); ++i) {
        if (image[i] != payload.image[i])
            fail(rep, "image entry " + std::to_string(i) + " recomputes differently");
    }
    for (size_t i = 0; i < image.size(); ++i) {
        if (prefix.row_is_zero(static_cast<int>(i))) continue;
        if (!greedy_member(image[i], payload.generators, payload.tail_start))
            fail(rep, "row " + std::to_string(i) + " value " + rational_to_string(image[i]) +
                          " is not a finite sum of distinct generators");
    }
}

void verify_stacked(const Certificate&, const StackedPayload& payload, VerifyReport& rep) {
    if (payload.blocks.size() != payload.x_blocks.size() ||
        payload.blocks.size() != payload.target_generators.size()) {
        fail(rep, "block/target/witness counts disagree");
        return;
    }
    std::vector<Rational> image;
    for (size_t n = 0; n < payload.blocks.size(); ++n) {
        if (!check_superincreasing(payload.target_generators[n])) {
            fail(rep, "target " + std::to_string(n) + " generators not superincreasing");
            return;
        }
        if (static_cast<int>(payload.x_blocks[n].size()) != payload.blocks[n].cols()) {
            fail(rep, "block " + std::to_string(n) + " witness has the wrong length");
            return;
        }
        std::vector<Rational> block_image = multiply(payload.blocks[n], payload.x_blocks[n]);
        for (const auto& e : block_image) {
            if (!greedy_member(e, payload.target_generators[n], 0))
                fail(rep, "block " + std::to_string(n) + " image entry " + rational_to_string(e) +
                              " is outside its target set");
            // produced members must be disjoint from every other target
            for (size_t other = 0; other < payload.target_generators.size(); ++other) {
                if (other == n) continue;
                if (greedy_member(e, payload.target_generators[other], 0))
                    fail(rep, "image value " + rational_to_string(e) + " of block " +
                                  std::to_string(n) + " also lies in target " + std::to_string(other));
            }
        }
        image.insert(image.end(), block_image.begin(), block_image.end());
    }
    if (image != payload.image) fail(rep, "stacked image does not recompute");
}

}  // namespace

VerifyReport verify_certificate(const Certificate& cert) {
    VerifyReport rep;
    rep.kind = certificate_kind_name(cert.kind);
    switch (cert.kind) {
        case Certificate::Kind::Witness:
            verify_witness(cert, std::get<WitnessPayload>(cert.payload), rep);
            break;
        case Certificate::Kind::Refutation:
            verify_refutation(cert, std::get<RefutationPayload>(cert.payload), rep);
            break;
        case Certificate::Kind::Bound:
            verify_bound(cert, std::get<BoundPayload>(cert.payload), rep);
            break;
        case Certificate::Kind::Segmented:
            verify_segmented(cert, std::get<SegmentedPayload>(cert.payload), rep);
            break;
        case Certificate::Kind::Stacked:
            verify_stacked(cert, std::get<StackedPayload>(cert.payload), rep);
            break;
    }
    return rep;
}

}  // namespace ipr
