#pragma once

#include "ipr/coloring.hpp"
#include "ipr/matrix.hpp"
#include "ipr/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ipr {

// Self-contained findings: everything a verifier needs is embedded, no search
// state. Search produces witness/refutation/bound; the construction pipelines
// add segmented/stacked.
struct WitnessPayload {
    std::vector<Rational> x;
    std::vector<Rational> image;
    std::optional<int> color;
};

struct RefutationPayload {
    int r = 0;
    std::string domain_rule;
};

struct BoundPayload {
    int n = 0;
    int r = 0;
    // avoiding coloring at n-1; absent when n == 1
    std::optional<Coloring> refutation_below;
};

struct SegmentedPayload {
    SegmentedSpec spec;
    std::vector<Rational> generators;
    size_t tail_start = 0;
    int depth = 0;
    std::vector<Rational> x;
    std::vector<Rational> image;  // B_depth * x over all rows
};

struct StackedPayload {
    std::vector<SparseMatrix> blocks;
    std::vector<std::vector<Rational>> target_generators;  // per block
    std::vector<std::vector<Rational>> x_blocks;
    std::vector<Rational> image;  // diag(blocks) * concat(x)
};

struct Certificate {
    enum class Kind { Witness, Refutation, Bound, Segmented, Stacked };

    Kind kind = Kind::Witness;
    SparseMatrix matrix;
    std::optional<Coloring> coloring;  // refutations store the avoiding coloring here
    std::optional<int> truncation;
    std::variant<WitnessPayload, RefutationPayload, BoundPayload, SegmentedPayload, StackedPayload>
        payload;
    std::optional<Rational> epsilon;
    bool exhausted = false;
    std::string engine_version;
    std::uint64_t seed = 0;

    Certificate() : matrix(SparseMatrix::Kind::Finite, 1) {}
};

const char* certificate_kind_name(Certificate::Kind k);

}  // namespace ipr
