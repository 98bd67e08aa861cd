#pragma once

#include "ipr/certificate.hpp"
#include "ipr/coloring.hpp"
#include "ipr/matrix.hpp"
#include "ipr/search.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace ipr {

// Witness for the triangular example family: x_0 = y_0, x_n = y_n - 2^n y_0.
// Requires y_n > 2^n y_0 for n >= 1 (GrowthViolation).
std::vector<Rational> ex16_witness(const std::vector<Rational>& y);

// Least k with image entry y_k above `bound` (y_0 = x_0, y_k = 2^k x_0 + x_k);
// guaranteed to exist within ceil(log2(bound/x_0)) rows.
int ex16_obstruction(const std::vector<Rational>& x, const Rational& bound);

// Witness for the harmonic example family: x_0 = 1, x_n = 1/(2n-1) - y_{n-1}.
// Requires y_{n-1} < 1/(2n-1) (PremiseViolation).
std::vector<Rational> ex17_witness(const std::vector<Rational>& y);

// Finite stand-in for membership in an idempotent ultrafilter: the finite
// sums of a fixed decreasing generator sequence, with a movable tail. The two
// properties proofs use survive: membership, and tail_after(y) keeps every
// remaining member summable with y.
class IpTailOracle {
  public:
    explicit IpTailOracle(std::vector<Rational> generators);
    static IpTailOracle base4(int count);  // 4^-1 ... 4^-count

    const std::vector<Rational>& generators() const { return gens_; }
    size_t tail_index() const { return tail_; }
    size_t remaining() const { return gens_.size() - tail_; }

    bool member(const Rational& v) const;
    // Distinct-generator decomposition with indices >= tail; empty when not a member.
    std::optional<std::vector<size_t>> decompose(const Rational& v) const;

    void tail_after(const Rational& y);  // y must be a member; advances past max index
    void advance_past(size_t index);

    // Every finite sum over indices >= tail (for disjointness checks; capped).
    std::vector<Rational> members_sample() const;

  private:
    std::vector<Rational> gens_;  // strictly decreasing, positive
    std::vector<Rational> suffix_sums_;
    size_t tail_ = 0;
};

struct PipelineOptions {
    int max_k = 16;
    std::uint64_t node_budget = kDefaultNodeBudget;
    EngineConfig engine;
    // Witness source for the truncated matrix; defaults to find_witness.
    std::function<WitnessResult(const SparseMatrix&, const Coloring&, const SearchBounds&)>
        n_solver;
};

// The finite-plus-infinite extension proof, stage by stage: compactness bound
// k, a scale point z < epsilon/k, the r^k product coloring, a witness for N
// below z, the induced coloring of {1..k}, a witness for M over {1..k}, and
// the assembled diagonal witness with every image entry one phi-color inside
// (0, epsilon).
Certificate extension_pipeline(const SparseMatrix& m, const SparseMatrix& n, const Coloring& phi,
                               const Rational& epsilon, const Grid& grid,
                               const PipelineOptions& options = {});

struct SegmentedOptions {
    size_t max_subset_size = 4;  // generators per block variable
    std::uint64_t node_budget = kDefaultNodeBudget;
};

// Solves block after block, drawing block variables from disjoint finite sums
// of the oracle tail so every nonzero row of each prefix lands in the
// original member set.
Certificate segmented_solve(const SegmentedSpec& spec, IpTailOracle oracle, int depth,
                            const SegmentedOptions& options = {});

using BlockSolver =
    std::function<std::vector<Rational>(const SparseMatrix&, const IpTailOracle&)>;

// Per-block witnesses into pairwise disjoint target sets; the stacked vector
// sends every image entry of the diagonal matrix into the union.
Certificate countable_diagonal_solve(const std::vector<SparseMatrix>& blocks,
                                     const std::vector<IpTailOracle>& targets, int prefix,
                                     const std::vector<BlockSolver>& solvers = {},
                                     const SegmentedOptions& options = {});

}  // namespace ipr
