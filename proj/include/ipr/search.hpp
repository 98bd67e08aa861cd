#pragma once

#include "ipr/certificate.hpp"
#include "ipr/coloring.hpp"
#include "ipr/grid.hpp"
#include "ipr/matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ipr {

inline constexpr std::uint64_t kDefaultNodeBudget = 20'000'000;

// Finite variable grids, one per column. The node budget applies to each
// top-level search branch, which keeps budget outcomes independent of the
// worker count.
struct SearchBounds {
    std::vector<std::vector<Rational>> column_grids;  // per column, ascending
    std::optional<Rational> epsilon;                  // image must lie in (0, epsilon)
    std::uint64_t node_budget = kDefaultNodeBudget;
    enum class DomainPolicy { Skip, Strict } policy = DomainPolicy::Skip;

    static SearchBounds uniform(const Grid& grid, int cols);
};

struct EngineConfig {
    int workers = 1;
    std::uint64_t seed = 0;  // recorded in certificates; searches are deterministic
};

enum class SearchStatus { Found, NoneExhausted, BudgetExhausted };

const char* search_status_name(SearchStatus s);

struct WitnessResult {
    SearchStatus status = SearchStatus::NoneExhausted;
    std::optional<Certificate> certificate;  // lexicographically least witness
};

// Exhaustive scan for x over the grid with M*x monochromatic (and < epsilon
// when set). Entries outside the coloring domain fail the vector under
// DomainPolicy::Skip and raise ImageOutsideDomain under Strict.
WitnessResult find_witness(const SparseMatrix& m, const Coloring& coloring,
                           const SearchBounds& bounds, const EngineConfig& config = {});

struct AvoidResult {
    SearchStatus status = SearchStatus::NoneExhausted;
    std::optional<Certificate> certificate;  // avoiding coloring (refutation)
};

// Backtracking over r-colorings of the domain (canonical up to palette
// renaming); Found means an avoiding coloring exists, NoneExhausted means
// every coloring admits a monochromatic image.
AvoidResult find_avoiding_coloring(const SparseMatrix& m, int r, const Grid& domain,
                                   std::uint64_t node_budget = kDefaultNodeBudget,
                                   const EngineConfig& config = {});

struct BoundResult {
    enum class Outcome { Resolved, Unresolved, BudgetExhausted } outcome = Outcome::Unresolved;
    int n = 0;
    std::optional<Certificate> certificate;
};

// Least N <= max_n such that no avoiding r-coloring of [1..N] exists.
BoundResult compactness_bound(const SparseMatrix& m, int r, int max_n,
                              std::uint64_t node_budget = kDefaultNodeBudget,
                              const EngineConfig& config = {});

struct ExtendCandidateReport {
    Rational b;
    BoundResult bound;
};

struct ExtendResult {
    std::optional<Rational> b;  // first candidate that keeps the bound resolved
    std::vector<ExtendCandidateReport> tried;
};

// Stacks b*rvec on top of m and asks for a resolved compactness bound at the
// same scale; a miss is not a nonexistence proof.
ExtendResult extend_with_row(const SparseMatrix& m, const std::vector<Rational>& rvec,
                             const std::vector<Rational>& candidates, int r, int max_n,
                             std::uint64_t node_budget = kDefaultNodeBudget,
                             const EngineConfig& config = {});

}  // namespace ipr
