#include "ipr/constructions.hpp"

#include "ipr/error.hpp"
#include "ipr/version.hpp"

#include <algorithm>
#include <bit>

namespace ipr {

std::vector<Rational> ex16_witness(const std::vector<Rational>& y) {
    if (y.empty()) throw Error(Errc::InvalidInput, "need at least y_0");
    if (y[0] <= 0) throw Error(Errc::NotPositive, "y_0 must be positive");
    Rational power(1);
    for (size_t n = 1; n < y.size(); ++n) {
        power *= 2;
        if (!(y[n] > power * y[0]))
            throw Error(Errc::GrowthViolation,
                        "y_" + std::to_string(n) + " = " + rational_to_string(y[n]) +
                            " does not exceed 2^" + std::to_string(n) + " * y_0");
    }
    std::vector<Rational> x;
    x.reserve(y.size());
    x.push_back(y[0]);
    power = 1;
    for (size_t n = 1; n < y.size(); ++n) {
        power *= 2;
        x.push_back(y[n] - power * y[0]);
    }
    return x;
}

int ex16_obstruction(const std::vector<Rational>& x, const Rational& bound) {
    if (x.empty()) throw Error(Errc::InvalidInput, "empty prefix");
    if (x[0] <= 0) throw Error(Errc::NotPositive, "x_0 must be positive");
    if (bound <= 0) throw Error(Errc::NotPositive, "bound must be positive");
    for (const auto& v : x) {
        if (v <= 0) throw Error(Errc::NotPositive, "entries must be positive");
    }
    Rational power(1);
    for (size_t k = 0; k < x.size(); ++k) {
        Rational image = (k == 0) ? x[0] : power * x[0] + x[k];
        if (image > bound) return static_cast<int>(k);
        power *= 2;
    }
    long guaranteed = ceil_log2(bound / x[0]);
    throw Error(Errc::PrefixTooShort, "no row exceeded the bound; a prefix of length " +
                                          std::to_string(guaranteed + 1) + " is guaranteed to");
}

std::vector<Rational> ex17_witness(const std::vector<Rational>& y) {
    if (y.empty()) throw Error(Errc::InvalidInput, "need at least y_0");
    std::vector<Rational> x;
    x.reserve(y.size() + 1);
    x.push_back(Rational(1));
    for (size_t n = 1; n <= y.size(); ++n) {
        Rational cap(1, 2 * static_cast<long>(n) - 1);
        if (!(y[n - 1] < cap))
            throw Error(Errc::PremiseViolation,
                        "y_" + std::to_string(n - 1) + " = " + rational_to_string(y[n - 1]) +
                            " is not below 1/" + std::to_string(2 * n - 1) + " (index " +
                            std::to_string(n) + ")");
        if (y[n - 1] <= 0) throw Error(Errc::NotPositive, "targets must be positive");
        x.push_back(cap - y[n - 1]);
    }
    return x;
}

IpTailOracle::IpTailOracle(std::vector<Rational> generators) : gens_(std::move(generators)) {
    if (gens_.empty()) throw Error(Errc::InvalidInput, "oracle needs generators");
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i] <= 0) throw Error(Errc::NotPositive, "generators must be positive");
        if (i > 0 && gens_[i] >= gens_[i - 1])
            throw Error(Errc::InvalidInput, "generators must be strictly decreasing");
    }
    suffix_sums_.assign(gens_.size() + 1, Rational(0));
    for (size_t i = gens_.size(); i-- > 0;) suffix_sums_[i] = suffix_sums_[i + 1] + gens_[i];
}

IpTailOracle IpTailOracle::base4(int count) {
    if (count < 1 || count > 64) throw Error(Errc::InvalidInput, "base4 oracle size out of range");
    std::vector<Rational> gens;
    Rational g(1);
    for (int i = 1; i <= count; ++i) {
        g /= 4;
        gens.push_back(g);
    }
    return IpTailOracle(std::move(gens));
}

std::optional<std::vector<size_t>> IpTailOracle::decompose(const Rational& v) const {
    if (v <= 0) return std::nullopt;
    std::vector<size_t> chosen;
    // depth-first over indices >= tail, descending generator size
    auto rec = [&](auto&& self, size_t i, const Rational& remaining) -> bool {
        if (remaining == 0) return true;
        if (i == gens_.size()) return false;
        if (suffix_sums_[i] < remaining) return false;
        if (gens_[i] <= remaining) {
            chosen.push_back(i);
            if (self(self, i + 1, remaining - gens_[i])) return true;
            chosen.pop_back();
        }
        return self(self, i + 1, remaining);
    };
    if (!rec(rec, tail_, v)) return std::nullopt;
    return chosen;
}

bool IpTailOracle::member(const Rational& v) const { return decompose(v).has_value(); }

void IpTailOracle::tail_after(const Rational& y) {
    auto dec = decompose(y);
    if (!dec) throw Error(Errc::InvalidInput, rational_to_string(y) + " is not a member");
    advance_past(dec->back());
}

void IpTailOracle::advance_past(size_t index) {
    if (index + 1 > tail_) tail_ = index + 1;
    if (tail_ > gens_.size()) tail_ = gens_.size();
}

std::vector<Rational> IpTailOracle::members_sample() const {
    size_t n = remaining();
    if (n > 16) throw Error(Errc::SizeTooLarge, "member sample over more than 16 generators");
    std::vector<Rational> out;
    out.reserve((1u << n) - 1);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Rational sum(0);
        for (size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) sum += gens_[tail_ + i];
        }
        out.push_back(std::move(sum));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Certificate extension_pipeline(const SparseMatrix& m, const SparseMatrix& n, const Coloring& phi,
                               const Rational& epsilon, const Grid& grid,
                               const PipelineOptions& options) {
    if (epsilon <= 0) throw Error(Errc::NotPositive, "epsilon must be positive");
    int r = phi.r();

    // stage 1: compactness bound k for M
    BoundResult bound = compactness_bound(m, r, options.max_k, options.node_budget, options.engine);
    if (bound.outcome != BoundResult::Outcome::Resolved)
        throw Error(Errc::UnresolvedBound,
                    "stage compactness: no bound up to " + std::to_string(options.max_k));
    int k = bound.n;

    // stage 2: z in the grid below epsilon/k, largest such point
    Rational z_cap = epsilon / k;
    std::optional<Rational> z;
    for (auto it = grid.values.rbegin(); it != grid.values.rend(); ++it) {
        if (*it < z_cap) {
            z = *it;
            break;
        }
    }
    if (!z) throw Error(Errc::NamedNoZ, "stage pick-z: grid has no point below epsilon/k = " +
                                            rational_to_string(z_cap));

    // stage 3: psi classes = signatures (phi(1x), ..., phi(kx)) on the part of
    // the grid below z whose multiples stay colorable
    std::vector<Rational> sub_values;
    for (const auto& v : grid.values) {
        if (!(v < *z)) break;
        bool closed = true;
        for (int t = 1; t <= k && closed; ++t) closed = phi.domain().contains(Rational(t) * v);
        if (closed) sub_values.push_back(v);
    }
    if (sub_values.empty())
        throw Error(Errc::DomainNotClosed, "stage psi: nothing below z keeps its multiples colorable");
    Coloring psi = product_coloring(phi, k, Grid::explicit_list(sub_values));

    // stage 4: witness for N monochromatic under psi with image below z
    SearchBounds n_bounds = SearchBounds::uniform(psi.domain(), n.cols());
    n_bounds.epsilon = *z;
    n_bounds.node_budget = options.node_budget;
    WitnessResult n_witness = options.n_solver ? options.n_solver(n, psi, n_bounds)
                                               : find_witness(n, psi, n_bounds, options.engine);
    if (n_witness.status != SearchStatus::Found)
        throw Error(Errc::BlockUnsolvable, std::string("stage n-witness: solver returned ") +
                                               search_status_name(n_witness.status));
    const WitnessPayload& nw = std::get<WitnessPayload>(n_witness.certificate->payload);
    Rational a = nw.image.front();

    // stage 5: induced coloring gamma(t) = phi(t a) of {1..k}, then a witness for M
    std::map<Rational, int> gamma_table;
    for (int t = 1; t <= k; ++t) gamma_table.emplace(Rational(t), phi.color_of(Rational(t) * a));
    Coloring gamma = Coloring::table(Grid::integer_range(1, k), r, std::move(gamma_table));
    SearchBounds m_bounds = SearchBounds::uniform(gamma.domain(), m.cols());
    m_bounds.node_budget = options.node_budget;
    WitnessResult m_witness = find_witness(m, gamma, m_bounds, options.engine);
    if (m_witness.status != SearchStatus::Found)
        throw Error(Errc::BlockUnsolvable,
                    "stage m-witness: the k-bound promised a witness but none was found");
    const WitnessPayload& mw = std::get<WitnessPayload>(m_witness.certificate->payload);
    int j = *mw.color;
    Rational i_mult = mw.image.front();  // an entry of M u, a value in 1..k

    // stage 6: assemble (a u ; i y) against diag(M, N)
    SparseMatrix combined = diagonal_sum(m, n);
    std::vector<Rational> x;
    x.reserve(mw.x.size() + nw.x.size());
    for (const auto& u : mw.x) x.push_back(a * u);
    for (const auto& yv : nw.x) x.push_back(i_mult * yv);
    std::vector<Rational> image = combined.apply(x);
    for (const auto& entry : image) {
        if (!(entry > 0 && entry < epsilon))
            throw Error(Errc::OutOfRange, "assembled image entry " + rational_to_string(entry) +
                                              " left (0, epsilon)");
        if (phi.color_of(entry) != j)
            throw Error(Errc::OutOfRange, "assembled image entry " + rational_to_string(entry) +
                                              " is not phi-color " + std::to_string(j));
    }

    Certificate cert;
    cert.kind = Certificate::Kind::Witness;
    cert.matrix = combined;
    cert.coloring = phi;
    cert.truncation = combined.truncation();
    cert.payload = WitnessPayload{std::move(x), std::move(image), j};
    cert.epsilon = epsilon;
    cert.exhausted = false;
    cert.engine_version = kEngineVersion;
    cert.seed = options.engine.seed;
    return cert;
}

namespace {

// Subsets of the available tail indices. Ordered by highest index first, then
// by value: the tail advances past the largest index a stage touches, so
// packing early indices keeps the remaining tail rich for later blocks.
struct SubsetPool {
    struct Candidate {
        int max_index;
        Rational sum;
        std::uint32_t mask;
    };
    std::vector<Candidate> ordered;

    SubsetPool(const IpTailOracle& oracle, size_t max_size) {
        size_t avail = oracle.remaining();
        if (avail > 16) avail = 16;
        for (std::uint32_t mask = 1; mask < (1u << avail); ++mask) {
            if (static_cast<size_t>(std::popcount(mask)) > max_size) continue;
            Rational sum(0);
            int max_index = 0;
            for (size_t i = 0; i < avail; ++i) {
                if (mask & (1u << i)) {
                    sum += oracle.generators()[oracle.tail_index() + i];
                    max_index = static_cast<int>(i);
                }
            }
            ordered.push_back({max_index, std::move(sum), mask});
        }
        std::sort(ordered.begin(), ordered.end(), [](const Candidate& a, const Candidate& b) {
            if (a.max_index != b.max_index) return a.max_index < b.max_index;
            if (a.sum != b.sum) return a.sum < b.sum;
            return a.mask < b.mask;
        });
    }
};

struct BlockSolution {
    std::vector<Rational> x;
    std::uint32_t used_mask = 0;  // tail-relative generator indices
};

// Assigns each block variable a disjoint generator subset so that every
// nonzero row of the slice sums to a member of the current tail set and stays
// compatible with the accumulated row values.
std::optional<BlockSolution> solve_block(const SparseMatrix& slice,
                                         const std::vector<Rational>& row_accumulator,
                                         const IpTailOracle& oracle,
                                         const SegmentedOptions& options) {
    int vars = slice.cols();
    std::vector<int> nonzero_rows;
    for (int i = 0; i < slice.rows(); ++i) {
        if (!slice.row_is_zero(i)) nonzero_rows.push_back(i);
    }
    if (nonzero_rows.empty()) {
        // untouched columns; park the variables on the smallest generator
        BlockSolution sol;
        sol.x.assign(static_cast<size_t>(vars), oracle.generators().back());
        return sol;
    }
    if (oracle.remaining() < static_cast<size_t>(vars)) return std::nullopt;

    SubsetPool pool(oracle, options.max_subset_size);
    std::vector<Rational> x(static_cast<size_t>(vars));
    std::uint64_t nodes = 0;

    IpTailOracle from_start(oracle.generators());  // membership over the full index range

    auto rows_ok = [&]() {
        for (int row : nonzero_rows) {
            Rational z(0);
            for (const auto& [col, coeff] : slice.row(row)) z += coeff * x[static_cast<size_t>(col)];
            if (!oracle.member(z)) return false;
            if (row_accumulator[static_cast<size_t>(row)] != 0 &&
                !from_start.member(row_accumulator[static_cast<size_t>(row)] + z))
                return false;
        }
        return true;
    };

    auto dfs = [&](auto&& self, int var, std::uint32_t used) -> std::optional<std::uint32_t> {
        if (var == vars) return rows_ok() ? std::optional<std::uint32_t>(used) : std::nullopt;
        for (const auto& cand : pool.ordered) {
            if (++nodes > options.node_budget) throw Error(Errc::BudgetExhausted, "block search budget");
            if (cand.mask & used) continue;
            x[static_cast<size_t>(var)] = cand.sum;
            auto res = self(self, var + 1, used | cand.mask);
            if (res) return res;
        }
        return std::nullopt;
    };
    auto used = dfs(dfs, 0, 0);
    if (!used) return std::nullopt;
    BlockSolution sol;
    sol.x = x;
    sol.used_mask = *used;
    return sol;
}

}  // namespace

Certificate segmented_solve(const SegmentedSpec& spec, IpTailOracle oracle, int depth,
                            const SegmentedOptions& options) {
    if (depth < 0 || depth >= spec.block_count())
        throw Error(Errc::InvalidInput, "depth must name an existing block");
    size_t original_tail = oracle.tail_index();
    std::vector<Rational> row_values(static_cast<size_t>(spec.row_count()), Rational(0));
    std::vector<Rational> x_full;

    for (int nblk = 0; nblk <= depth; ++nblk) {
        const SparseMatrix& slice = spec.slices[static_cast<size_t>(nblk)];
        bool slice_nonzero = false;
        for (int i = 0; i < slice.rows() && !slice_nonzero; ++i)
            slice_nonzero = !slice.row_is_zero(i);
        if (slice_nonzero && oracle.remaining() < static_cast<size_t>(slice.cols()))
            throw Error(Errc::OracleExhausted, "block " + std::to_string(nblk) +
                                                   " needs more generators than remain");
        auto sol = solve_block(slice, row_values, oracle, options);
        if (!sol)
            throw Error(Errc::BlockUnsolvable, "block " + std::to_string(nblk) +
                                                   " has no assignment over the oracle tail");
        std::vector<Rational> contribution = slice.apply(sol->x);
        for (size_t i = 0; i < row_values.size(); ++i) row_values[i] += contribution[i];
        x_full.insert(x_full.end(), sol->x.begin(), sol->x.end());
        if (sol->used_mask) {
            size_t highest = 0;
            for (size_t b = 0; b < 32; ++b) {
                if (sol->used_mask & (1u << b)) highest = b;
            }
            oracle.advance_past(oracle.tail_index() + highest);
        }
    }

    SparseMatrix prefix = spec.prefix(depth);
    std::vector<Rational> image = prefix.apply(x_full);
    IpTailOracle recheck(oracle.generators());
    if (original_tail > 0) recheck.advance_past(original_tail - 1);
    for (int i = 0; i < prefix.rows(); ++i) {
        if (prefix.row_is_zero(i)) continue;
        if (!recheck.member(image[static_cast<size_t>(i)]))
            throw Error(Errc::BlockUnsolvable,
                        "final check: row " + std::to_string(i) + " left the member set");
    }

    Certificate cert;
    cert.kind = Certificate::Kind::Segmented;
    cert.matrix = prefix;
    cert.truncation = depth;
    SegmentedPayload payload;
    payload.spec = spec;
    payload.generators = oracle.generators();
    payload.tail_start = original_tail;
    payload.depth = depth;
    payload.x = std::move(x_full);
    payload.image = std::move(image);
    cert.payload = std::move(payload);
    cert.exhausted = false;
    cert.engine_version = kEngineVersion;
    return cert;
}

Certificate countable_diagonal_solve(const std::vector<SparseMatrix>& blocks,
                                     const std::vector<IpTailOracle>& targets, int prefix,
                                     const std::vector<BlockSolver>& solvers,
                                     const SegmentedOptions& options) {
    if (prefix < 1) throw Error(Errc::InvalidInput, "prefix must be at least 1");
    if (static_cast<size_t>(prefix) > blocks.size() || static_cast<size_t>(prefix) > targets.size())
        throw Error(Errc::InvalidInput, "prefix exceeds the available blocks or targets");

    // pairwise disjointness on generated members
    std::vector<std::vector<Rational>> samples;
    for (int i = 0; i < prefix; ++i) samples.push_back(targets[static_cast<size_t>(i)].members_sample());
    for (int i = 0; i < prefix; ++i) {
        for (int j = i + 1; j < prefix; ++j) {
            std::vector<Rational> shared;
            std::set_intersection(samples[static_cast<size_t>(i)].begin(), samples[static_cast<size_t>(i)].end(),
                                  samples[static_cast<size_t>(j)].begin(), samples[static_cast<size_t>(j)].end(),
                                  std::back_inserter(shared));
            if (!shared.empty())
                throw Error(Errc::DisjointnessViolation,
                            "targets " + std::to_string(i) + " and " + std::to_string(j) +
                                " share member " + rational_to_string(shared.front()));
        }
    }

    StackedPayload payload;
    std::vector<Rational> image;
    for (int nblk = 0; nblk < prefix; ++nblk) {
        const SparseMatrix& block = blocks[static_cast<size_t>(nblk)];
        const IpTailOracle& target = targets[static_cast<size_t>(nblk)];
        std::vector<Rational> x;
        try {
            if (static_cast<size_t>(nblk) < solvers.size() && solvers[static_cast<size_t>(nblk)]) {
                x = solvers[static_cast<size_t>(nblk)](block, target);
            } else {
                std::vector<Rational> acc(static_cast<size_t>(block.rows()), Rational(0));
                auto sol = solve_block(block, acc, target, options);
                if (!sol)
                    throw Error(Errc::BlockUnsolvable, "no assignment over the target set");
                x = sol->x;
            }
        } catch (const Error& e) {
            throw Error(Errc::BlockFailure, "block " + std::to_string(nblk) + ": " + e.what());
        }
        std::vector<Rational> block_image = block.apply(x);
        for (const auto& entry : block_image) {
            if (!target.member(entry))
                throw Error(Errc::BlockFailure, "block " + std::to_string(nblk) + " image entry " +
                                                    rational_to_string(entry) +
                                                    " missed its target set");
        }
        payload.blocks.push_back(block);
        payload.target_generators.push_back(target.generators());
        payload.x_blocks.push_back(std::move(x));
        image.insert(image.end(), block_image.begin(), block_image.end());
    }
    payload.image = image;

    Certificate cert;
    cert.kind = Certificate::Kind::Stacked;
    SparseMatrix combined = blocks.front();
    for (int nblk = 1; nblk < prefix; ++nblk)
        combined = diagonal_sum(combined, blocks[static_cast<size_t>(nblk)]);
    cert.matrix = combined;
    cert.payload = std::move(payload);
    cert.exhausted = false;
    cert.engine_version = kEngineVersion;
    return cert;
}

}  // namespace ipr
