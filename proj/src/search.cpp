#include "ipr/search.hpp"

#include "ipr/error.hpp"
#include "ipr/version.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace ipr {

const char* search_status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::NoneExhausted: return "none";
        case SearchStatus::BudgetExhausted: return "budget_exhausted";
    }
    return "unknown";
}

SearchBounds SearchBounds::uniform(const Grid& grid, int cols) {
    if (cols < 1) throw Error(Errc::InvalidInput, "need at least one column");
    SearchBounds b;
    b.column_grids.assign(static_cast<size_t>(cols), grid.values);
    return b;
}

namespace {

// Runs `branches` jobs on `workers` threads; job order is the branch index,
// results land in a per-branch slot, so the merge is scheduling independent.
template <typename Fn>
void run_branches(size_t branches, int workers, Fn&& job) {
    if (workers <= 1 || branches <= 1) {
        for (size_t i = 0; i < branches; ++i) job(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto loop = [&] {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= branches) return;
            job(i);
        }
    };
    size_t nthreads = std::min<size_t>(static_cast<size_t>(workers), branches);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(loop);
    for (auto& th : pool) th.join();
}

struct BranchOutcome {
    SearchStatus status = SearchStatus::NoneExhausted;
    std::optional<WitnessPayload> witness;
};

// Rows become checkable once their last referenced column is assigned.
struct RowSchedule {
    std::vector<std::vector<int>> rows_completing_at;  // per column
    bool has_zero_row = false;

    explicit RowSchedule(const SparseMatrix& m) {
        rows_completing_at.resize(static_cast<size_t>(m.cols()));
        for (int i = 0; i < m.rows(); ++i) {
            if (m.row_is_zero(i)) {
                has_zero_row = true;
                continue;
            }
            int last = m.row(i).back().first;
            rows_completing_at[static_cast<size_t>(last)].push_back(i);
        }
    }
};

class WitnessBranch {
  public:
    WitnessBranch(const SparseMatrix& m, const Coloring& coloring, const SearchBounds& bounds,
                  const RowSchedule& schedule)
        : m_(m), coloring_(coloring), bounds_(bounds), schedule_(schedule),
          x_(static_cast<size_t>(m.cols())), sums_(static_cast<size_t>(m.rows()), Rational(0)) {}

    BranchOutcome run(size_t first_index) {
        nodes_ = 0;
        out_ = BranchOutcome{};
        try {
            assign(0, first_index);
        } catch (const BudgetStop&) {
            out_.status = SearchStatus::BudgetExhausted;
        }
        return std::move(out_);
    }

  private:
    struct BudgetStop {};

    bool image_entry_ok(const Rational& value, int& target_color) const {
        if (bounds_.epsilon && !(value > 0 && value < *bounds_.epsilon)) return false;
        auto color = coloring_.try_color(value);
        if (!color) {
            if (bounds_.policy == SearchBounds::DomainPolicy::Strict)
                throw Error(Errc::ImageOutsideDomain,
                            "image entry " + rational_to_string(value) + " is outside the domain");
            return false;
        }
        if (target_color < 0) {
            target_color = *color;
            return true;
        }
        return *color == target_color;
    }

    // assigns column `col` to grid value index `vi`; recurses over later columns
    void assign(int col, size_t vi) {
        if (++nodes_ > bounds_.node_budget) throw BudgetStop{};
        const Rational& value = bounds_.column_grids[static_cast<size_t>(col)][vi];
        x_[static_cast<size_t>(col)] = value;
        for (const auto& [row, coeff] : col_entries_cache(col)) sums_[static_cast<size_t>(row)] += coeff * value;

        int saved_color = color_;
        bool ok = true;
        for (int row : schedule_.rows_completing_at[static_cast<size_t>(col)]) {
            if (!image_entry_ok(sums_[static_cast<size_t>(row)], color_)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            if (col + 1 == m_.cols()) {
                WitnessPayload w;
                w.x = x_;
                w.image = m_.apply(x_);
                w.color = color_ < 0 ? std::optional<int>() : std::optional<int>(color_);
                out_.status = SearchStatus::Found;
                out_.witness = std::move(w);
            } else {
                const auto& next_grid = bounds_.column_grids[static_cast<size_t>(col) + 1];
                for (size_t next = 0; next < next_grid.size(); ++next) {
                    assign(col + 1, next);
                    if (out_.status == SearchStatus::Found) break;
                }
            }
        }
        for (const auto& [row, coeff] : col_entries_cache(col)) sums_[static_cast<size_t>(row)] -= coeff * value;
        color_ = saved_color;
    }

    // column -> (row, coefficient) incidence, built once
    const std::vector<std::pair<int, Rational>>& col_entries_cache(int col) {
        if (col_entries_.empty()) {
            col_entries_.resize(static_cast<size_t>(m_.cols()));
            for (int i = 0; i < m_.rows(); ++i) {
                for (const auto& [c, v] : m_.row(i))
                    col_entries_[static_cast<size_t>(c)].emplace_back(i, v);
            }
        }
        return col_entries_[static_cast<size_t>(col)];
    }

    const SparseMatrix& m_;
    const Coloring& coloring_;
    const SearchBounds& bounds_;
    const RowSchedule& schedule_;
    std::vector<Rational> x_;
    std::vector<Rational> sums_;
    std::vector<std::vector<std::pair<int, Rational>>> col_entries_;
    int color_ = -1;
    std::uint64_t nodes_ = 0;
    BranchOutcome out_;
};

Certificate make_witness_certificate(const SparseMatrix& m, const Coloring& coloring,
                                     const SearchBounds& bounds, WitnessPayload payload,
                                     const EngineConfig& config) {
    Certificate cert;
    cert.kind = Certificate::Kind::Witness;
    cert.matrix = m;
    cert.coloring = coloring;
    cert.truncation = m.truncation();
    cert.payload = std::move(payload);
    cert.epsilon = bounds.epsilon;
    cert.exhausted = false;
    cert.engine_version = kEngineVersion;
    cert.seed = config.seed;
    return cert;
}

}  // namespace

WitnessResult find_witness(const SparseMatrix& m, const Coloring& coloring,
                           const SearchBounds& bounds, const EngineConfig& config) {
    if (static_cast<int>(bounds.column_grids.size()) != m.cols())
        throw Error(Errc::InvalidInput, "need one grid per matrix column");
    for (const auto& g : bounds.column_grids) {
        if (g.empty()) throw Error(Errc::InvalidInput, "column grids must be nonempty");
    }
    if (bounds.epsilon && *bounds.epsilon <= 0)
        throw Error(Errc::NotPositive, "epsilon must be positive");

    RowSchedule schedule(m);
    if (schedule.has_zero_row) {
        // a zero row pins an image entry to 0, which no positive class colors
        return {SearchStatus::NoneExhausted, std::nullopt};
    }

    const auto& first_grid = bounds.column_grids.front();
    std::vector<BranchOutcome> outcomes(first_grid.size());
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    run_branches(first_grid.size(), config.workers, [&](size_t i) {
        if (failed.load()) return;
        try {
            WitnessBranch branch(m, coloring, bounds, schedule);
            outcomes[i] = branch.run(i);
        } catch (...) {
            failed.store(true);
            error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);

    for (auto& outcome : outcomes) {
        if (outcome.status == SearchStatus::Found) {
            return {SearchStatus::Found,
                    make_witness_certificate(m, coloring, bounds, std::move(*outcome.witness), config)};
        }
        if (outcome.status == SearchStatus::BudgetExhausted)
            return {SearchStatus::BudgetExhausted, std::nullopt};
    }
    return {SearchStatus::NoneExhausted, std::nullopt};
}

namespace {

// Monochromatic-image constraints over domain indices: no constraint set may
// end up single colored.
struct ConstraintSystem {
    std::vector<std::vector<int>> constraints;  // sorted unique domain indices
    bool unavoidable = false;                   // some image is a single domain point

    ConstraintSystem(const SparseMatrix& m, const Grid& domain) {
        if (m.has_zero_row()) {
            // rows fixed at 0 can never land in the (positive) domain, so no
            // vector yields a constraint
            return;
        }
        size_t v = static_cast<size_t>(m.cols());
        double est = 1;
        for (size_t c = 0; c < v; ++c) {
            est *= static_cast<double>(domain.size());
            if (est > 5e6) throw Error(Errc::SizeTooLarge, "grid vector space too large");
        }
        std::vector<size_t> idx(v, 0);
        std::vector<Rational> x(v);
        std::set<std::vector<int>> seen;
        while (true) {
            for (size_t c = 0; c < v; ++c) x[c] = domain.values[idx[c]];
            std::vector<Rational> image = m.apply(x);
            std::vector<int> constraint;
            bool inside = true;
            for (const auto& entry : image) {
                auto pos = domain.index_of(entry);
                if (!pos) {
                    inside = false;
                    break;
                }
                constraint.push_back(static_cast<int>(*pos));
            }
            if (inside) {
                std::sort(constraint.begin(), constraint.end());
                constraint.erase(std::unique(constraint.begin(), constraint.end()), constraint.end());
                if (constraint.size() == 1) unavoidable = true;
                else if (seen.insert(constraint).second) constraints.push_back(constraint);
            }
            size_t c = 0;
            while (c < v && idx[c] + 1 == domain.size()) idx[c++] = 0;
            if (c == v) break;
            ++idx[c];
        }
    }
};

class AvoidSearch {
  public:
    AvoidSearch(const ConstraintSystem& sys, size_t points, int r, std::uint64_t budget)
        : r_(r), budget_(budget), colors_(points, -1) {
        by_point_.resize(points);
        for (size_t ci = 0; ci < sys.constraints.size(); ++ci) {
            for (int p : sys.constraints[ci]) by_point_[static_cast<size_t>(p)].push_back(ci);
        }
        constraints_ = &sys.constraints;
    }

    // Extends the canonical prefix; returns Found with the completed coloring,
    // NoneExhausted, or BudgetExhausted.
    SearchStatus run(const std::vector<int>& prefix, std::vector<int>& out_colors) {
        nodes_ = 0;
        for (size_t i = 0; i < prefix.size(); ++i) {
            if (!place(i, prefix[i])) {
                for (size_t j = i; j-- > 0;) unplace(j);
                return SearchStatus::NoneExhausted;  // prefix already violates
            }
        }
        max_used_ = 0;
        for (int c : prefix) max_used_ = std::max(max_used_, c);
        SearchStatus st;
        try {
            st = extend(prefix.size()) ? SearchStatus::Found : SearchStatus::NoneExhausted;
        } catch (const BudgetStop&) {
            st = SearchStatus::BudgetExhausted;
        }
        if (st == SearchStatus::Found) out_colors = colors_;
        for (size_t j = prefix.size(); j-- > 0;) unplace(j);
        return st;
    }

    // All viable canonical prefixes of the first `depth` points, lex order.
    static std::vector<std::vector<int>> canonical_prefixes(size_t depth, int r) {
        std::vector<std::vector<int>> out;
        std::vector<int> current;
        prefix_rec(depth, r, 0, current, out);
        return out;
    }

  private:
    struct BudgetStop {};

    static void prefix_rec(size_t depth, int r, int max_used, std::vector<int>& current,
                           std::vector<std::vector<int>>& out) {
        if (current.size() == depth) {
            out.push_back(current);
            return;
        }
        int limit = current.empty() ? 0 : std::min(r - 1, max_used + 1);
        for (int c = 0; c <= limit; ++c) {
            current.push_back(c);
            prefix_rec(depth, r, std::max(max_used, c), current, out);
            current.pop_back();
        }
    }

    bool violates(size_t constraint_index) const {
        const auto& pts = (*constraints_)[constraint_index];
        int first = colors_[static_cast<size_t>(pts[0])];
        if (first < 0) return false;
        for (int p : pts) {
            int c = colors_[static_cast<size_t>(p)];
            if (c < 0 || c != first) return false;
        }
        return true;
    }

    bool place(size_t point, int color) {
        colors_[point] = color;
        for (size_t ci : by_point_[point]) {
            if (violates(ci)) {
                colors_[point] = -1;
                return false;
            }
        }
        return true;
    }

    void unplace(size_t point) { colors_[point] = -1; }

    bool extend(size_t point) {
        if (point == colors_.size()) return true;
        if (++nodes_ > budget_) throw BudgetStop{};
        int limit = std::min(r_ - 1, max_used_ + 1);
        for (int c = 0; c <= limit; ++c) {
            if (!place(point, c)) continue;
            int saved = max_used_;
            max_used_ = std::max(max_used_, c);
            if (extend(point + 1)) return true;
            max_used_ = saved;
            unplace(point);
        }
        colors_[point] = -1;
        return false;
    }

    const std::vector<std::vector<int>>* constraints_ = nullptr;
    std::vector<std::vector<size_t>> by_point_;
    int r_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    int max_used_ = 0;
    std::vector<int> colors_;
};

}  // namespace

AvoidResult find_avoiding_coloring(const SparseMatrix& m, int r, const Grid& domain,
                                   std::uint64_t node_budget, const EngineConfig& config) {
    if (r < 1) throw Error(Errc::InvalidInput, "need at least one color");
    if (domain.values.empty()) throw Error(Errc::InvalidInput, "empty domain");
    ConstraintSystem sys(m, domain);
    if (sys.unavoidable) return {SearchStatus::NoneExhausted, std::nullopt};

    size_t points = domain.size();
    // split the canonical tree a little past the worker count
    size_t depth = 1;
    while (depth < points && AvoidSearch::canonical_prefixes(depth, r).size() <
                                 static_cast<size_t>(std::max(1, config.workers)) * 4)
        ++depth;
    auto prefixes = AvoidSearch::canonical_prefixes(std::min(depth, points), r);

    std::vector<SearchStatus> statuses(prefixes.size(), SearchStatus::NoneExhausted);
    std::vector<std::vector<int>> found(prefixes.size());
    run_branches(prefixes.size(), config.workers, [&](size_t i) {
        AvoidSearch search(sys, points, r, node_budget);
        statuses[i] = search.run(prefixes[i], found[i]);
    });

    for (size_t i = 0; i < prefixes.size(); ++i) {
        if (statuses[i] == SearchStatus::Found) {
            std::map<Rational, int> assignment;
            for (size_t p = 0; p < points; ++p) assignment.emplace(domain.values[p], found[i][p]);
            Certificate cert;
            cert.kind = Certificate::Kind::Refutation;
            cert.matrix = m;
            cert.coloring = Coloring::table(domain, r, std::move(assignment));
            cert.truncation = m.truncation();
            cert.payload = RefutationPayload{r, domain.rule};
            cert.exhausted = true;
            cert.engine_version = kEngineVersion;
            cert.seed = config.seed;
            return {SearchStatus::Found, std::move(cert)};
        }
        if (statuses[i] == SearchStatus::BudgetExhausted)
            return {SearchStatus::BudgetExhausted, std::nullopt};
    }
    return {SearchStatus::NoneExhausted, std::nullopt};
}

BoundResult compactness_bound(const SparseMatrix& m, int r, int max_n, std::uint64_t node_budget,
                              const EngineConfig& config) {
    std::optional<Coloring> previous_avoiding;
    for (int n = 1; n <= max_n; ++n) {
        AvoidResult res = find_avoiding_coloring(m, r, Grid::integer_range(1, n), node_budget, config);
        if (res.status == SearchStatus::BudgetExhausted)
            return {BoundResult::Outcome::BudgetExhausted, n, std::nullopt};
        if (res.status == SearchStatus::NoneExhausted) {
            Certificate cert;
            cert.kind = Certificate::Kind::Bound;
            cert.matrix = m;
            cert.truncation = m.truncation();
            cert.payload = BoundPayload{n, r, previous_avoiding};
            cert.exhausted = true;
            cert.engine_version = kEngineVersion;
            cert.seed = config.seed;
            return {BoundResult::Outcome::Resolved, n, std::move(cert)};
        }
        previous_avoiding = res.certificate->coloring;
    }
    return {BoundResult::Outcome::Unresolved, max_n, std::nullopt};
}

ExtendResult extend_with_row(const SparseMatrix& m, const std::vector<Rational>& rvec,
                             const std::vector<Rational>& candidates, int r, int max_n,
                             std::uint64_t node_budget, const EngineConfig& config) {
    if (static_cast<int>(rvec.size()) != m.cols())
        throw Error(Errc::InvalidInput, "row vector length must match the column count");
    bool nonzero = false;
    for (const auto& v : rvec) nonzero = nonzero || v != 0;
    if (!nonzero) throw Error(Errc::InvalidInput, "row vector must be nonzero");

    ExtendResult result;
    for (const auto& b : candidates) {
        if (b == 0) throw Error(Errc::InvalidInput, "candidates must be nonzero");
        SparseMatrix stacked(m.kind(), m.cols());
        SparseMatrix::Row top;
        for (int j = 0; j < m.cols(); ++j) {
            Rational val = b * rvec[static_cast<size_t>(j)];
            if (val != 0) top.emplace_back(j, val);
        }
        stacked.append_row(std::move(top));
        for (int i = 0; i < m.rows(); ++i) stacked.append_row(m.row(i));
        BoundResult bound = compactness_bound(stacked, r, max_n, node_budget, config);
        result.tried.push_back({b, bound});
        if (bound.outcome == BoundResult::Outcome::Resolved && !result.b) {
            result.b = b;
            break;
        }
    }
    return result;
}

}  // namespace ipr
