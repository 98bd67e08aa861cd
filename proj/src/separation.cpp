#include "ipr/separation.hpp"

#include "ipr/error.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <bit>
#include <thread>

namespace ipr {

namespace {

// phi of a scaled dyadic: support shifts leave the zero-run pattern alone, so
// the count on the integer agrees with the count on the value.
int phi_u64(std::uint64_t x) {
    x >>= std::countr_zero(x);  // drop everything below the end bit
    int count = 0;
    while (true) {
        x >>= std::countr_one(x);  // drop the block of ones just read
        if (x == 0) break;
        int zeros = std::countr_zero(x);
        if (zeros % 2 == 0) ++count;
        x >>= zeros;
    }
    return count;
}

// Complete MT patterns over positions 0..len-1 that use position len-1, as
// sparse (position, coefficient) lists. A column may rejoin the latest block
// after a gap; once the next block starts, earlier ones are frozen.
using Pattern = std::vector<std::pair<int, std::uint64_t>>;

void patterns_rec(const std::vector<std::uint64_t>& coeffs, int len, int pos, size_t started,
                  Pattern& current, std::vector<Pattern>& out) {
    if (pos == len) {
        if (started == coeffs.size() && !current.empty() && current.back().first == len - 1)
            out.push_back(current);
        return;
    }
    patterns_rec(coeffs, len, pos + 1, started, current, out);
    if (started >= 1) {
        current.emplace_back(pos, coeffs[started - 1]);
        patterns_rec(coeffs, len, pos + 1, started, current, out);
        current.pop_back();
    }
    if (started < coeffs.size()) {
        current.emplace_back(pos, coeffs[started]);
        patterns_rec(coeffs, len, pos + 1, started + 1, current, out);
        current.pop_back();
    }
}

struct ScaledTuple {
    std::vector<std::uint64_t> coeffs;
    std::uint64_t max_coeff = 0;
};

ScaledTuple scale_tuple(const CompressedTuple& tuple) {
    ScaledTuple out;
    for (const auto& e : tuple.entries) {
        if (rat_den(e) != 1 || e <= 0 || rat_num(e) > 1000)
            throw Error(Errc::InvalidInput,
                        "separation search needs tuple entries from N (at most 1000)");
        std::uint64_t c = rat_num(e).convert_to<std::uint64_t>();
        out.coeffs.push_back(c);
        out.max_coeff = std::max(out.max_coeff, c);
    }
    return out;
}

struct LengthSearch {
    const std::vector<std::uint64_t>& candidates;
    const std::vector<std::vector<Pattern>>& new_patterns_at;  // per position
    std::uint64_t two_limit;
    int color;
    int length;
    std::uint64_t budget;

    struct BudgetStop {};

    std::vector<std::uint64_t> chosen;
    std::uint64_t nodes = 0;
    bool found = false;

    bool value_ok(std::uint64_t v) const { return v < two_limit && phi_u64(v) % 3 == color; }

    bool new_patterns_ok(int pos) const {
        for (const auto& pattern : new_patterns_at[static_cast<size_t>(pos)]) {
            std::uint64_t v = 0;
            for (const auto& [p, coeff] : pattern) v += coeff * chosen[static_cast<size_t>(p)];
            if (!value_ok(v)) return false;
        }
        return true;
    }

    bool dfs(int pos) {
        if (pos == length) return true;
        for (std::uint64_t cand : candidates) {
            if (++nodes > budget) throw BudgetStop{};
            chosen[static_cast<size_t>(pos)] = cand;
            if (new_patterns_ok(pos) && dfs(pos + 1)) return true;
        }
        return false;
    }

    // Top-level branch over the first term; deeper levels run sequentially.
    SearchStatus run_branch(size_t first, std::vector<std::uint64_t>& witness) {
        chosen.assign(static_cast<size_t>(length), 0);
        nodes = 0;
        chosen[0] = candidates[first];
        try {
            if (!new_patterns_ok(0)) return SearchStatus::NoneExhausted;
            if (length == 1 || dfs(1)) {
                witness = chosen;
                return SearchStatus::Found;
            }
            return SearchStatus::NoneExhausted;
        } catch (const BudgetStop&) {
            return SearchStatus::BudgetExhausted;
        }
    }
};

struct TupleDepth {
    int depth = 0;
    bool exhausted = true;
    std::vector<std::vector<std::uint64_t>> witness_by_length;  // index L, possibly empty
};

TupleDepth tuple_max_depth(const ScaledTuple& tuple, const std::vector<std::uint64_t>& candidates,
                           std::uint64_t two_limit, int color, int maxlen, std::uint64_t budget,
                           const EngineConfig& config) {
    TupleDepth result;
    result.witness_by_length.resize(static_cast<size_t>(maxlen) + 1);
    int arity = static_cast<int>(tuple.coeffs.size());
    if (arity > maxlen || candidates.empty()) return result;

    for (int len = arity; len <= maxlen; ++len) {
        std::vector<std::vector<Pattern>> new_patterns_at(static_cast<size_t>(len));
        for (int j = 1; j <= len; ++j) {
            Pattern current;
            patterns_rec(tuple.coeffs, j, 0, 0, current, new_patterns_at[static_cast<size_t>(j - 1)]);
        }

        std::vector<SearchStatus> statuses(candidates.size(), SearchStatus::NoneExhausted);
        std::vector<std::vector<std::uint64_t>> witnesses(candidates.size());
        std::atomic<size_t> next{0};
        std::atomic<size_t> best{candidates.size()};
        auto worker = [&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= candidates.size()) return;
                if (i > best.load()) {
                    statuses[i] = SearchStatus::NoneExhausted;  // beyond the best hit; irrelevant
                    continue;
                }
                LengthSearch search{candidates, new_patterns_at, two_limit, color, len, budget, {}, 0, false};
                statuses[i] = search.run_branch(i, witnesses[i]);
                if (statuses[i] == SearchStatus::Found) {
                    size_t prev = best.load();
                    while (i < prev && !best.compare_exchange_weak(prev, i)) {
                    }
                }
            }
        };
        int workers = std::max(1, config.workers);
        if (workers == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }

        SearchStatus overall = SearchStatus::NoneExhausted;
        std::vector<std::uint64_t> witness;
        for (size_t i = 0; i < candidates.size(); ++i) {
            if (statuses[i] == SearchStatus::Found) {
                overall = SearchStatus::Found;
                witness = witnesses[i];
                break;
            }
            if (statuses[i] == SearchStatus::BudgetExhausted) {
                overall = SearchStatus::BudgetExhausted;
                break;
            }
        }
        if (overall == SearchStatus::Found) {
            result.depth = len;
            result.witness_by_length[static_cast<size_t>(len)] = std::move(witness);
            continue;
        }
        if (overall == SearchStatus::BudgetExhausted) result.exhausted = false;
        break;  // monotone in length: none at len means none above
    }
    return result;
}

}  // namespace

SeparationReport separation_depth_search(int window_lo, int window_hi, int maxlen,
                                         const CompressedTuple& tuple_a,
                                         const CompressedTuple& tuple_b,
                                         std::uint64_t node_budget, const EngineConfig& config) {
    if (maxlen < 1) throw Error(Errc::InvalidInput, "maxlen must be at least 1");
    if (window_hi < window_lo) throw Error(Errc::InvalidInput, "empty exponent window");
    int width = window_hi - window_lo + 1;
    if (width > 20) throw Error(Errc::SizeTooLarge, "window wider than 20 exponents");

    ScaledTuple sa = scale_tuple(tuple_a);
    ScaledTuple sb = scale_tuple(tuple_b);

    // scaled by 2^-window_lo; value < 2 means scaled < 2^(1-window_lo)
    if (window_lo <= 0 && 1 - window_lo > 40)
        throw Error(Errc::SizeTooLarge, "window floor below exponent -39");
    std::uint64_t two_limit = window_lo <= 0 ? (1ull << static_cast<unsigned>(1 - window_lo)) : 1;

    // terms must sit in (0,2): start <= 0. A window above 0 has no terms.
    std::vector<std::uint64_t> candidates;
    std::uint64_t top = (1ull << width) - 1;
    for (std::uint64_t mask = 1; mask <= top; ++mask) {
        int start = std::bit_width(mask) - 1 + window_lo;
        if (start <= 0) candidates.push_back(mask);
    }

    SeparationReport report;
    report.window_lo = window_lo;
    report.window_hi = window_hi;
    report.maxlen = maxlen;
    report.tuple_a = tuple_a.entries;
    report.tuple_b = tuple_b.entries;

    Rational scale = pow2(window_lo);
    for (int color = 0; color < 3; ++color) {
        TupleDepth da = tuple_max_depth(sa, candidates, two_limit, color, maxlen, node_budget, config);
        TupleDepth db = tuple_max_depth(sb, candidates, two_limit, color, maxlen, node_budget, config);
        SeparationColorReport cr;
        cr.color = color;
        cr.depth = std::min(da.depth, db.depth);
        cr.exhausted = da.exhausted && db.exhausted;
        if (cr.depth >= 1) {
            for (std::uint64_t mask : da.witness_by_length[static_cast<size_t>(cr.depth)])
                cr.witness_a.push_back(Rational(mask) * scale);
            for (std::uint64_t mask : db.witness_by_length[static_cast<size_t>(cr.depth)])
                cr.witness_b.push_back(Rational(mask) * scale);
        }
        report.colors.push_back(std::move(cr));
    }
    return report;
}

nlohmann::ordered_json separation_report_to_json(const SeparationReport& report) {
    nlohmann::ordered_json j;
    j["window"] = {{"lo", report.window_lo}, {"hi", report.window_hi}};
    j["maxlen"] = report.maxlen;
    auto rats = [](const std::vector<Rational>& values) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& v : values) out.push_back(rational_to_string(v));
        return out;
    };
    j["tuple_a"] = rats(report.tuple_a);
    j["tuple_b"] = rats(report.tuple_b);
    nlohmann::ordered_json colors = nlohmann::ordered_json::array();
    for (const auto& c : report.colors) {
        nlohmann::ordered_json cj;
        cj["color"] = c.color;
        cj["depth"] = c.depth;
        cj["exhausted"] = c.exhausted;
        cj["witness_a"] = rats(c.witness_a);
        cj["witness_b"] = rats(c.witness_b);
        colors.push_back(std::move(cj));
    }
    j["colors"] = std::move(colors);
    return j;
}

}  // namespace ipr
