// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: ipr_acceptance <golden-dir> [--write-golden]

#include "ipr/constructions.hpp"
#include "ipr/coloring.hpp"
#include "ipr/json_io.hpp"
#include "ipr/mt.hpp"
#include "ipr/search.hpp"
#include "ipr/separation.hpp"
#include "ipr/verify.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace ipr;

namespace {

struct Criterion {
    std::string name;
    double limit_seconds;
    std::function<void(std::vector<std::string>&)> run;  // push failure messages
};

std::string golden_dir;
bool write_golden = false;

void expect(std::vector<std::string>& failures, bool ok, const std::string& message) {
    if (!ok) failures.push_back(message);
}

// ---- 1. phi / coloring correctness over the [-12,0] window -----------------

void criterion_phi(std::vector<std::string>& failures) {
    size_t count = 0;
    std::vector<size_t> class_sizes(3, 0);
    for (unsigned long mask = 1; mask < (1ul << 13); ++mask) {
        Dyadic d = Dyadic::from_rational(Rational(mask) * pow2(-12));
        int fast = d.phi_even_zero_blocks();
        int naive = phi_even_zero_blocks_by_scan(d);
        if (fast != naive) {
            expect(failures, false,
                   "phi mismatch at mask " + std::to_string(mask) + ": " + std::to_string(fast) +
                       " vs " + std::to_string(naive));
            return;
        }
        int color = dyadic_three_color(d);
        if (color < 0 || color > 2) {
            expect(failures, false, "color out of palette");
            return;
        }
        ++class_sizes[static_cast<size_t>(color)];
        ++count;
    }
    expect(failures, count == 8191, "expected 8191 grid values");
    expect(failures, class_sizes[0] + class_sizes[1] + class_sizes[2] == 8191,
           "classes do not cover the grid");
    expect(failures, class_sizes[0] > 0 && class_sizes[1] > 0 && class_sizes[2] > 0,
           "some class is empty");
}

// ---- 2. MT enumeration: strategy agreement and exact multiplicity ----------

void criterion_mt(std::vector<std::string>& failures) {
    std::vector<std::vector<Rational>> tuples;
    for (long a = 1; a <= 3; ++a) {
        tuples.push_back({Rational(a)});
        for (long b = 1; b <= 3; ++b) {
            if (b == a) continue;
            tuples.push_back({Rational(a), Rational(b)});
            for (long c = 1; c <= 3; ++c) {
                if (c == b) continue;
                tuples.push_back({Rational(a), Rational(b), Rational(c)});
            }
        }
    }
    expect(failures, tuples.size() == 21, "tuple census should be 21");

    std::mt19937 rng(2024);
    for (const auto& entries : tuples) {
        CompressedTuple tuple(entries);
        for (size_t n = tuple.size(); n <= 8; ++n) {
            std::vector<Rational> powers, randoms;
            for (size_t i = 0; i < n; ++i) {
                powers.push_back(pow2(static_cast<long>(i)));
                randoms.emplace_back(1 + static_cast<long>(rng() % 60),
                                     1 + static_cast<long>(rng() % 12));
            }
            for (const auto& terms : {powers, randoms}) {
                TermSequence x(terms);
                auto a = mt_enumerate(tuple, x);
                auto b = mt_enumerate_labelings(tuple, x);
                if (a.values != b.values || a.multiplicity != b.multiplicity) {
                    expect(failures, false, "strategies disagree on a length-" + std::to_string(n) +
                                                " sequence");
                    return;
                }
                if (tuple.size() == 1 && tuple.entries[0] == 1) {
                    expect(failures, a.multiplicity == (1ull << n) - 1,
                           "FS multiplicity is not 2^n - 1");
                }
            }
        }
    }
}

// ---- 3. schur compactness bound with verified certificates -----------------

void criterion_schur_bound(std::vector<std::string>& failures) {
    SparseMatrix schur = build_family("schur", 2);
    auto bound = compactness_bound(schur, 2, 10);
    expect(failures, bound.outcome == BoundResult::Outcome::Resolved, "bound did not resolve");
    if (bound.outcome != BoundResult::Outcome::Resolved) return;
    expect(failures, bound.n == 5, "bound is " + std::to_string(bound.n) + ", expected 5");

    auto refutation = find_avoiding_coloring(schur, 2, Grid::integer_range(1, 4));
    expect(failures, refutation.status == SearchStatus::Found, "no avoiding coloring at N=4");
    if (refutation.status == SearchStatus::Found) {
        auto rep = verify_certificate(*refutation.certificate);
        expect(failures, rep.valid, "refutation certificate failed verification");
    }
    auto rep = verify_certificate(*bound.certificate);
    expect(failures, rep.valid, "bound certificate failed verification");
}

// ---- 4. worked example identities ------------------------------------------

void criterion_examples(std::vector<std::string>& failures) {
    std::mt19937 rng(512);
    auto rnd = [&](long n, long d) {
        return Rational(1 + static_cast<long>(rng() % n), 1 + static_cast<long>(rng() % d));
    };
    for (int trial = 0; trial < 1000; ++trial) {
        size_t len = 1 + rng() % 5;
        Rational y0 = rnd(30, 10);
        std::vector<Rational> y{y0};
        Rational power(1);
        for (size_t n = 1; n < len; ++n) {
            power *= 2;
            y.push_back(power * y0 + rnd(20, 10));
        }
        auto x = ex16_witness(y);
        if (build_family("ex16", static_cast<int>(len)).apply(x) != y) {
            expect(failures, false, "ex16 identity violated");
            return;
        }
    }
    for (int trial = 0; trial < 1000; ++trial) {
        size_t len = 1 + rng() % 5;
        std::vector<Rational> y;
        for (size_t n = 1; n <= len; ++n)
            y.push_back(Rational(1, 2 * static_cast<long>(n) - 1) *
                        Rational(1 + static_cast<long>(rng() % 7), 8));
        auto x = ex17_witness(y);
        if (build_family("ex17", static_cast<int>(len)).apply(x) != y) {
            expect(failures, false, "ex17 identity violated");
            return;
        }
    }
    for (int trial = 0; trial < 1000; ++trial) {
        Rational x0(1, 2 + static_cast<long>(rng() % 50));
        long guaranteed = ceil_log2(Rational(1) / x0);
        std::vector<Rational> x{x0};
        for (long i = 0; i <= guaranteed; ++i) x.push_back(rnd(9, 25));
        int k = ex16_obstruction(x, Rational(1));
        if (k > guaranteed) {
            expect(failures, false, "obstruction index beyond ceil(log2(1/x0))");
            return;
        }
    }
}

// ---- 5. extension pipeline end to end --------------------------------------

Certificate run_pipeline(int workers) {
    SparseMatrix schur = build_family("schur", 2);
    SparseMatrix id1 = build_family("identity", 1);
    Grid grid = Grid::dyadic_window(-12, 0);
    std::map<Rational, int> parity;
    for (const auto& v : grid.values)
        parity.emplace(v, Dyadic::from_rational(v).phi_even_zero_blocks() % 2);
    Coloring phi = Coloring::table(grid, 2, parity);
    PipelineOptions options;
    options.engine.workers = workers;
    return extension_pipeline(schur, id1, phi, Rational(1, 16), grid, options);
}

void criterion_pipeline(std::vector<std::string>& failures) {
    Certificate cert = run_pipeline(1);
    auto rep = verify_certificate(cert);
    expect(failures, rep.valid, "pipeline certificate failed verification");
    const auto& w = std::get<WitnessPayload>(cert.payload);
    expect(failures, w.image.size() == 4, "expected the 4-entry diagonal image");
    const Coloring& phi = *cert.coloring;
    for (const auto& e : w.image) {
        expect(failures, e > 0 && e < Rational(1, 16), "image entry outside (0, 1/16)");
        expect(failures, phi.color_of(e) == *w.color, "image is not phi-monochromatic");
    }
}

// ---- 6. segmented solver against the base-4 oracle -------------------------

void criterion_segmented(std::vector<std::string>& failures) {
    auto spec = SegmentedSpec::from_diagonal_blocks(
        {build_family("schur", 2), build_family("fs", 3), build_family("schur", 2)});
    Certificate cert = segmented_solve(spec, IpTailOracle::base4(12), 2);
    auto rep = verify_certificate(cert);
    expect(failures, rep.valid, "segmented certificate failed verification");
    const auto& payload = std::get<SegmentedPayload>(cert.payload);
    expect(failures, payload.x.size() == 7, "expected 7 block variables");
    expect(failures, payload.image.size() == 13, "expected 13 rows");
    // independent greedy digit decomposition over 4^-1..4^-12
    for (const auto& v : payload.image) {
        Rational remaining = v;
        Rational g(1);
        for (int i = 1; i <= 12; ++i) {
            g /= 4;
            if (g <= remaining) remaining -= g;
        }
        expect(failures, remaining == 0,
               "row value " + rational_to_string(v) + " is not an FS member by greedy digits");
    }
}

// ---- 7. separation exploration golden --------------------------------------

SeparationReport run_separation(int workers) {
    EngineConfig config;
    config.workers = workers;
    return separation_depth_search(-10, 0, 3, CompressedTuple({Rational(1)}),
                                   CompressedTuple({Rational(1), Rational(2)}),
                                   kDefaultNodeBudget, config);
}

void criterion_separation(std::vector<std::string>& failures) {
    auto one = separation_report_to_json(run_separation(1)).dump(2) + "\n";
    auto eight = separation_report_to_json(run_separation(8)).dump(2) + "\n";
    expect(failures, one == eight, "reports differ between 1 and 8 workers");

    std::string path = golden_dir + "/separation_depth.json";
    if (write_golden) {
        io::write_file_atomic(path, one);
        std::cerr << "wrote golden " << path << "\n";
        return;
    }
    std::ifstream in(path, std::ios::binary);
    expect(failures, static_cast<bool>(in), "golden file missing: " + path);
    if (!in) return;
    std::stringstream buffer;
    buffer << in.rdbuf();
    expect(failures, buffer.str() == one, "report deviates from the golden bytes");

    // exhaustion statement: every depth claim below maxlen is a completed search
    auto report = run_separation(1);
    for (const auto& c : report.colors)
        expect(failures, c.exhausted, "color " + std::to_string(c.color) + " not exhausted");
}

// ---- 8. witness concatenation across diagonal sums --------------------------

void criterion_concatenation(std::vector<std::string>& failures) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        auto random_matrix = [&]() {
            int rows = 1 + static_cast<int>(rng() % 3);
            int cols = 1 + static_cast<int>(rng() % 2);
            SparseMatrix m(SparseMatrix::Kind::Finite, cols);
            for (int i = 0; i < rows; ++i) {
                SparseMatrix::Row row;
                for (int j = 0; j < cols; ++j) {
                    long coeff = static_cast<long>(rng() % 3);
                    if (coeff != 0) row.emplace_back(j, Rational(coeff));
                }
                if (row.empty()) row.emplace_back(0, Rational(1));
                m.append_row(std::move(row));
            }
            return m;
        };
        SparseMatrix m = random_matrix();
        SparseMatrix n = random_matrix();
        std::vector<Rational> x, y;
        for (int j = 0; j < m.cols(); ++j)
            x.emplace_back(1 + static_cast<long>(rng() % 12), 1 + static_cast<long>(rng() % 5));
        for (int j = 0; j < n.cols(); ++j)
            y.emplace_back(1 + static_cast<long>(rng() % 12), 1 + static_cast<long>(rng() % 5));
        auto mx = m.apply(x);
        auto ny = n.apply(y);

        // color every image value 0; pad the domain with decoys in color 1
        std::vector<Rational> domain_values;
        domain_values.insert(domain_values.end(), mx.begin(), mx.end());
        domain_values.insert(domain_values.end(), ny.begin(), ny.end());
        std::map<Rational, int> table;
        for (const auto& v : domain_values) table[v] = 0;
        for (int d = 0; d < 4; ++d) {
            Rational decoy(1000 + d, 1);
            domain_values.push_back(decoy);
            table[decoy] = 1;
        }
        Coloring coloring = Coloring::table(Grid::explicit_list(domain_values), 2, table);

        SparseMatrix d = diagonal_sum(m, n);
        std::vector<Rational> xy;
        xy.insert(xy.end(), x.begin(), x.end());
        xy.insert(xy.end(), y.begin(), y.end());
        auto image = d.apply(xy);
        for (const auto& e : image) {
            if (coloring.color_of(e) != 0) {
                expect(failures, false, "stitched image left the color class");
                return;
            }
        }
        // and the stitched image is exactly (Mx ; Ny)
        std::vector<Rational> expected = mx;
        expected.insert(expected.end(), ny.begin(), ny.end());
        if (image != expected) {
            expect(failures, false, "stitched image is not (Mx ; Ny)");
            return;
        }
    }
}

// ---- 9. determinism across worker counts ------------------------------------

void criterion_determinism(std::vector<std::string>& failures) {
    SparseMatrix schur = build_family("schur", 2);

    std::map<Rational, int> table{{Rational(1), 0}, {Rational(2), 1}, {Rational(3), 1},
                                  {Rational(4), 0}, {Rational(5), 0}};
    Coloring c = Coloring::table(Grid::integer_range(1, 5), 2, table);
    SearchBounds b = SearchBounds::uniform(Grid::integer_range(1, 5), 2);
    auto w1 = find_witness(schur, c, b, {.workers = 1});
    auto w8 = find_witness(schur, c, b, {.workers = 8});
    expect(failures,
           w1.status == SearchStatus::Found && w8.status == SearchStatus::Found &&
               io::dump(io::certificate_to_json(*w1.certificate)) ==
                   io::dump(io::certificate_to_json(*w8.certificate)),
           "witness certificates differ across worker counts");

    auto a1 = find_avoiding_coloring(schur, 2, Grid::integer_range(1, 4), kDefaultNodeBudget,
                                     {.workers = 1});
    auto a8 = find_avoiding_coloring(schur, 2, Grid::integer_range(1, 4), kDefaultNodeBudget,
                                     {.workers = 8});
    expect(failures,
           a1.status == SearchStatus::Found && a8.status == SearchStatus::Found &&
               io::dump(io::certificate_to_json(*a1.certificate)) ==
                   io::dump(io::certificate_to_json(*a8.certificate)),
           "refutation certificates differ across worker counts");

    auto b1 = compactness_bound(schur, 2, 10, kDefaultNodeBudget, {.workers = 1});
    auto b8 = compactness_bound(schur, 2, 10, kDefaultNodeBudget, {.workers = 8});
    expect(failures,
           b1.outcome == BoundResult::Outcome::Resolved &&
               b8.outcome == BoundResult::Outcome::Resolved &&
               io::dump(io::certificate_to_json(*b1.certificate)) ==
                   io::dump(io::certificate_to_json(*b8.certificate)),
           "bound certificates differ across worker counts");

    auto p1 = run_pipeline(1);
    auto p8 = run_pipeline(8);
    expect(failures,
           io::dump(io::certificate_to_json(p1)) == io::dump(io::certificate_to_json(p8)),
           "pipeline certificates differ across worker counts");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: ipr_acceptance <golden-dir> [--write-golden]\n";
        return 2;
    }
    golden_dir = argv[1];
    for (int i = 2; i < argc; ++i) {
        if (std::string(argv[i]) == "--write-golden") write_golden = true;
    }

    std::vector<Criterion> criteria{
        {"phi-and-three-coloring-grid", 1.0, criterion_phi},
        {"mt-enumeration-strategies", 10.0, criterion_mt},
        {"schur-compactness-bound", 5.0, criterion_schur_bound},
        {"example-witness-identities", 5.0, criterion_examples},
        {"extension-pipeline", 60.0, criterion_pipeline},
        {"segmented-solver", 60.0, criterion_segmented},
        {"separation-depth-golden", 0.0, criterion_separation},
        {"witness-concatenation", 0.0, criterion_concatenation},
        {"search-determinism", 0.0, criterion_determinism},
    };

    bool all_ok = true;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto& crit = criteria[i];
        std::vector<std::string> failures;
        auto start = std::chrono::steady_clock::now();
        try {
            crit.run(failures);
        } catch (const std::exception& e) {
            failures.push_back(std::string("exception: ") + e.what());
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (crit.limit_seconds > 0 && seconds > crit.limit_seconds) {
            failures.push_back("took " + std::to_string(seconds) + " s, limit " +
                               std::to_string(crit.limit_seconds) + " s");
        }
        bool ok = failures.empty();
        all_ok = all_ok && ok;
        std::ostringstream line;
        line << "[" << (i + 1) << "/" << criteria.size() << "] " << crit.name << " "
             << (ok ? "PASS" : "FAIL") << " (" << seconds << " s)";
        std::cout << line.str() << "\n";
        for (const auto& f : failures) std::cout << "    - " << f << "\n";
    }
    return all_ok ? 0 : 1;
}
