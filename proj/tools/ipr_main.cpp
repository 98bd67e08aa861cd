// ipr: exact-arithmetic searches, colorings and constructions for image
// partition regularity experiments. All artifacts are canonical JSON with
// "p/q" rationals; exit codes: 0 found/verified, 1 none (exhausted), 2 budget
// exhausted, 3 invalid input.

#include "CLI11.hpp"

#include "ipr/constructions.hpp"
#include "ipr/coloring.hpp"
#include "ipr/error.hpp"
#include "ipr/json_io.hpp"
#include "ipr/matrix.hpp"
#include "ipr/mt.hpp"
#include "ipr/search.hpp"
#include "ipr/separation.hpp"
#include "ipr/verify.hpp"
#include "ipr/version.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using ipr::io::Json;

constexpr int kExitFound = 0;
constexpr int kExitNone = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInvalid = 3;

struct CommonOpts {
    std::uint64_t budget = ipr::kDefaultNodeBudget;
    int workers = 1;
    std::uint64_t seed = 0;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--budget", opts.budget, "node budget per top-level branch")
        ->envname("IPR_BUDGET");
    cmd->add_option("--workers", opts.workers, "worker threads for searches");
    cmd->add_option("--seed", opts.seed, "seed recorded in certificates");
    cmd->add_option("-o,--out", opts.out, "write the artifact to this file");
}

ipr::EngineConfig engine(const CommonOpts& opts) { return {opts.workers, opts.seed}; }

void emit(const CommonOpts& opts, const Json& artifact) {
    std::string text = ipr::io::dump(artifact);
    if (opts.out.empty()) {
        std::cout << text;
    } else {
        ipr::io::write_file_atomic(opts.out, text);
        std::cerr << "wrote " << opts.out << "\n";
    }
}

ipr::SparseMatrix load_matrix(const std::string& path) {
    return ipr::io::matrix_from_json(ipr::io::parse_file(path));
}

ipr::Coloring load_coloring(const std::string& path) {
    return ipr::io::coloring_from_json(ipr::io::parse_file(path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"image partition regularity laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ipr::kEngineVersion);

    int exit_code = kExitFound;
    std::function<void()> action;

    // families build
    auto* families = app.add_subcommand("families", "matrix family builders");
    families->require_subcommand(1);
    auto* fbuild = families->add_subcommand("build", "build a family truncation");
    static std::string f_name;
    static int f_size = 2;
    static std::string f_params;
    static CommonOpts f_opts;
    fbuild->add_option("--family", f_name, "fs | mt | ex16 | ex17 | schur | identity")->required();
    fbuild->add_option("--size", f_size, "truncation size (columns)");
    fbuild->add_option("--params", f_params, "mt tuple coefficients, e.g. 1,2");
    add_common(fbuild, f_opts);
    fbuild->callback([&] {
        std::vector<ipr::Rational> params;
        if (!f_params.empty()) params = ipr::parse_rational_list(f_params);
        emit(f_opts, ipr::io::matrix_to_json(ipr::build_family(f_name, f_size, params)));
    });

    // classify
    auto* classify = app.add_subcommand("classify", "structure report for a matrix");
    static std::string c_matrix;
    static std::string c_breaks;
    static CommonOpts c_opts;
    classify->add_option("--matrix", c_matrix, "matrix JSON file")->required();
    classify->add_option("--breakpoints", c_breaks, "comma separated alpha sequence");
    add_common(classify, c_opts);
    classify->callback([&] {
        std::optional<std::vector<int>> breaks;
        if (!c_breaks.empty()) {
            std::vector<int> bp;
            for (const auto& q : ipr::parse_rational_list(c_breaks))
                bp.push_back(static_cast<int>(ipr::rat_num(q)));
            breaks = bp;
        }
        auto rep = ipr::classify_matrix(load_matrix(c_matrix), breaks);
        Json j;
        j["first_entries"] = rep.first_entries;
        j["monic"] = rep.monic;
        j["notes"] = rep.notes;
        Json fe = Json::array();
        for (const auto& [col, val] : rep.first_entry_by_column)
            fe.push_back(Json::array({col, ipr::rational_to_string(val)}));
        j["first_entry_by_column"] = std::move(fe);
        if (rep.segmented) {
            Json seg;
            seg["structure_valid"] = rep.segmented->structure_valid;
            seg["violations"] = rep.segmented->violations;
            seg["first_entries_all"] = rep.segmented->first_entries_all;
            seg["monic_all"] = rep.segmented->monic_all;
            Json blocks = Json::array();
            for (const auto& b : rep.segmented->blocks) {
                blocks.push_back({{"nonzero_rows", b.nonzero_rows},
                                  {"empty", b.empty},
                                  {"first_entries", b.first_entries},
                                  {"monic", b.monic}});
            }
            seg["blocks"] = std::move(blocks);
            j["segmented"] = std::move(seg);
        } else {
            j["segmented"] = nullptr;
        }
        emit(c_opts, j);
    });

    // diag
    auto* diag = app.add_subcommand("diag", "block-diagonal sum of two matrices");
    static std::string d_left, d_right;
    static CommonOpts d_opts;
    diag->add_option("--left", d_left)->required();
    diag->add_option("--right", d_right)->required();
    add_common(diag, d_opts);
    diag->callback([&] {
        emit(d_opts, ipr::io::matrix_to_json(
                         ipr::diagonal_sum(load_matrix(d_left), load_matrix(d_right))));
    });

    // mt enum
    auto* mt = app.add_subcommand("mt", "Milliken-Taylor value sets");
    mt->require_subcommand(1);
    auto* mtenum = mt->add_subcommand("enum", "enumerate MT values");
    static std::string mt_coeffs, mt_terms;
    static CommonOpts mt_opts;
    mtenum->add_option("--coeffs", mt_coeffs, "compressed tuple, e.g. 1,2")->required();
    mtenum->add_option("--terms", mt_terms, "term sequence, e.g. 1,4,16")->required();
    add_common(mtenum, mt_opts);
    mtenum->callback([&] {
        auto res = ipr::mt_enumerate(ipr::CompressedTuple(ipr::parse_rational_list(mt_coeffs)),
                                     ipr::TermSequence(ipr::parse_rational_list(mt_terms)));
        Json values = Json::array();
        for (const auto& v : res.values) values.push_back(ipr::rational_to_string(v));
        Json j;
        j["values"] = std::move(values);
        j["multiplicity"] = res.multiplicity;
        if (mt_opts.out.empty()) {
            std::cout << j["values"].dump() << "\n";
            std::cerr << "multiplicity " << res.multiplicity << "\n";
        } else {
            emit(mt_opts, j);
        }
    });

    // dyadic phi | color
    auto* dyadic = app.add_subcommand("dyadic", "dyadic analytics");
    dyadic->require_subcommand(1);
    auto* dphi = dyadic->add_subcommand("phi", "even 0-block count");
    static std::string dy_value;
    dphi->add_option("value", dy_value, "dyadic rational p/q")->required();
    dphi->callback([&] {
        std::cout << ipr::Dyadic::from_rational(ipr::parse_rational(dy_value)).phi_even_zero_blocks()
                  << "\n";
    });
    auto* dcolor = dyadic->add_subcommand("color", "phi mod 3 class in (0,2)");
    static std::string dy_cvalue;
    dcolor->add_option("value", dy_cvalue)->required();
    dcolor->callback([&] {
        std::cout << ipr::dyadic_three_color(ipr::Dyadic::from_rational(ipr::parse_rational(dy_cvalue)))
                  << "\n";
    });

    // coloring validate | product
    auto* coloring = app.add_subcommand("coloring", "coloring tools");
    coloring->require_subcommand(1);
    auto* cval = coloring->add_subcommand("validate", "totality/palette/partition report");
    static std::string cv_file;
    static CommonOpts cv_opts;
    cval->add_option("--coloring", cv_file)->required();
    add_common(cval, cv_opts);
    cval->callback([&] {
        auto rep = load_coloring(cv_file).validate();
        Json j;
        j["valid"] = rep.valid;
        j["violations"] = rep.violations;
        j["class_sizes"] = rep.class_sizes;
        emit(cv_opts, j);
        if (!rep.valid) exit_code = kExitInvalid;
    });
    auto* cprod = coloring->add_subcommand("product", "signature product coloring");
    static std::string cp_base, cp_sub;
    static int cp_k = 1;
    static CommonOpts cp_opts;
    cprod->add_option("--base", cp_base)->required();
    cprod->add_option("-k", cp_k, "multiples 1..k")->required();
    cprod->add_option("--sub", cp_sub, "explicit sub-domain rule");
    add_common(cprod, cp_opts);
    cprod->callback([&] {
        std::optional<ipr::Grid> sub;
        if (!cp_sub.empty()) sub = ipr::Grid::from_rule(cp_sub);
        emit(cp_opts,
             ipr::io::coloring_to_json(ipr::product_coloring(load_coloring(cp_base), cp_k, sub)));
    });

    // search witness | avoid
    auto* search = app.add_subcommand("search", "exhaustive searches");
    search->require_subcommand(1);
    auto* switness = search->add_subcommand("witness", "monochromatic image witness");
    static std::string sw_matrix, sw_coloring, sw_grid, sw_epsilon;
    static CommonOpts sw_opts;
    switness->add_option("--matrix", sw_matrix)->required();
    switness->add_option("--coloring", sw_coloring)->required();
    switness->add_option("--grid", sw_grid, "variable grid rule; defaults to the coloring domain");
    switness->add_option("--epsilon", sw_epsilon, "image must lie in (0, epsilon)");
    add_common(switness, sw_opts);
    switness->callback([&] {
        ipr::SparseMatrix m = load_matrix(sw_matrix);
        ipr::Coloring col = load_coloring(sw_coloring);
        ipr::Grid grid = sw_grid.empty() ? col.domain() : ipr::Grid::from_rule(sw_grid);
        ipr::SearchBounds bounds = ipr::SearchBounds::uniform(grid, m.cols());
        bounds.node_budget = sw_opts.budget;
        if (!sw_epsilon.empty()) bounds.epsilon = ipr::parse_rational(sw_epsilon);
        auto res = ipr::find_witness(m, col, bounds, engine(sw_opts));
        if (res.status == ipr::SearchStatus::Found) {
            emit(sw_opts, ipr::io::certificate_to_json(*res.certificate));
        } else {
            Json j;
            j["result"] = ipr::search_status_name(res.status);
            j["exhausted"] = res.status == ipr::SearchStatus::NoneExhausted;
            emit(sw_opts, j);
            exit_code = res.status == ipr::SearchStatus::NoneExhausted ? kExitNone : kExitBudget;
        }
    });
    auto* savoid = search->add_subcommand("avoid", "avoiding coloring search");
    static std::string sa_matrix, sa_domain;
    static int sa_colors = 2;
    static CommonOpts sa_opts;
    savoid->add_option("--matrix", sa_matrix)->required();
    savoid->add_option("--colors", sa_colors)->required();
    savoid->add_option("--domain", sa_domain, "domain rule, e.g. int:1..4")->required();
    add_common(savoid, sa_opts);
    savoid->callback([&] {
        auto res = ipr::find_avoiding_coloring(load_matrix(sa_matrix), sa_colors,
                                               ipr::Grid::from_rule(sa_domain), sa_opts.budget,
                                               engine(sa_opts));
        if (res.status == ipr::SearchStatus::Found) {
            emit(sa_opts, ipr::io::certificate_to_json(*res.certificate));
        } else {
            Json j;
            j["result"] = ipr::search_status_name(res.status);
            j["exhausted"] = res.status == ipr::SearchStatus::NoneExhausted;
            emit(sa_opts, j);
            exit_code = res.status == ipr::SearchStatus::NoneExhausted ? kExitNone : kExitBudget;
        }
    });

    // bound compactness
    auto* bound = app.add_subcommand("bound", "finite bounds");
    bound->require_subcommand(1);
    auto* bcomp = bound->add_subcommand("compactness", "least N with no avoiding coloring");
    static std::string bc_matrix, bc_family;
    static int bc_colors = 2, bc_max = 10, bc_size = 2;
    static CommonOpts bc_opts;
    bcomp->add_option("--matrix", bc_matrix, "matrix JSON file");
    bcomp->add_option("--family", bc_family, "or a family name");
    bcomp->add_option("--size", bc_size, "family truncation size");
    bcomp->add_option("--colors", bc_colors)->required();
    bcomp->add_option("--max", bc_max, "largest N to try")->required();
    add_common(bcomp, bc_opts);
    bcomp->callback([&] {
        if (bc_matrix.empty() == bc_family.empty())
            throw ipr::Error(ipr::Errc::InvalidInput, "give exactly one of --matrix / --family");
        ipr::SparseMatrix m =
            bc_matrix.empty() ? ipr::build_family(bc_family, bc_size) : load_matrix(bc_matrix);
        auto res = ipr::compactness_bound(m, bc_colors, bc_max, bc_opts.budget, engine(bc_opts));
        if (res.outcome == ipr::BoundResult::Outcome::Resolved) {
            std::cout << res.n << "\n";
            if (!bc_opts.out.empty())
                ipr::io::write_file_atomic(bc_opts.out,
                                           ipr::io::dump(ipr::io::certificate_to_json(*res.certificate)));
        } else if (res.outcome == ipr::BoundResult::Outcome::Unresolved) {
            std::cout << "unresolved\n";
            exit_code = kExitNone;
        } else {
            exit_code = kExitBudget;
        }
    });

    // extend-row
    auto* extend = app.add_subcommand("extend-row", "first b keeping b*r over M bounded");
    static std::string er_matrix, er_row, er_cands;
    static int er_colors = 2, er_max = 6;
    static CommonOpts er_opts;
    extend->add_option("--matrix", er_matrix)->required();
    extend->add_option("--row", er_row, "rational vector, e.g. 1,-1")->required();
    extend->add_option("--candidates", er_cands, "candidate multipliers")->required();
    extend->add_option("--colors", er_colors)->required();
    extend->add_option("--max", er_max, "domain bound N")->required();
    add_common(extend, er_opts);
    extend->callback([&] {
        auto res = ipr::extend_with_row(load_matrix(er_matrix), ipr::parse_rational_list(er_row),
                                        ipr::parse_rational_list(er_cands), er_colors, er_max,
                                        er_opts.budget, engine(er_opts));
        Json j;
        j["b"] = res.b ? Json(ipr::rational_to_string(*res.b)) : Json(nullptr);
        Json tried = Json::array();
        for (const auto& t : res.tried) {
            Json tj;
            tj["b"] = ipr::rational_to_string(t.b);
            tj["resolved"] = t.bound.outcome == ipr::BoundResult::Outcome::Resolved;
            tj["N"] = t.bound.n;
            tried.push_back(std::move(tj));
        }
        j["tried"] = std::move(tried);
        emit(er_opts, j);
        if (!res.b) exit_code = kExitNone;
    });

    // separation depth
    auto* separation = app.add_subcommand("separation", "MT separation exploration");
    separation->require_subcommand(1);
    auto* sdepth = separation->add_subcommand("depth", "per-color monochromatic depth");
    static std::string sd_window, sd_ta, sd_tb;
    static int sd_maxlen = 2;
    static CommonOpts sd_opts;
    sdepth->add_option("--window", sd_window, "exponent window LO..HI")->required();
    sdepth->add_option("--maxlen", sd_maxlen)->required();
    sdepth->add_option("--tuple-a", sd_ta, "e.g. 1")->required();
    sdepth->add_option("--tuple-b", sd_tb, "e.g. 1,2")->required();
    add_common(sdepth, sd_opts);
    sdepth->callback([&] {
        size_t dots = sd_window.find("..");
        if (dots == std::string::npos)
            throw ipr::Error(ipr::Errc::InvalidInput, "window must look like -10..0");
        int lo = std::stoi(sd_window.substr(0, dots));
        int hi = std::stoi(sd_window.substr(dots + 2));
        auto report = ipr::separation_depth_search(
            lo, hi, sd_maxlen, ipr::CompressedTuple(ipr::parse_rational_list(sd_ta)),
            ipr::CompressedTuple(ipr::parse_rational_list(sd_tb)), sd_opts.budget, engine(sd_opts));
        emit(sd_opts, ipr::separation_report_to_json(report));
        for (const auto& c : report.colors) {
            if (!c.exhausted) exit_code = kExitBudget;
        }
    });

    // construct ex16 | ex17
    auto* construct = app.add_subcommand("construct", "worked example witnesses");
    construct->require_subcommand(1);
    auto* cex16 = construct->add_subcommand("ex16", "triangular family witness/obstruction");
    static std::string e16_y, e16_x, e16_bound;
    static CommonOpts e16_opts;
    cex16->add_option("--y", e16_y, "targets; produces the witness certificate");
    cex16->add_option("--x", e16_x, "vector for the obstruction index");
    cex16->add_option("--bound", e16_bound, "obstruction bound (default 1)");
    add_common(cex16, e16_opts);
    cex16->callback([&] {
        if (e16_y.empty() == e16_x.empty())
            throw ipr::Error(ipr::Errc::InvalidInput, "give exactly one of --y / --x");
        if (!e16_y.empty()) {
            auto y = ipr::parse_rational_list(e16_y);
            auto x = ipr::ex16_witness(y);
            ipr::Certificate cert;
            cert.kind = ipr::Certificate::Kind::Witness;
            cert.matrix = ipr::build_family("ex16", static_cast<int>(y.size()));
            cert.truncation = cert.matrix.truncation();
            cert.payload = ipr::WitnessPayload{x, y, std::nullopt};
            cert.engine_version = ipr::kEngineVersion;
            cert.seed = e16_opts.seed;
            emit(e16_opts, ipr::io::certificate_to_json(cert));
        } else {
            ipr::Rational bound = e16_bound.empty() ? ipr::Rational(1) : ipr::parse_rational(e16_bound);
            std::cout << ipr::ex16_obstruction(ipr::parse_rational_list(e16_x), bound) << "\n";
        }
    });
    auto* cex17 = construct->add_subcommand("ex17", "harmonic family witness");
    static std::string e17_y;
    static CommonOpts e17_opts;
    cex17->add_option("--y", e17_y, "targets")->required();
    add_common(cex17, e17_opts);
    cex17->callback([&] {
        auto y = ipr::parse_rational_list(e17_y);
        auto x = ipr::ex17_witness(y);
        ipr::Certificate cert;
        cert.kind = ipr::Certificate::Kind::Witness;
        cert.matrix = ipr::build_family("ex17", static_cast<int>(y.size()));
        cert.truncation = cert.matrix.truncation();
        cert.payload = ipr::WitnessPayload{x, y, std::nullopt};
        cert.engine_version = ipr::kEngineVersion;
        cert.seed = e17_opts.seed;
        emit(e17_opts, ipr::io::certificate_to_json(cert));
    });

    // pipeline extend
    auto* pipeline = app.add_subcommand("pipeline", "constructive proof pipelines");
    pipeline->require_subcommand(1);
    auto* pextend = pipeline->add_subcommand("extend", "finite + near-zero diagonal witness");
    static std::string pe_finite, pe_n, pe_coloring, pe_epsilon, pe_grid;
    static int pe_maxk = 16;
    static CommonOpts pe_opts;
    pextend->add_option("--finite", pe_finite, "finite matrix JSON")->required();
    pextend->add_option("--n-matrix", pe_n, "truncated matrix JSON (default identity 1)");
    pextend->add_option("--coloring", pe_coloring, "phi coloring JSON")->required();
    pextend->add_option("--epsilon", pe_epsilon)->required();
    pextend->add_option("--grid", pe_grid, "variable grid rule (default: coloring domain)");
    pextend->add_option("--max-k", pe_maxk, "cap for the compactness stage");
    add_common(pextend, pe_opts);
    pextend->callback([&] {
        ipr::SparseMatrix m = load_matrix(pe_finite);
        ipr::SparseMatrix n = pe_n.empty() ? ipr::build_family("identity", 1) : load_matrix(pe_n);
        ipr::Coloring phi = load_coloring(pe_coloring);
        ipr::Grid grid = pe_grid.empty() ? phi.domain() : ipr::Grid::from_rule(pe_grid);
        ipr::PipelineOptions options;
        options.max_k = pe_maxk;
        options.node_budget = pe_opts.budget;
        options.engine = engine(pe_opts);
        auto cert = ipr::extension_pipeline(m, n, phi, ipr::parse_rational(pe_epsilon), grid, options);
        emit(pe_opts, ipr::io::certificate_to_json(cert));
    });

    // segmented solve
    auto* segmented = app.add_subcommand("segmented", "segmented block solver");
    segmented->require_subcommand(1);
    auto* ssolve = segmented->add_subcommand("solve", "solve blocks against the FS oracle");
    static std::string ss_spec, ss_gens;
    static int ss_depth = 0;
    static CommonOpts ss_opts;
    ssolve->add_option("--spec", ss_spec, "segmented spec JSON")->required();
    ssolve->add_option("--generators", ss_gens, "base4:N or list:a,b,c")->required();
    ssolve->add_option("--depth", ss_depth)->required();
    add_common(ssolve, ss_opts);
    ssolve->callback([&] {
        ipr::SegmentedSpec spec = ipr::io::segmented_spec_from_json(ipr::io::parse_file(ss_spec));
        ipr::IpTailOracle oracle = [&]() {
            if (ss_gens.rfind("base4:", 0) == 0)
                return ipr::IpTailOracle::base4(std::stoi(ss_gens.substr(6)));
            if (ss_gens.rfind("list:", 0) == 0)
                return ipr::IpTailOracle(ipr::parse_rational_list(ss_gens.substr(5)));
            throw ipr::Error(ipr::Errc::InvalidInput, "generators must be base4:N or list:...");
        }();
        ipr::SegmentedOptions options;
        options.node_budget = ss_opts.budget;
        auto cert = ipr::segmented_solve(spec, std::move(oracle), ss_depth, options);
        emit(ss_opts, ipr::io::certificate_to_json(cert));
    });

    // verify
    auto* verify = app.add_subcommand("verify", "re-verify a certificate");
    static std::string v_file;
    static CommonOpts v_opts;
    verify->add_option("certificate", v_file, "certificate JSON file")->required();
    add_common(verify, v_opts);
    verify->callback([&] {
        auto cert = ipr::io::certificate_from_json(ipr::io::parse_file(v_file));
        auto rep = ipr::verify_certificate(cert);
        Json j;
        j["valid"] = rep.valid;
        j["kind"] = rep.kind;
        j["violations"] = rep.violations;
        emit(v_opts, j);
        if (!rep.valid) exit_code = kExitInvalid;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitInvalid;
    } catch (const ipr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ipr::Errc::BudgetExhausted ? kExitBudget : kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return exit_code;
}
