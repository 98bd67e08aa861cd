#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;

namespace {

// Complex artifacts cross the boundary as canonical JSON strings; scalars as
// "p/q" literals. Keeps the python surface thin and diff-friendly.

std::vector<ipr::Rational> parse_list(const std::vector<std::string>& items) {
    std::vector<ipr::Rational> out;
    out.reserve(items.size());
    for (const auto& s : items) out.push_back(ipr::parse_rational(s));
    return out;
}

std::vector<std::string> format_list(const std::vector<ipr::Rational>& values) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(ipr::rational_to_string(v));
    return out;
}

std::string dump(const ipr::io::Json& j) { return ipr::io::dump(j); }

ipr::SparseMatrix matrix_of(const std::string& json_text) {
    return ipr::io::matrix_from_json(ipr::io::Json::parse(json_text));
}

ipr::Coloring coloring_of(const std::string& json_text) {
    return ipr::io::coloring_from_json(ipr::io::Json::parse(json_text));
}

ipr::EngineConfig engine(int workers, std::uint64_t seed) { return {workers, seed}; }

}  // namespace

PYBIND11_MODULE(_ipr, m) {
    m.doc() = "exact-arithmetic image partition regularity laboratory";
    m.attr("__version__") = ipr::kEngineVersion;

    py::register_exception<ipr::Error>(m, "IprError");

    m.def("phi", [](const std::string& value) {
        return ipr::Dyadic::from_rational(ipr::parse_rational(value)).phi_even_zero_blocks();
    }, py::arg("value"), "even 0-block count of a positive dyadic");

    m.def("dyadic_color", [](const std::string& value) {
        return ipr::dyadic_three_color(ipr::Dyadic::from_rational(ipr::parse_rational(value)));
    }, py::arg("value"), "phi mod 3 class for values in (0,2)");

    m.def("dyadic_support", [](const std::string& value) {
        return ipr::Dyadic::from_rational(ipr::parse_rational(value)).support();
    }, py::arg("value"));

    m.def("build_family", [](const std::string& family, int size, const std::vector<std::string>& params) {
        return dump(ipr::io::matrix_to_json(ipr::build_family(family, size, parse_list(params))));
    }, py::arg("family"), py::arg("size"), py::arg("params") = std::vector<std::string>{});

    m.def("classify", [](const std::string& matrix_json, const std::vector<int>& breakpoints) {
        std::optional<std::vector<int>> bp;
        if (!breakpoints.empty()) bp = breakpoints;
        auto rep = ipr::classify_matrix(matrix_of(matrix_json), bp);
        ipr::io::Json j;
        j["first_entries"] = rep.first_entries;
        j["monic"] = rep.monic;
        return dump(j);
    }, py::arg("matrix_json"), py::arg("breakpoints") = std::vector<int>{});

    m.def("diagonal_sum", [](const std::string& left, const std::string& right) {
        return dump(ipr::io::matrix_to_json(ipr::diagonal_sum(matrix_of(left), matrix_of(right))));
    });

    m.def("mt_enumerate", [](const std::vector<std::string>& coeffs, const std::vector<std::string>& terms) {
        auto res = ipr::mt_enumerate(ipr::CompressedTuple(parse_list(coeffs)),
                                     ipr::TermSequence(parse_list(terms)));
        return py::make_tuple(format_list(res.values), res.multiplicity);
    }, py::arg("coeffs"), py::arg("terms"), "sorted MT values and the block-pattern count");

    m.def("find_witness", [](const std::string& matrix_json, const std::string& coloring_json,
                             const std::string& grid_rule, const std::string& epsilon,
                             int workers, std::uint64_t budget) {
        ipr::SparseMatrix mat = matrix_of(matrix_json);
        ipr::Coloring col = coloring_of(coloring_json);
        ipr::Grid grid = grid_rule.empty() ? col.domain() : ipr::Grid::from_rule(grid_rule);
        ipr::SearchBounds bounds = ipr::SearchBounds::uniform(grid, mat.cols());
        bounds.node_budget = budget;
        if (!epsilon.empty()) bounds.epsilon = ipr::parse_rational(epsilon);
        auto res = ipr::find_witness(mat, col, bounds, engine(workers, 0));
        std::string cert = res.certificate ? dump(ipr::io::certificate_to_json(*res.certificate)) : "";
        return py::make_tuple(ipr::search_status_name(res.status), cert);
    }, py::arg("matrix_json"), py::arg("coloring_json"), py::arg("grid_rule") = "",
       py::arg("epsilon") = "", py::arg("workers") = 1,
       py::arg("budget") = ipr::kDefaultNodeBudget);

    m.def("find_avoiding_coloring", [](const std::string& matrix_json, int r,
                                       const std::string& domain_rule, int workers,
                                       std::uint64_t budget) {
        auto res = ipr::find_avoiding_coloring(matrix_of(matrix_json), r,
                                               ipr::Grid::from_rule(domain_rule), budget,
                                               engine(workers, 0));
        std::string cert = res.certificate ? dump(ipr::io::certificate_to_json(*res.certificate)) : "";
        return py::make_tuple(ipr::search_status_name(res.status), cert);
    }, py::arg("matrix_json"), py::arg("r"), py::arg("domain_rule"), py::arg("workers") = 1,
       py::arg("budget") = ipr::kDefaultNodeBudget);

    m.def("compactness_bound", [](const std::string& matrix_json, int r, int max_n, int workers) {
        auto res = ipr::compactness_bound(matrix_of(matrix_json), r, max_n, ipr::kDefaultNodeBudget,
                                          engine(workers, 0));
        std::string cert = res.certificate ? dump(ipr::io::certificate_to_json(*res.certificate)) : "";
        const char* outcome = res.outcome == ipr::BoundResult::Outcome::Resolved ? "resolved"
                              : res.outcome == ipr::BoundResult::Outcome::Unresolved ? "unresolved"
                                                                                     : "budget_exhausted";
        return py::make_tuple(outcome, res.n, cert);
    }, py::arg("matrix_json"), py::arg("r"), py::arg("max_n"), py::arg("workers") = 1);

    m.def("separation_depth", [](int window_lo, int window_hi, int maxlen,
                                 const std::vector<std::string>& tuple_a,
                                 const std::vector<std::string>& tuple_b, int workers) {
        auto report = ipr::separation_depth_search(window_lo, window_hi, maxlen,
                                                   ipr::CompressedTuple(parse_list(tuple_a)),
                                                   ipr::CompressedTuple(parse_list(tuple_b)),
                                                   ipr::kDefaultNodeBudget, engine(workers, 0));
        return ipr::separation_report_to_json(report).dump(2) + "\n";
    }, py::arg("window_lo"), py::arg("window_hi"), py::arg("maxlen"), py::arg("tuple_a"),
       py::arg("tuple_b"), py::arg("workers") = 1);

    m.def("ex16_witness", [](const std::vector<std::string>& y) {
        return format_list(ipr::ex16_witness(parse_list(y)));
    });
    m.def("ex16_obstruction", [](const std::vector<std::string>& x, const std::string& bound) {
        return ipr::ex16_obstruction(parse_list(x), ipr::parse_rational(bound));
    }, py::arg("x"), py::arg("bound") = "1");
    m.def("ex17_witness", [](const std::vector<std::string>& y) {
        return format_list(ipr::ex17_witness(parse_list(y)));
    });

    m.def("extension_pipeline", [](const std::string& m_json, const std::string& n_json,
                                   const std::string& phi_json, const std::string& epsilon,
                                   int workers) {
        ipr::PipelineOptions options;
        options.engine = engine(workers, 0);
        ipr::Coloring phi = coloring_of(phi_json);
        auto cert = ipr::extension_pipeline(matrix_of(m_json), matrix_of(n_json), phi,
                                            ipr::parse_rational(epsilon), phi.domain(), options);
        return dump(ipr::io::certificate_to_json(cert));
    }, py::arg("m_json"), py::arg("n_json"), py::arg("phi_json"), py::arg("epsilon"),
       py::arg("workers") = 1);

    m.def("segmented_solve", [](const std::string& spec_json, int base4_generators, int depth) {
        auto spec = ipr::io::segmented_spec_from_json(ipr::io::Json::parse(spec_json));
        auto cert = ipr::segmented_solve(spec, ipr::IpTailOracle::base4(base4_generators), depth);
        return dump(ipr::io::certificate_to_json(cert));
    }, py::arg("spec_json"), py::arg("base4_generators"), py::arg("depth"));

    m.def("segmented_spec_from_blocks", [](const std::vector<std::string>& block_jsons) {
        std::vector<ipr::SparseMatrix> blocks;
        for (const auto& b : block_jsons) blocks.push_back(matrix_of(b));
        return dump(ipr::io::segmented_spec_to_json(ipr::SegmentedSpec::from_diagonal_blocks(blocks)));
    });

    m.def("verify", [](const std::string& certificate_json) {
        auto cert = ipr::io::certificate_from_json(ipr::io::Json::parse(certificate_json));
        auto rep = ipr::verify_certificate(cert);
        return py::make_tuple(rep.valid, rep.violations);
    }, py::arg("certificate_json"));
}
