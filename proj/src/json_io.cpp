#include "ipr/json_io.hpp"

#include "ipr/error.hpp"
#include "ipr/version.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ipr::io {

namespace {

std::string rs(const Rational& q) { return rational_to_string(q); }

Rational rq(const Json& j) {
    if (!j.is_string()) throw Error(Errc::MalformedCertificate, "rational fields are strings");
    return parse_rational(j.get<std::string>());
}

Json rationals_to_json(const std::vector<Rational>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(rs(v));
    return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
    std::vector<Rational> out;
    for (const auto& item : j) out.push_back(rq(item));
    return out;
}

const Json& require(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw Error(Errc::MalformedCertificate, std::string("missing field '") + key + "'");
    return *it;
}

}  // namespace

const char* kind_name_internal(Certificate::Kind k) {
    switch (k) {
        case Certificate::Kind::Witness: return "witness";
        case Certificate::Kind::Refutation: return "refutation";
        case Certificate::Kind::Bound: return "bound";
        case Certificate::Kind::Segmented: return "segmented";
        case Certificate::Kind::Stacked: return "stacked";
    }
    return "unknown";
}

Json matrix_to_json(const SparseMatrix& m) {
    Json j;
    j["shape"] = {{"kind", m.kind() == SparseMatrix::Kind::Finite ? "finite" : "omega_truncated"},
                  {"rows", m.rows()},
                  {"cols", m.cols()}};
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (const auto& [col, val] : m.row(i)) row.push_back(Json::array({col, rs(val)}));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["family"] = m.family() ? Json(*m.family()) : Json(nullptr);
    j["truncation"] = m.truncation() ? Json(*m.truncation()) : Json(nullptr);
    return j;
}

SparseMatrix matrix_from_json(const Json& j) {
    const Json& shape = require(j, "shape");
    std::string kind = require(shape, "kind").get<std::string>();
    SparseMatrix::Kind k;
    if (kind == "finite") {
        k = SparseMatrix::Kind::Finite;
    } else if (kind == "omega_truncated") {
        k = SparseMatrix::Kind::OmegaTruncated;
    } else {
        throw Error(Errc::MalformedCertificate, "unknown matrix kind '" + kind + "'");
    }
    SparseMatrix m(k, require(shape, "cols").get<int>());
    for (const auto& row : require(j, "rows")) {
        SparseMatrix::Row r;
        for (const auto& entry : row) {
            if (!entry.is_array() || entry.size() != 2)
                throw Error(Errc::MalformedCertificate, "matrix entries are [col, value] pairs");
            r.emplace_back(entry[0].get<int>(), rq(entry[1]));
        }
        m.append_row(std::move(r));
    }
    if (m.rows() != require(shape, "rows").get<int>())
        throw Error(Errc::MalformedCertificate, "declared row count does not match");
    if (j.contains("family") && !j["family"].is_null()) m.set_family(j["family"].get<std::string>());
    if (j.contains("truncation") && !j["truncation"].is_null())
        m.set_truncation(j["truncation"].get<int>());
    return m;
}

Json coloring_to_json(const Coloring& c) {
    Json j;
    switch (c.kind()) {
        case Coloring::Kind::Table: j["kind"] = "table"; break;
        case Coloring::Kind::Interval: j["kind"] = "interval"; break;
        case Coloring::Kind::DyadicPhi: j["kind"] = "dyadic-phi"; break;
        case Coloring::Kind::Product: j["kind"] = "product"; break;
    }
    j["domain_rule"] = c.domain().rule;
    j["r"] = c.r();
    if (c.kind() == Coloring::Kind::Table || c.kind() == Coloring::Kind::Product) {
        Json assignment = Json::array();
        for (const auto& [v, color] : c.assignment())
            assignment.push_back(Json::array({rs(v), color}));
        j["assignment"] = std::move(assignment);
    }
    if (c.kind() == Coloring::Kind::Interval) j["cuts"] = rationals_to_json(c.cuts());
    if (c.kind() == Coloring::Kind::Product) {
        j["base"] = coloring_to_json(*c.product_base());
        j["k"] = c.product_k();
    }
    return j;
}

Coloring coloring_from_json(const Json& j) {
    std::string kind = require(j, "kind").get<std::string>();
    Grid domain = Grid::from_rule(require(j, "domain_rule").get<std::string>());
    if (kind == "dyadic-phi") return Coloring::dyadic_phi(std::move(domain));
    if (kind == "interval") return Coloring::interval(std::move(domain), rationals_from_json(require(j, "cuts")));
    if (kind == "product") {
        // rebuilt from base and k; the stored assignment is for external readers
        Coloring base = coloring_from_json(require(j, "base"));
        return product_coloring(base, require(j, "k").get<int>(), std::move(domain));
    }
    if (kind == "table") {
        std::map<Rational, int> assignment;
        for (const auto& pair : require(j, "assignment")) {
            if (!pair.is_array() || pair.size() != 2)
                throw Error(Errc::MalformedCertificate, "assignments are [value, color] pairs");
            assignment.emplace(rq(pair[0]), pair[1].get<int>());
        }
        return Coloring::table(std::move(domain), require(j, "r").get<int>(), std::move(assignment));
    }
    throw Error(Errc::MalformedCertificate, "unknown coloring kind '" + kind + "'");
}

Json segmented_spec_to_json(const SegmentedSpec& spec) {
    Json j;
    j["breakpoints"] = spec.breakpoints;
    Json slices = Json::array();
    for (const auto& s : spec.slices) slices.push_back(matrix_to_json(s));
    j["slices"] = std::move(slices);
    return j;
}

SegmentedSpec segmented_spec_from_json(const Json& j) {
    std::vector<int> bp = require(j, "breakpoints").get<std::vector<int>>();
    std::vector<SparseMatrix> slices;
    for (const auto& s : require(j, "slices")) slices.push_back(matrix_from_json(s));
    if (slices.empty()) throw Error(Errc::MalformedCertificate, "segmented spec has no slices");
    SegmentedSpec spec;
    spec.breakpoints = std::move(bp);
    spec.slices = std::move(slices);
    if (spec.breakpoints.size() != spec.slices.size() + 1)
        throw Error(Errc::MalformedCertificate, "breakpoints do not match slice count");
    return spec;
}

Json certificate_to_json(const Certificate& cert) {
    Json j;
    j["kind"] = kind_name_internal(cert.kind);
    j["matrix"] = matrix_to_json(cert.matrix);
    j["coloring"] = cert.coloring ? coloring_to_json(*cert.coloring) : Json(nullptr);
    j["truncation"] = cert.truncation ? Json(*cert.truncation) : Json(nullptr);

    Json payload;
    if (const auto* w = std::get_if<WitnessPayload>(&cert.payload)) {
        payload["x"] = rationals_to_json(w->x);
        payload["image"] = rationals_to_json(w->image);
        payload["color"] = w->color ? Json(*w->color) : Json(nullptr);
    } else if (const auto* rf = std::get_if<RefutationPayload>(&cert.payload)) {
        payload["r"] = rf->r;
        payload["domain_rule"] = rf->domain_rule;
    } else if (const auto* b = std::get_if<BoundPayload>(&cert.payload)) {
        payload["N"] = b->n;
        payload["r"] = b->r;
        payload["refutation_below"] =
            b->refutation_below ? coloring_to_json(*b->refutation_below) : Json(nullptr);
    } else if (const auto* s = std::get_if<SegmentedPayload>(&cert.payload)) {
        payload["spec"] = segmented_spec_to_json(s->spec);
        payload["generators"] = rationals_to_json(s->generators);
        payload["tail_start"] = s->tail_start;
        payload["depth"] = s->depth;
        payload["x"] = rationals_to_json(s->x);
        payload["image"] = rationals_to_json(s->image);
    } else if (const auto* st = std::get_if<StackedPayload>(&cert.payload)) {
        Json blocks = Json::array();
        for (const auto& b : st->blocks) blocks.push_back(matrix_to_json(b));
        payload["blocks"] = std::move(blocks);
        Json targets = Json::array();
        for (const auto& t : st->target_generators) targets.push_back(rationals_to_json(t));
        payload["target_generators"] = std::move(targets);
        Json xs = Json::array();
        for (const auto& x : st->x_blocks) xs.push_back(rationals_to_json(x));
        payload["x_blocks"] = std::move(xs);
        payload["image"] = rationals_to_json(st->image);
    }
    j["payload"] = std::move(payload);
    j["epsilon"] = cert.epsilon ? Json(rs(*cert.epsilon)) : Json(nullptr);
    j["exhausted"] = cert.exhausted;
    j["engine"] = {{"version", cert.engine_version}, {"seed", cert.seed}};
    return j;
}

Certificate certificate_from_json(const Json& j) {
    Certificate cert;
    std::string kind = require(j, "kind").get<std::string>();
    cert.matrix = matrix_from_json(require(j, "matrix"));
    if (j.contains("coloring") && !j["coloring"].is_null())
        cert.coloring = coloring_from_json(j["coloring"]);
    if (j.contains("truncation") && !j["truncation"].is_null())
        cert.truncation = j["truncation"].get<int>();
    const Json& payload = require(j, "payload");
    if (kind == "witness") {
        cert.kind = Certificate::Kind::Witness;
        WitnessPayload w;
        w.x = rationals_from_json(require(payload, "x"));
        w.image = rationals_from_json(require(payload, "image"));
        if (payload.contains("color") && !payload["color"].is_null())
            w.color = payload["color"].get<int>();
        cert.payload = std::move(w);
    } else if (kind == "refutation") {
        cert.kind = Certificate::Kind::Refutation;
        RefutationPayload rf;
        rf.r = require(payload, "r").get<int>();
        rf.domain_rule = require(payload, "domain_rule").get<std::string>();
        cert.payload = std::move(rf);
    } else if (kind == "bound") {
        cert.kind = Certificate::Kind::Bound;
        BoundPayload b;
        b.n = require(payload, "N").get<int>();
        b.r = require(payload, "r").get<int>();
        if (payload.contains("refutation_below") && !payload["refutation_below"].is_null())
            b.refutation_below = coloring_from_json(payload["refutation_below"]);
        cert.payload = std::move(b);
    } else if (kind == "segmented") {
        cert.kind = Certificate::Kind::Segmented;
        SegmentedPayload s;
        s.spec = segmented_spec_from_json(require(payload, "spec"));
        s.generators = rationals_from_json(require(payload, "generators"));
        s.tail_start = require(payload, "tail_start").get<size_t>();
        s.depth = require(payload, "depth").get<int>();
        s.x = rationals_from_json(require(payload, "x"));
        s.image = rationals_from_json(require(payload, "image"));
        cert.payload = std::move(s);
    } else if (kind == "stacked") {
        cert.kind = Certificate::Kind::Stacked;
        StackedPayload st;
        for (const auto& b : require(payload, "blocks")) st.blocks.push_back(matrix_from_json(b));
        for (const auto& t : require(payload, "target_generators"))
            st.target_generators.push_back(rationals_from_json(t));
        for (const auto& x : require(payload, "x_blocks"))
            st.x_blocks.push_back(rationals_from_json(x));
        st.image = rationals_from_json(require(payload, "image"));
        cert.payload = std::move(st);
    } else {
        throw Error(Errc::MalformedCertificate, "unknown certificate kind '" + kind + "'");
    }
    if (j.contains("epsilon") && !j["epsilon"].is_null()) cert.epsilon = rq(j["epsilon"]);
    cert.exhausted = j.value("exhausted", false);
    if (j.contains("engine")) {
        cert.engine_version = j["engine"].value("version", std::string(kEngineVersion));
        cert.seed = j["engine"].value("seed", std::uint64_t{0});
    }
    return cert;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file_atomic(const std::string& path, const std::string& contents) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::InvalidInput, "cannot open '" + tmp + "' for writing");
        out << contents;
        if (!out.good()) throw Error(Errc::InvalidInput, "write failed for '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error(Errc::InvalidInput, "rename failed for '" + path + "'");
    }
}

Json parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::InvalidInput, "cannot read '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(Errc::MalformedCertificate, std::string("json parse error: ") + e.what());
    }
    return j;
}

}  // namespace ipr::io

namespace ipr {

const char* certificate_kind_name(Certificate::Kind k) { return io::kind_name_internal(k); }

}  // namespace ipr
