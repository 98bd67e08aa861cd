#pragma once

#include "ipr/certificate.hpp"
#include "ipr/coloring.hpp"
#include "ipr/grid.hpp"
#include "ipr/matrix.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

// Canonical JSON forms. Key order is fixed (ordered_json) and rationals are
// "p/q" strings, so equal artifacts serialize to identical bytes.
namespace ipr::io {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const SparseMatrix& m);
SparseMatrix matrix_from_json(const Json& j);

Json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const Json& j);

Json segmented_spec_to_json(const SegmentedSpec& spec);
SegmentedSpec segmented_spec_from_json(const Json& j);

Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

std::string dump(const Json& j);

// Writes via a temp file and rename; no partial artifacts on failure.
void write_file_atomic(const std::string& path, const std::string& contents);

Json parse_file(const std::string& path);

}  // namespace ipr::io
