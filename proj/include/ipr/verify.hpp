#pragma once

#include "ipr/certificate.hpp"
#include "ipr/dyadic.hpp"

#include <string>
#include <vector>

namespace ipr {

// Naive phi: renders the explicit bit string between start and end and scans
// zero runs. Deliberately a second implementation; the verifier and the
// acceptance checks rely on it instead of the support-gap arithmetic.
int phi_even_zero_blocks_by_scan(const Dyadic& x);

struct VerifyReport {
    bool valid = true;
    std::string kind;
    std::vector<std::string> violations;
};

// Re-derives every claim in the certificate from its embedded data. Shares no
// search code: plain re-multiplication, odometer rescans, and an independent
// coloring enumeration for bounds.
VerifyReport verify_certificate(const Certificate& cert);

}  // namespace ipr
