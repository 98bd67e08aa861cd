#pragma once

#include <stdexcept>
#include <string>

namespace ipr {

// Error codes shared across the library; each maps to one failure mode of a
// public operation.
enum class Errc {
    NotDyadic,
    NotPositive,
    EmptySupport,
    UnknownFamily,
    SizeTooLarge,
    AllZero,
    MissingBreakpoints,
    TupleTooLong,
    OutOfRange,
    DomainNotClosed,
    BudgetExhausted,
    ImageOutsideDomain,
    GrowthViolation,
    PremiseViolation,
    PrefixTooShort,
    NamedNoZ,
    UnresolvedBound,
    BlockUnsolvable,
    OracleExhausted,
    DisjointnessViolation,
    BlockFailure,
    MalformedCertificate,
    InvalidInput,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace ipr
