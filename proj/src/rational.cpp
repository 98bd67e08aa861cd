#include "ipr/rational.hpp"

#include "ipr/error.hpp"

#include <cctype>
#include <sstream>

namespace ipr {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotDyadic: return "NotDyadic";
        case Errc::NotPositive: return "NotPositive";
        case Errc::EmptySupport: return "EmptySupport";
        case Errc::UnknownFamily: return "UnknownFamily";
        case Errc::SizeTooLarge: return "SizeTooLarge";
        case Errc::AllZero: return "AllZero";
        case Errc::MissingBreakpoints: return "MissingBreakpoints";
        case Errc::TupleTooLong: return "TupleTooLong";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::DomainNotClosed: return "DomainNotClosed";
        case Errc::BudgetExhausted: return "BudgetExhausted";
        case Errc::ImageOutsideDomain: return "ImageOutsideDomain";
        case Errc::GrowthViolation: return "GrowthViolation";
        case Errc::PremiseViolation: return "PremiseViolation";
        case Errc::PrefixTooShort: return "PrefixTooShort";
        case Errc::NamedNoZ: return "NamedNoZ";
        case Errc::UnresolvedBound: return "UnresolvedBound";
        case Errc::BlockUnsolvable: return "BlockUnsolvable";
        case Errc::OracleExhausted: return "OracleExhausted";
        case Errc::DisjointnessViolation: return "DisjointnessViolation";
        case Errc::BlockFailure: return "BlockFailure";
        case Errc::MalformedCertificate: return "MalformedCertificate";
        case Errc::InvalidInput: return "InvalidInput";
    }
    return "UnknownError";
}

BigInt rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
BigInt rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

Rational pow2(long e) {
    BigInt p = BigInt(1) << static_cast<unsigned>(e < 0 ? -e : e);
    if (e >= 0) return Rational(p);
    return Rational(1, p);
}

namespace {

BigInt parse_integer(const std::string& s) {
    if (s.empty()) throw Error(Errc::InvalidInput, "empty integer literal");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw Error(Errc::InvalidInput, "sign without digits in '" + s + "'");
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw Error(Errc::InvalidInput, "bad digit in rational literal '" + s + "'");
    }
    return BigInt(s);
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) throw Error(Errc::InvalidInput, "empty rational literal");
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(s));
    BigInt num = parse_integer(s.substr(0, slash));
    BigInt den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw Error(Errc::InvalidInput, "zero denominator in '" + s + "'");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

std::string rational_to_string(const Rational& q) {
    std::ostringstream out;
    out << rat_num(q);
    if (rat_den(q) != 1) out << "/" << rat_den(q);
    return out.str();
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
    std::vector<Rational> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw Error(Errc::InvalidInput, "empty rational list");
    return out;
}

long ceil_log2(const Rational& q) {
    if (q <= 1) return 0;
    long k = 0;
    Rational p(1);
    while (p < q) {
        p *= 2;
        ++k;
    }
    return k;
}

}  // namespace ipr
