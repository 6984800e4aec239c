#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ratseq {

// Exact arithmetic types. Denominators grow like q^|w| when valuating digit
// words, so fixed-width integers are not an option anywhere in the core.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Domain error: invalid input, broken invariant, inconsistent data.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

}  // namespace ratseq
