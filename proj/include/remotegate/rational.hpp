#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace remotegate {

using BigInt = boost::multiprecision::cpp_int;

// Exact money / probability arithmetic. All protocol bookkeeping stays
// rational so identities like the per-round reward halving hold exactly.
using Rational = boost::multiprecision::cpp_rational;

// Renders "7/2" or "3" (denominator 1 omitted).
std::string rational_to_string(const Rational& value);

// Accepts "7/2", "3", "-1/4" with optional surrounding whitespace.
std::optional<Rational> parse_rational(const std::string& text);

// Injective byte encoding: sign byte, then length-prefixed big-endian
// magnitude of numerator and denominator. Input to commitments.
std::vector<std::uint8_t> canonical_bytes(const Rational& value);

}  // namespace remotegate
