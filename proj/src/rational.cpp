#include "remotegate/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>

namespace remotegate {
namespace {

std::vector<std::uint8_t> magnitude_bytes(const BigInt& value) {
  std::vector<std::uint8_t> out;
  BigInt v = value < 0 ? BigInt(-value) : value;
  if (v == 0) return out;
  export_bits(v, std::back_inserter(out), 8);
  return out;
}

void append_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

std::string rational_to_string(const Rational& value) {
  const BigInt num = numerator(value);
  const BigInt den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::optional<Rational> parse_rational(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (begin == end) return std::nullopt;
  const std::string body = text.substr(begin, end - begin);

  const auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };

  const std::size_t slash = body.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(body)) return std::nullopt;
      return Rational(BigInt(body));
    }
    const std::string num = body.substr(0, slash);
    const std::string den = body.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    BigInt d(den);
    if (d == 0) return std::nullopt;
    return Rational(BigInt(num), d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<std::uint8_t> canonical_bytes(const Rational& value) {
  std::vector<std::uint8_t> out;
  out.push_back(value < 0 ? 1 : 0);
  const auto num = magnitude_bytes(numerator(value));
  const auto den = magnitude_bytes(denominator(value));
  append_u32_be(out, static_cast<std::uint32_t>(num.size()));
  out.insert(out.end(), num.begin(), num.end());
  append_u32_be(out, static_cast<std::uint32_t>(den.size()));
  out.insert(out.end(), den.begin(), den.end());
  return out;
}

}  // namespace remotegate
