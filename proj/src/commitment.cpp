#include "remotegate/commitment.hpp"

#include <vector>

namespace remotegate {

Commitment commit(std::span<const std::uint8_t> value, const Nonce& nonce) {
  std::vector<std::uint8_t> buf;
  buf.reserve(value.size() + nonce.size());
  buf.insert(buf.end(), value.begin(), value.end());
  buf.insert(buf.end(), nonce.begin(), nonce.end());
  return Commitment{sha256(buf)};
}

bool open(const Commitment& commitment, std::span<const std::uint8_t> value, const Nonce& nonce) {
  return commit(value, nonce).digest == commitment.digest;
}

Commitment commit_rational(const Rational& value, const Nonce& nonce) {
  const auto bytes = canonical_bytes(value);
  return commit(bytes, nonce);
}

bool open_rational(const Commitment& commitment, const Rational& value, const Nonce& nonce) {
  const auto bytes = canonical_bytes(value);
  return open(commitment, bytes, nonce);
}

}  // namespace remotegate
