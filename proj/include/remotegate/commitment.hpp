#pragma once

#include "remotegate/rational.hpp"
#include "remotegate/sha256.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <span>

namespace remotegate {

using Nonce = std::array<std::uint8_t, 16>;

// Hash commitment: digest = SHA-256(value bytes || nonce). Binding and
// hiding within the simulator's hash model.
struct Commitment {
  Digest256 digest{};

  auto operator<=>(const Commitment&) const = default;
};

Commitment commit(std::span<const std::uint8_t> value, const Nonce& nonce);

// True iff SHA-256(value || nonce) equals the committed digest.
bool open(const Commitment& commitment, std::span<const std::uint8_t> value, const Nonce& nonce);

Commitment commit_rational(const Rational& value, const Nonce& nonce);
bool open_rational(const Commitment& commitment, const Rational& value, const Nonce& nonce);

}  // namespace remotegate
