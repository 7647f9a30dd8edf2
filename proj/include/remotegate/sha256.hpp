#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace remotegate {

using Digest256 = std::array<std::uint8_t, 32>;

// FIPS 180-4 SHA-256. Self-contained so digests (commitments, log digests)
// are bit-stable everywhere the simulator runs.
Digest256 sha256(std::span<const std::uint8_t> data);

Digest256 sha256(const std::string& data);

std::string hex(std::span<const std::uint8_t> bytes);

// Leading 8 bytes as hex; used for compact event-log digests.
std::string short_hex(const Digest256& digest);

}  // namespace remotegate
