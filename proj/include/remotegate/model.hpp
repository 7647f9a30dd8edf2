#pragma once

#include "remotegate/errors.hpp"
#include "remotegate/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace remotegate {

// Simulated node identifier; stands in for an IP address.
struct Address {
  std::uint32_t value = 0;

  auto operator<=>(const Address&) const = default;
};

inline std::string to_string(Address a) { return std::to_string(a.value); }

enum class PacketKind : std::uint8_t {
  Data,
  Discover,
  GatewayResponse,
  EchoReply,
  Ping,
  Check,
  Verified,
  Init,
  Protocol,
};

const char* to_string(PacketKind kind);

enum class Label : std::uint8_t { Attack, Good };

inline const char* to_string(Label label) { return label == Label::Attack ? "ATTACK" : "GOOD"; }

struct Stamp {
  std::array<std::uint8_t, 16> bytes{};

  auto operator<=>(const Stamp&) const = default;
};

struct MessageBody;  // protocol message payloads, see messages.hpp

class World;
class GroundTruth;

constexpr int kDefaultTtl = 64;

struct Packet {
  std::uint64_t id = 0;
  Address src{};  // claimed source; spoofable
  Address dst{};
  int ttl = kDefaultTtl;
  PacketKind kind = PacketKind::Data;
  std::vector<std::uint32_t> features;
  std::string payload;
  std::optional<Stamp> stamp;
  std::uint64_t send_time = 0;
  std::shared_ptr<const MessageBody> body;

 private:
  // Simulator-only ground truth; actors must never read it. Set by
  // World::send, exposed only through GroundTruth.
  Address true_origin_{};
  friend class World;
  friend class GroundTruth;
};

struct LabeledPacket {
  Packet packet;
  Label label = Label::Good;
};

// Set of attack packets the server has collected, with the mean gap
// between consecutive send times.
struct AttackSet {
  std::vector<Packet> packets;
  Rational delta{0};

  static AttackSet from_packets(std::vector<Packet> packets);

  bool empty() const { return packets.empty(); }
};

struct Dataset {
  std::vector<LabeledPacket> examples;
  int round = 1;

  bool contains_label(Label label) const;
};

constexpr int kDefaultFeatureDim = 8;
constexpr int kDefaultFeatureBuckets = 16;

// Hash-bucketed byte trigrams: each trigram lands in one of `dim` slots;
// a slot's value is its trigram count saturated at buckets-1. Pure and
// deterministic; empty or sub-trigram payloads map to the zero vector.
std::vector<std::uint32_t> extract_features(const std::string& raw, int dim,
                                            int buckets = kDefaultFeatureBuckets);

// Draws a train and a test set from the shared pools, consuming the drawn
// examples (sampling without replacement; repeated calls on the same pools
// keep rounds disjoint). Each slot is filled by a fair coin flip between
// the attack and good pool; the last slot is forced if a set would
// otherwise miss one of the labels. Throws Errc::pool_exhausted when a
// pool cannot supply a draw.
std::pair<Dataset, Dataset> build_round_datasets(std::vector<LabeledPacket>& pool_attack,
                                                 std::vector<LabeledPacket>& pool_good, int n_train,
                                                 int n_test, std::uint64_t rng_seed, int round = 1);

}  // namespace remotegate
