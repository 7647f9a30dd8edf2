#include "remotegate/model.hpp"

#include "remotegate/rng.hpp"

#include <algorithm>

namespace remotegate {

const char* to_string(PacketKind kind) {
  switch (kind) {
    case PacketKind::Data: return "DATA";
    case PacketKind::Discover: return "DISCOVER";
    case PacketKind::GatewayResponse: return "GATEWAY-RESPONSE";
    case PacketKind::EchoReply: return "ECHO-REPLY";
    case PacketKind::Ping: return "PING";
    case PacketKind::Check: return "CHECK";
    case PacketKind::Verified: return "VERIFIED";
    case PacketKind::Init: return "INIT";
    case PacketKind::Protocol: return "PROTOCOL";
  }
  return "?";
}

AttackSet AttackSet::from_packets(std::vector<Packet> packets) {
  AttackSet set;
  set.packets = std::move(packets);
  if (set.packets.size() >= 2) {
    Rational sum{0};
    for (std::size_t i = 1; i < set.packets.size(); ++i) {
      sum += Rational(set.packets[i].send_time) - Rational(set.packets[i - 1].send_time);
    }
    set.delta = sum / Rational(static_cast<std::uint64_t>(set.packets.size() - 1));
  }
  return set;
}

bool Dataset::contains_label(Label label) const {
  return std::any_of(examples.begin(), examples.end(),
                     [label](const LabeledPacket& e) { return e.label == label; });
}

namespace {

constexpr std::uint64_t kFnvBasis = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a64(const char* data, std::size_t n) {
  std::uint64_t h = kFnvBasis;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<std::uint8_t>(data[i]);
    h *= kFnvPrime;
  }
  return h;
}

LabeledPacket take_at(std::vector<LabeledPacket>& pool, std::size_t index) {
  LabeledPacket out = std::move(pool[index]);
  pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(index));
  return out;
}

Dataset draw_set(std::vector<LabeledPacket>& pool_attack, std::vector<LabeledPacket>& pool_good,
                 int n, int round, SplitMix64& rng) {
  std::vector<bool> heads(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) heads[static_cast<std::size_t>(i)] = rng.coin();
  // Keep the invariant that every dataset mixes both labels.
  if (std::none_of(heads.begin(), heads.end(), [](bool h) { return h; })) heads.back() = true;
  if (std::all_of(heads.begin(), heads.end(), [](bool h) { return h; })) heads.back() = false;

  Dataset out;
  out.round = round;
  out.examples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& pool = heads[static_cast<std::size_t>(i)] ? pool_attack : pool_good;
    if (pool.empty()) {
      fail(Errc::pool_exhausted, heads[static_cast<std::size_t>(i)]
                                     ? "attack pool exhausted during dataset draw"
                                     : "good pool exhausted during dataset draw");
    }
    out.examples.push_back(take_at(pool, rng.below(pool.size())));
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> extract_features(const std::string& raw, int dim, int buckets) {
  if (dim < 1) fail(Errc::invalid_argument, "feature dimension must be >= 1");
  if (buckets < 2) fail(Errc::invalid_argument, "feature bucket count must be >= 2");
  std::vector<std::uint32_t> counts(static_cast<std::size_t>(dim), 0);
  if (raw.size() >= 3) {
    for (std::size_t i = 0; i + 3 <= raw.size(); ++i) {
      const std::uint64_t h = fnv1a64(raw.data() + i, 3);
      counts[static_cast<std::size_t>(h % static_cast<std::uint64_t>(dim))]++;
    }
  }
  const auto cap = static_cast<std::uint32_t>(buckets - 1);
  for (auto& c : counts) c = std::min(c, cap);
  return counts;
}

std::pair<Dataset, Dataset> build_round_datasets(std::vector<LabeledPacket>& pool_attack,
                                                 std::vector<LabeledPacket>& pool_good, int n_train,
                                                 int n_test, std::uint64_t rng_seed, int round) {
  if (n_train < 2 || n_test < 2) fail(Errc::invalid_argument, "n_train and n_test must be >= 2");
  SplitMix64 rng(rng_seed);
  Dataset train = draw_set(pool_attack, pool_good, n_train, round, rng);
  Dataset test = draw_set(pool_attack, pool_good, n_test, round, rng);
  return {std::move(train), std::move(test)};
}

}  // namespace remotegate
