#pragma once

#include "remotegate/netsim.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace remotegate {

struct GatewayInfo {
  Address gateway{};
  std::uint64_t latency = 0;  // measured round-trip steps
  std::set<Address> managed_range;
};

// Discovered gateways, sorted by latency ascending. The protocol engages
// them farthest first.
class GatewayList {
 public:
  // Keeps the minimum latency when the same gateway responds twice.
  void insert(GatewayInfo info);

  const std::vector<GatewayInfo>& entries() const { return entries_; }
  std::vector<GatewayInfo> farthest_first() const;
  bool contains(Address gateway) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<GatewayInfo> entries_;
};

std::uint64_t default_probe_timeout(const World& world, int ttl_max);

// Traceroute-style probing toward the apparent attack source: DISCOVER
// packets with TTL 1..ttl_max, collecting GATEWAY-RESPONSE replies whose
// advertised range contains the source. A silent hop advances to the next
// TTL after the per-probe timeout; an ECHO-REPLY ends probing early.
class DiscoverySession {
 public:
  DiscoverySession(Address server, Address source, int ttl_max, std::uint64_t probe_timeout);

  void begin(World& world);
  void on_packet(World& world, const Packet& packet);
  void on_step(World& world);

  bool done() const { return done_; }
  const GatewayList& result() const { return list_; }

 private:
  void advance(World& world);

  Address server_{};
  Address source_{};
  int ttl_max_ = 0;
  std::uint64_t probe_timeout_ = 0;
  int current_ttl_ = 0;
  std::uint64_t probe_sent_at_ = 0;
  std::uint64_t probe_deadline_ = 0;
  bool done_ = false;
  GatewayList list_;
};

// Runs a discovery session to completion by stepping the world; for tests
// and oracles that do not need the full actor loop.
GatewayList run_gateway_discovery(World& world, Address server, Address source, int ttl_max);

}  // namespace remotegate
