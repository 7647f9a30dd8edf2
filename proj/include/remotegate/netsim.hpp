#pragma once

#include "remotegate/messages.hpp"
#include "remotegate/model.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace remotegate {

enum class NodeKind : std::uint8_t { Server, Gateway, Router, Client, Attacker };

const char* to_string(NodeKind kind);

struct Node {
  Address address{};
  NodeKind kind = NodeKind::Router;
  // Addresses for which this node is the sole entry-exit point.
  std::optional<std::set<Address>> managed_range;
  // Range a lying router advertises in GATEWAY-RESPONSE instead of the
  // real one (discovery cannot tell; spoof check catches it later).
  std::optional<std::set<Address>> claimed_range_override;
};

struct Link {
  Address a{};
  Address b{};
  int latency = 1;
};

struct AttackerProfile {
  Address source{};
  Address target{};
  std::uint64_t delta = 1;  // inter-packet interval in steps
  std::string pattern;
  std::optional<Address> spoof_as;
  std::uint64_t start_step = 0;
  std::optional<std::uint64_t> stop_step;                          // emission stops at this step
  std::optional<std::pair<std::uint64_t, std::uint64_t>> pause_window;  // [begin, end)
};

struct Delivery {
  Address at{};
  Packet packet;
};

enum class SimEventKind : std::uint8_t { Send, Deliver, TtlExpire, Filtered, ActorNote };

struct SimEvent {
  std::uint64_t step = 0;
  Address actor{};
  SimEventKind kind = SimEventKind::Send;
  PacketKind packet_kind = PacketKind::Data;
  std::uint64_t packet_id = 0;
  Address src{};
  Address dst{};
  bool attack_payload = false;
  std::string note;
  std::string digest;

  std::string render() const;
};

// Read-only view of simulator ground truth; handed to the auditor and the
// report builder, never to actors.
class GroundTruth {
 public:
  Address true_origin(const Packet& packet) const { return packet.true_origin_; }

 private:
  friend class World;
  GroundTruth() = default;
};

struct FeatureConfig {
  int dim = kDefaultFeatureDim;
  int buckets = kDefaultFeatureBuckets;
};

// Deterministic single-threaded discrete-event network. Time advances only
// via step(); packets travel a unique precomputed path per (origin, dst)
// with per-link latencies and standard TTL semantics.
class World {
 public:
  explicit World(FeatureConfig features = {});

  void add_node(Node node);
  void add_link(Link link);
  // Builds routing tables; must be called after topology setup.
  void finalize();

  std::uint64_t now() const { return now_; }
  const std::map<Address, Node>& nodes() const { return nodes_; }
  const Node* find_node(Address a) const;
  bool finalized() const { return finalized_; }
  const FeatureConfig& features() const { return features_; }

  // Unique path between two nodes, endpoints included.
  const std::vector<Address>& route(Address from, Address to) const;
  int link_latency(Address a, Address b) const;
  int max_link_latency() const { return max_link_latency_; }
  std::uint64_t path_latency(Address from, Address to) const;
  // True when BFS found two equal-length routes between the pair.
  bool route_ambiguous(Address from, Address to) const;

  Packet make_data_packet(Address src, Address dst, std::string payload) const;

  // Enqueues the packet from actual_sender toward packet.dst. The claimed
  // src field is left untouched (spoofable); ground truth records the
  // actual sender. Returns the assigned packet id.
  std::uint64_t send(Address actual_sender, Packet packet);

  // Advances the clock one step and returns the packets delivered to their
  // final destinations this step, in deterministic order.
  std::vector<Delivery> step();

  // Gateway transit behaviors -------------------------------------------
  void open_stamp_window(Address gateway, Address server, Stamp stamp, std::uint64_t until_step);
  void close_stamp_window(Address gateway);
  using FilterPredicate = std::function<Label(const Packet&)>;
  void deploy_filter(Address gateway, Address server, FilterPredicate predicate);
  void remove_filter(Address gateway);
  bool filter_installed(Address gateway) const;
  std::optional<std::uint64_t> filter_installed_step(Address gateway) const;
  // True when the gateway forwarded traffic claiming this source within
  // the trailing window ending now.
  bool forwarding_cache_contains(Address gateway, Address src, std::uint64_t window) const;

  // Observability --------------------------------------------------------
  void note(Address actor, const std::string& text, const std::string& digest = "");
  const std::vector<SimEvent>& events() const { return events_; }
  const GroundTruth& ground_truth() const { return ground_truth_; }
  void set_attack_oracle(std::function<bool(const Packet&)> oracle);
  bool oracle_is_attack(const Packet& packet) const;

  struct Counters {
    std::uint64_t sent = 0;
    std::uint64_t delivered = 0;
    std::uint64_t ttl_dropped = 0;
    std::uint64_t filtered = 0;
  };
  const Counters& counters() const { return counters_; }
  std::size_t in_flight() const { return transits_.size(); }

  // Attack packets (per oracle) delivered to `dst` in [from, to].
  int attack_deliveries(Address dst, std::uint64_t from, std::uint64_t to) const;
  int filtered_good_count() const;

 private:
  struct Transit {
    Packet packet;
    std::vector<Address> path;
    std::size_t next_index = 1;
    std::uint64_t arrive_at = 0;
  };

  struct StampWindow {
    Address server{};
    Stamp stamp;
    std::uint64_t until = 0;
  };

  struct FilterSlot {
    Address server{};
    FilterPredicate predicate;
    std::uint64_t installed_step = 0;
  };

  void process_arrival(Transit transit, std::vector<Delivery>& out);
  void record(SimEventKind kind, Address actor, const Packet& packet);
  void schedule(Transit transit);

  FeatureConfig features_;
  std::map<Address, Node> nodes_;
  std::map<Address, std::vector<std::pair<Address, int>>> adjacency_;
  std::map<std::pair<Address, Address>, int> link_latency_;
  std::map<std::pair<Address, Address>, std::vector<Address>> routes_;
  std::set<std::pair<Address, Address>> ambiguous_routes_;
  int max_link_latency_ = 1;
  bool finalized_ = false;

  std::uint64_t now_ = 0;
  std::uint64_t next_packet_id_ = 1;
  std::vector<Transit> transits_;
  std::vector<SimEvent> events_;
  Counters counters_;
  GroundTruth ground_truth_;
  std::function<bool(const Packet&)> attack_oracle_;

  std::map<Address, StampWindow> stamp_windows_;
  std::map<Address, FilterSlot> filters_;
  std::map<Address, std::optional<std::uint64_t>> filter_history_;
  std::map<Address, std::map<Address, std::uint64_t>> forwarding_cache_;
};

// Router-side DISCOVER handling: a router whose TTL-expired packet is a
// DISCOVER replies with its (claimed) managed range; routers without one
// stay silent.
std::optional<Packet> handle_discover(const Node& router, const Packet& expired);

// Emits one DATA packet containing the profile pattern every delta steps,
// honoring the pause window, stop step, and spoofed source.
class AttackerActor {
 public:
  explicit AttackerActor(AttackerProfile profile) : profile_(std::move(profile)) {}

  void on_step(World& world);
  const AttackerProfile& profile() const { return profile_; }

 private:
  AttackerProfile profile_;
  std::uint64_t sequence_ = 0;
};

}  // namespace remotegate
