#include "remotegate/netsim.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace remotegate {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Server: return "SERVER";
    case NodeKind::Gateway: return "GATEWAY";
    case NodeKind::Router: return "ROUTER";
    case NodeKind::Client: return "CLIENT";
    case NodeKind::Attacker: return "ATTACKER";
  }
  return "?";
}

std::string SimEvent::render() const {
  std::ostringstream os;
  os << "step=" << step << " actor=" << actor.value << " event=";
  switch (kind) {
    case SimEventKind::Send: os << "SEND"; break;
    case SimEventKind::Deliver: os << "DELIVER"; break;
    case SimEventKind::TtlExpire: os << "TTL-EXPIRE"; break;
    case SimEventKind::Filtered: os << "FILTERED"; break;
    case SimEventKind::ActorNote: os << "NOTE"; break;
  }
  if (kind == SimEventKind::ActorNote) {
    os << " detail=" << note;
  } else {
    os << " kind=" << to_string(packet_kind) << " src=" << src.value << " dst=" << dst.value
       << " id=" << packet_id;
  }
  if (!digest.empty()) os << " digest=" << digest;
  return os.str();
}

World::World(FeatureConfig features) : features_(features) {}

void World::add_node(Node node) {
  if (finalized_) fail(Errc::internal, "topology is frozen");
  if (nodes_.count(node.address) != 0) {
    fail(Errc::validate, "duplicate node address " + to_string(node.address));
  }
  nodes_.emplace(node.address, std::move(node));
}

void World::add_link(Link link) {
  if (finalized_) fail(Errc::internal, "topology is frozen");
  if (link.latency < 1) fail(Errc::validate, "link latency must be >= 1");
  if (nodes_.count(link.a) == 0 || nodes_.count(link.b) == 0) {
    fail(Errc::validate, "link endpoint unknown: " + to_string(link.a) + "-" + to_string(link.b));
  }
  if (link.a == link.b) fail(Errc::validate, "self link at " + to_string(link.a));
  adjacency_[link.a].emplace_back(link.b, link.latency);
  adjacency_[link.b].emplace_back(link.a, link.latency);
  link_latency_[{link.a, link.b}] = link.latency;
  link_latency_[{link.b, link.a}] = link.latency;
  max_link_latency_ = std::max(max_link_latency_, link.latency);
}

void World::finalize() {
  for (auto& [addr, neighbors] : adjacency_) {
    std::sort(neighbors.begin(), neighbors.end());
  }
  // BFS from every node; neighbor order makes path choice deterministic.
  for (const auto& [src, _] : nodes_) {
    std::map<Address, Address> parent;
    std::map<Address, int> depth;
    std::deque<Address> queue;
    parent[src] = src;
    depth[src] = 0;
    queue.push_back(src);
    while (!queue.empty()) {
      const Address here = queue.front();
      queue.pop_front();
      auto adj = adjacency_.find(here);
      if (adj == adjacency_.end()) continue;
      for (const auto& [next, lat] : adj->second) {
        (void)lat;
        auto found = depth.find(next);
        if (found == depth.end()) {
          depth[next] = depth[here] + 1;
          parent[next] = here;
          queue.push_back(next);
        } else if (found->second == depth[here] + 1) {
          ambiguous_routes_.insert({src, next});
        }
      }
    }
    for (const auto& [dst, _2] : nodes_) {
      if (dst == src) {
        routes_[{src, dst}] = {src};
        continue;
      }
      if (parent.count(dst) == 0) continue;  // disconnected; validator reports
      std::vector<Address> path;
      for (Address a = dst; a != src; a = parent[a]) path.push_back(a);
      path.push_back(src);
      std::reverse(path.begin(), path.end());
      routes_[{src, dst}] = std::move(path);
    }
  }
  finalized_ = true;
}

const Node* World::find_node(Address a) const {
  auto it = nodes_.find(a);
  return it == nodes_.end() ? nullptr : &it->second;
}

const std::vector<Address>& World::route(Address from, Address to) const {
  auto it = routes_.find({from, to});
  if (it == routes_.end()) {
    fail(Errc::unknown_destination,
         "no route from " + to_string(from) + " to " + to_string(to));
  }
  return it->second;
}

int World::link_latency(Address a, Address b) const {
  auto it = link_latency_.find({a, b});
  if (it == link_latency_.end()) fail(Errc::internal, "no link " + to_string(a) + "-" + to_string(b));
  return it->second;
}

std::uint64_t World::path_latency(Address from, Address to) const {
  const auto& path = route(from, to);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    sum += static_cast<std::uint64_t>(link_latency(path[i], path[i + 1]));
  }
  return sum;
}

bool World::route_ambiguous(Address from, Address to) const {
  return ambiguous_routes_.count({from, to}) != 0 || ambiguous_routes_.count({to, from}) != 0;
}

Packet World::make_data_packet(Address src, Address dst, std::string payload) const {
  Packet p;
  p.src = src;
  p.dst = dst;
  p.kind = PacketKind::Data;
  p.features = extract_features(payload, features_.dim, features_.buckets);
  p.payload = std::move(payload);
  return p;
}

std::uint64_t World::send(Address actual_sender, Packet packet) {
  if (!finalized_) fail(Errc::internal, "world not finalized");
  if (nodes_.count(actual_sender) == 0) {
    fail(Errc::invalid_argument, "unknown sender " + to_string(actual_sender));
  }
  if (nodes_.count(packet.dst) == 0) {
    fail(Errc::unknown_destination, "unknown destination " + to_string(packet.dst));
  }
  auto route_it = routes_.find({actual_sender, packet.dst});
  if (route_it == routes_.end()) {
    fail(Errc::unknown_destination, "no route to " + to_string(packet.dst));
  }
  if (actual_sender == packet.dst) fail(Errc::invalid_argument, "sender equals destination");

  packet.id = next_packet_id_++;
  packet.send_time = now_;
  packet.true_origin_ = actual_sender;

  Transit transit;
  transit.path = route_it->second;
  transit.arrive_at = now_ + static_cast<std::uint64_t>(link_latency(transit.path[0], transit.path[1]));
  transit.next_index = 1;
  transit.packet = std::move(packet);

  counters_.sent++;
  record(SimEventKind::Send, actual_sender, transit.packet);
  const std::uint64_t id = transit.packet.id;
  schedule(std::move(transit));
  return id;
}

void World::schedule(Transit transit) { transits_.push_back(std::move(transit)); }

std::vector<Delivery> World::step() {
  if (!finalized_) fail(Errc::internal, "world not finalized");
  ++now_;

  std::vector<Transit> due;
  for (auto it = transits_.begin(); it != transits_.end();) {
    if (it->arrive_at == now_) {
      due.push_back(std::move(*it));
      it = transits_.erase(it);
    } else {
      ++it;
    }
  }

  std::vector<Delivery> out;
  for (auto& transit : due) process_arrival(std::move(transit), out);
  return out;
}

void World::process_arrival(Transit transit, std::vector<Delivery>& out) {
  const Address here = transit.path[transit.next_index];
  Packet& packet = transit.packet;

  if (transit.next_index + 1 == transit.path.size()) {
    counters_.delivered++;
    record(SimEventKind::Deliver, here, packet);
    if (packet.kind == PacketKind::Discover) {
      Packet reply;
      reply.src = here;
      reply.dst = packet.src;
      reply.kind = PacketKind::EchoReply;
      reply.payload = packet.payload;  // probe ttl echoes back
      if (reply.dst != here && routes_.count({here, reply.dst}) != 0) {
        send(here, std::move(reply));
      }
    }
    out.push_back(Delivery{here, std::move(packet)});
    return;
  }

  packet.ttl -= 1;
  if (packet.ttl <= 0) {
    counters_.ttl_dropped++;
    record(SimEventKind::TtlExpire, here, packet);
    auto node = nodes_.find(here);
    if (node != nodes_.end()) {
      if (auto reply = handle_discover(node->second, packet)) {
        if (reply->dst != here && routes_.count({here, reply->dst}) != 0) {
          send(here, std::move(*reply));
        }
      }
    }
    return;
  }

  // Transit hooks at the forwarding node.
  if (packet.kind == PacketKind::Data) {
    forwarding_cache_[here][packet.src] = now_;
  }
  if (auto win = stamp_windows_.find(here);
      win != stamp_windows_.end() && packet.dst == win->second.server && now_ < win->second.until) {
    packet.stamp = win->second.stamp;
  }
  if (auto slot = filters_.find(here); slot != filters_.end() &&
                                       packet.kind == PacketKind::Data &&
                                       packet.dst == slot->second.server) {
    if (slot->second.predicate(packet) == Label::Attack) {
      counters_.filtered++;
      record(SimEventKind::Filtered, here, packet);
      return;
    }
  }

  const Address next = transit.path[transit.next_index + 1];
  transit.arrive_at = now_ + static_cast<std::uint64_t>(link_latency(here, next));
  transit.next_index += 1;
  schedule(std::move(transit));
}

void World::record(SimEventKind kind, Address actor, const Packet& packet) {
  SimEvent ev;
  ev.step = now_;
  ev.actor = actor;
  ev.kind = kind;
  ev.packet_kind = packet.kind;
  ev.packet_id = packet.id;
  ev.src = packet.src;
  ev.dst = packet.dst;
  ev.attack_payload = oracle_is_attack(packet);
  if (packet.body) ev.digest = short_hex(digest(*packet.body));
  events_.push_back(std::move(ev));
}

void World::note(Address actor, const std::string& text, const std::string& digest_text) {
  SimEvent ev;
  ev.step = now_;
  ev.actor = actor;
  ev.kind = SimEventKind::ActorNote;
  ev.note = text;
  ev.digest = digest_text;
  events_.push_back(std::move(ev));
}

void World::set_attack_oracle(std::function<bool(const Packet&)> oracle) {
  attack_oracle_ = std::move(oracle);
}

bool World::oracle_is_attack(const Packet& packet) const {
  return attack_oracle_ && packet.kind == PacketKind::Data && attack_oracle_(packet);
}

void World::open_stamp_window(Address gateway, Address server, Stamp stamp,
                              std::uint64_t until_step) {
  stamp_windows_[gateway] = StampWindow{server, stamp, until_step};
}

void World::close_stamp_window(Address gateway) { stamp_windows_.erase(gateway); }

void World::deploy_filter(Address gateway, Address server, FilterPredicate predicate) {
  filters_[gateway] = FilterSlot{server, std::move(predicate), now_};
  filter_history_[gateway] = now_;
}

void World::remove_filter(Address gateway) { filters_.erase(gateway); }

bool World::filter_installed(Address gateway) const { return filters_.count(gateway) != 0; }

std::optional<std::uint64_t> World::filter_installed_step(Address gateway) const {
  auto it = filter_history_.find(gateway);
  return it == filter_history_.end() ? std::nullopt : it->second;
}

bool World::forwarding_cache_contains(Address gateway, Address src, std::uint64_t window) const {
  if (window == 0) return false;
  auto gw = forwarding_cache_.find(gateway);
  if (gw == forwarding_cache_.end()) return false;
  auto entry = gw->second.find(src);
  if (entry == gw->second.end()) return false;
  return entry->second + window >= now_;
}

int World::attack_deliveries(Address dst, std::uint64_t from, std::uint64_t to) const {
  int count = 0;
  for (const SimEvent& ev : events_) {
    if (ev.kind == SimEventKind::Deliver && ev.dst == dst && ev.attack_payload &&
        ev.step >= from && ev.step <= to) {
      ++count;
    }
  }
  return count;
}

int World::filtered_good_count() const {
  int count = 0;
  for (const SimEvent& ev : events_) {
    if (ev.kind == SimEventKind::Filtered && !ev.attack_payload) ++count;
  }
  return count;
}

std::optional<Packet> handle_discover(const Node& router, const Packet& expired) {
  if (expired.kind != PacketKind::Discover) return std::nullopt;
  const auto& range =
      router.claimed_range_override ? router.claimed_range_override : router.managed_range;
  if (!range) return std::nullopt;

  int probe_ttl = 0;
  try {
    probe_ttl = std::stoi(expired.payload);
  } catch (const std::exception&) {
    probe_ttl = 0;
  }

  Packet reply;
  reply.src = router.address;
  reply.dst = expired.src;
  reply.kind = PacketKind::GatewayResponse;
  reply.body = make_body(GatewayResponseBody{*range, probe_ttl});
  return reply;
}

void AttackerActor::on_step(World& world) {
  const std::uint64_t now = world.now();
  if (now < profile_.start_step) return;
  if (profile_.stop_step && now >= *profile_.stop_step) return;
  if ((now - profile_.start_step) % profile_.delta != 0) return;
  if (profile_.pause_window && now >= profile_.pause_window->first &&
      now < profile_.pause_window->second) {
    return;
  }

  std::string payload = profile_.pattern + "#" + std::to_string(sequence_ % 100);
  Packet packet = world.make_data_packet(profile_.spoof_as.value_or(profile_.source),
                                         profile_.target, std::move(payload));
  world.send(profile_.source, std::move(packet));
  ++sequence_;
}

}  // namespace remotegate
