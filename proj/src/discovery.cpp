#include "remotegate/discovery.hpp"

#include <algorithm>

namespace remotegate {

void GatewayList::insert(GatewayInfo info) {
  for (GatewayInfo& existing : entries_) {
    if (existing.gateway == info.gateway) {
      if (info.latency < existing.latency) existing.latency = info.latency;
      std::sort(entries_.begin(), entries_.end(), [](const GatewayInfo& a, const GatewayInfo& b) {
        return a.latency != b.latency ? a.latency < b.latency : a.gateway < b.gateway;
      });
      return;
    }
  }
  entries_.push_back(std::move(info));
  std::sort(entries_.begin(), entries_.end(), [](const GatewayInfo& a, const GatewayInfo& b) {
    return a.latency != b.latency ? a.latency < b.latency : a.gateway < b.gateway;
  });
}

std::vector<GatewayInfo> GatewayList::farthest_first() const {
  std::vector<GatewayInfo> out(entries_.rbegin(), entries_.rend());
  return out;
}

bool GatewayList::contains(Address gateway) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [gateway](const GatewayInfo& g) { return g.gateway == gateway; });
}

std::uint64_t default_probe_timeout(const World& world, int ttl_max) {
  const std::uint64_t bound = 4ULL * static_cast<std::uint64_t>(std::max(ttl_max, 1)) *
                              static_cast<std::uint64_t>(world.max_link_latency());
  return std::max<std::uint64_t>(bound, 1);
}

DiscoverySession::DiscoverySession(Address server, Address source, int ttl_max,
                                   std::uint64_t probe_timeout)
    : server_(server), source_(source), ttl_max_(ttl_max), probe_timeout_(probe_timeout) {}

void DiscoverySession::begin(World& world) {
  if (ttl_max_ <= 0 || server_ == source_) {
    done_ = true;
    return;
  }
  current_ttl_ = 1;
  advance(world);
}

void DiscoverySession::advance(World& world) {
  if (current_ttl_ > ttl_max_) {
    done_ = true;
    return;
  }
  Packet probe;
  probe.src = server_;
  probe.dst = source_;
  probe.kind = PacketKind::Discover;
  probe.ttl = current_ttl_;
  probe.payload = std::to_string(current_ttl_);
  probe_sent_at_ = world.now();
  probe_deadline_ = world.now() + probe_timeout_;
  world.send(server_, std::move(probe));
}

void DiscoverySession::on_packet(World& world, const Packet& packet) {
  if (done_) return;
  if (packet.kind == PacketKind::GatewayResponse) {
    const auto* body = body_as<GatewayResponseBody>(packet);
    if (body == nullptr || body->probe_ttl != current_ttl_) return;
    if (body->managed_range.count(source_) != 0) {
      list_.insert(GatewayInfo{packet.src, world.now() - probe_sent_at_, body->managed_range});
    }
    ++current_ttl_;
    advance(world);
    return;
  }
  if (packet.kind == PacketKind::EchoReply && packet.src == source_) {
    done_ = true;
  }
}

void DiscoverySession::on_step(World& world) {
  if (done_ || current_ttl_ == 0) return;
  if (world.now() >= probe_deadline_) {
    ++current_ttl_;
    advance(world);
  }
}

GatewayList run_gateway_discovery(World& world, Address server, Address source, int ttl_max) {
  DiscoverySession session(server, source, ttl_max, default_probe_timeout(world, ttl_max));
  session.begin(world);
  while (!session.done()) {
    for (const Delivery& delivery : world.step()) {
      if (delivery.at == server) session.on_packet(world, delivery.packet);
      if (session.done()) break;
    }
    if (!session.done()) session.on_step(world);
  }
  return session.result();
}

}  // namespace remotegate
