#include "remotegate/messages.hpp"

namespace remotegate {
namespace {

class Encoder {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }

  void u32(std::uint32_t v) {
    for (int i = 3; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void u64(std::uint64_t v) {
    for (int i = 7; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void bytes(std::span<const std::uint8_t> data) {
    u32(static_cast<std::uint32_t>(data.size()));
    out_.insert(out_.end(), data.begin(), data.end());
  }

  void str(const std::string& s) {
    bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  }

  void rational(const Rational& r) {
    const auto b = canonical_bytes(r);
    bytes(b);
  }

  void commitment(const Commitment& c) { bytes(std::span<const std::uint8_t>(c.digest)); }

  void nonce(const Nonce& n) { bytes(std::span<const std::uint8_t>(n)); }

  void label(Label l) { u8(l == Label::Attack ? 1 : 0); }

  void labels(const std::vector<Label>& ls) {
    u32(static_cast<std::uint32_t>(ls.size()));
    for (Label l : ls) label(l);
  }

  void address(Address a) { u32(a.value); }

  void packet(const Packet& p) {
    u64(p.id);
    address(p.src);
    address(p.dst);
    u32(static_cast<std::uint32_t>(p.ttl));
    u8(static_cast<std::uint8_t>(p.kind));
    u32(static_cast<std::uint32_t>(p.features.size()));
    for (std::uint32_t f : p.features) u32(f);
    str(p.payload);
    u8(p.stamp ? 1 : 0);
    if (p.stamp) bytes(std::span<const std::uint8_t>(p.stamp->bytes));
    u64(p.send_time);
    // Nested protocol bodies are not encoded; top-level messages never
    // carry packets that themselves wrap a body.
  }

  void packets(const std::vector<Packet>& ps) {
    u32(static_cast<std::uint32_t>(ps.size()));
    for (const Packet& p : ps) packet(p);
  }

  void examples(const std::vector<LabeledPacket>& es) {
    u32(static_cast<std::uint32_t>(es.size()));
    for (const LabeledPacket& e : es) {
      packet(e.packet);
      label(e.label);
    }
  }

  void addresses(const std::set<Address>& as) {
    u32(static_cast<std::uint32_t>(as.size()));
    for (Address a : as) address(a);
  }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

struct EncodeVisitor {
  Encoder& enc;

  void operator()(const PingBody& b) {
    enc.u8(1);
    enc.packet(b.attack_sample);
    enc.rational(b.delta);
  }
  void operator()(const CheckBody& b) {
    enc.u8(2);
    enc.bytes(std::span<const std::uint8_t>(b.stamp.bytes));
  }
  void operator()(const VerifiedBody&) { enc.u8(3); }
  void operator()(const StampedForwardBody& b) {
    enc.u8(4);
    enc.packet(b.forwarded);
  }
  void operator()(const GatewayResponseBody& b) {
    enc.u8(5);
    enc.addresses(b.managed_range);
    enc.u32(static_cast<std::uint32_t>(b.probe_ttl));
  }
  void operator()(const InitBody& b) {
    enc.u8(6);
    enc.commitment(b.value_commit);
    enc.u64(b.gamma_service_server);
    enc.packet(b.attack_sample);
    enc.commitment(b.epsilon_commit);
  }
  void operator()(const TermsBody& b) {
    enc.u8(7);
    enc.u64(b.gamma_service_gateway);
    enc.rational(b.valuation);
    enc.rational(b.fee);
    enc.u32(static_cast<std::uint32_t>(b.installments));
  }
  void operator()(const InitAcceptBody& b) {
    enc.u8(8);
    enc.rational(b.initial_reward);
    enc.rational(b.opened_value);
    enc.nonce(b.value_nonce);
  }
  void operator()(const RoundTrainBody& b) {
    enc.u8(9);
    enc.u32(static_cast<std::uint32_t>(b.round));
    enc.commitment(b.bid_commit);
    enc.examples(b.train);
    enc.labels(b.prev_test_labels);
  }
  void operator()(const RoundBidBody& b) {
    enc.u8(10);
    enc.u32(static_cast<std::uint32_t>(b.round));
    enc.rational(b.bid);
  }
  void operator()(const RoundTestBody& b) {
    enc.u8(11);
    enc.u32(static_cast<std::uint32_t>(b.round));
    enc.rational(b.settled);
    enc.rational(b.opened_bid);
    enc.nonce(b.bid_nonce);
    enc.packets(b.test);
  }
  void operator()(const RoundPredictionsBody& b) {
    enc.u8(12);
    enc.u32(static_cast<std::uint32_t>(b.round));
    enc.labels(b.labels);
  }
  void operator()(const PayInitBody& b) {
    enc.u8(13);
    enc.u32(static_cast<std::uint32_t>(b.round));
    enc.rational(b.opened_epsilon);
    enc.nonce(b.epsilon_nonce);
    enc.labels(b.final_test_labels);
    enc.rational(b.amount);
  }
  void operator()(const PayAcceptBody& b) {
    enc.u8(14);
    enc.u32(static_cast<std::uint32_t>(b.round));
  }
};

}  // namespace

std::vector<std::uint8_t> canonical_bytes(const MessageBody& body) {
  Encoder enc;
  std::visit(EncodeVisitor{enc}, body.value);
  return enc.take();
}

Digest256 digest(const MessageBody& body) {
  const auto bytes = canonical_bytes(body);
  return sha256(bytes);
}

Digest256 packet_digest(const Packet& packet) {
  Encoder enc;
  enc.packet(packet);
  if (packet.body) std::visit(EncodeVisitor{enc}, packet.body->value);
  const auto bytes = enc.take();
  return sha256(bytes);
}

const char* message_name(const MessageBody& body) {
  struct Visitor {
    const char* operator()(const PingBody&) { return "PING"; }
    const char* operator()(const CheckBody&) { return "CHECK"; }
    const char* operator()(const VerifiedBody&) { return "VERIFIED"; }
    const char* operator()(const StampedForwardBody&) { return "STAMPED-FORWARD"; }
    const char* operator()(const GatewayResponseBody&) { return "GATEWAY-RESPONSE"; }
    const char* operator()(const InitBody&) { return "INIT"; }
    const char* operator()(const TermsBody&) { return "TERMS"; }
    const char* operator()(const InitAcceptBody&) { return "INIT-ACCEPT"; }
    const char* operator()(const RoundTrainBody&) { return "ROUND-TRAIN"; }
    const char* operator()(const RoundBidBody&) { return "ROUND-BID"; }
    const char* operator()(const RoundTestBody&) { return "ROUND-TEST"; }
    const char* operator()(const RoundPredictionsBody&) { return "ROUND-PREDICTIONS"; }
    const char* operator()(const PayInitBody&) { return "PAY-INIT"; }
    const char* operator()(const PayAcceptBody&) { return "PAY-ACCEPT"; }
  };
  return std::visit(Visitor{}, body.value);
}

}  // namespace remotegate
