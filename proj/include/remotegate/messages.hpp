#pragma once

#include "remotegate/commitment.hpp"
#include "remotegate/model.hpp"
#include "remotegate/sha256.hpp"

#include <cstdint>
#include <set>
#include <variant>
#include <vector>

namespace remotegate {

// PING: carries one attack sample and the observed inter-packet delta.
struct PingBody {
  Packet attack_sample;
  Rational delta{0};
};

struct CheckBody {
  Stamp stamp;
};

struct VerifiedBody {};

// Server returning a stamped attack packet to the gateway.
struct StampedForwardBody {
  Packet forwarded;
};

struct GatewayResponseBody {
  std::set<Address> managed_range;
  int probe_ttl = 0;
};

// INIT: commitments to the server's valuation and error tolerance, the
// requested service duration, and a sampled attack packet.
struct InitBody {
  Commitment value_commit;
  std::uint64_t gamma_service_server = 0;
  Packet attack_sample;
  Commitment epsilon_commit;
};

struct TermsBody {
  std::uint64_t gamma_service_gateway = 0;
  Rational valuation{0};  // v_G, per correctly classified example
  Rational fee{0};        // per installment
  int installments = 0;   // iota
};

struct InitAcceptBody {
  Rational initial_reward{0};  // rho_1
  Rational opened_value{0};    // v_S
  Nonce value_nonce{};
};

struct RoundTrainBody {
  int round = 0;
  Commitment bid_commit;
  std::vector<LabeledPacket> train;
  std::vector<Label> prev_test_labels;  // server-claimed labels for TEST_{r-1}
};

struct RoundBidBody {
  int round = 0;
  Rational bid{0};  // round 1: per-example rate; round >= 2: cumulative-reward bid
};

struct RoundTestBody {
  int round = 0;
  Rational settled{0};  // min of the two bids
  Rational opened_bid{0};
  Nonce bid_nonce{};
  std::vector<Packet> test;
};

struct RoundPredictionsBody {
  int round = 0;
  std::vector<Label> labels;
};

struct PayInitBody {
  int round = 0;
  Rational opened_epsilon{0};
  Nonce epsilon_nonce{};
  std::vector<Label> final_test_labels;  // server-claimed labels for TEST_r
  Rational amount{0};
};

struct PayAcceptBody {
  int round = 0;
};

struct MessageBody {
  using Variant =
      std::variant<PingBody, CheckBody, VerifiedBody, StampedForwardBody, GatewayResponseBody,
                   InitBody, TermsBody, InitAcceptBody, RoundTrainBody, RoundBidBody, RoundTestBody,
                   RoundPredictionsBody, PayInitBody, PayAcceptBody>;
  Variant value;
};

// Deterministic encoding of a message body (never includes simulator-only
// ground truth). Input to event-log and protocol-log digests.
std::vector<std::uint8_t> canonical_bytes(const MessageBody& body);

Digest256 digest(const MessageBody& body);

// Digest of a packet including its body, as both endpoints observe it.
Digest256 packet_digest(const Packet& packet);

const char* message_name(const MessageBody& body);

template <typename T>
std::shared_ptr<const MessageBody> make_body(T&& value) {
  return std::make_shared<const MessageBody>(MessageBody{std::forward<T>(value)});
}

template <typename T>
const T* body_as(const Packet& packet) {
  if (!packet.body) return nullptr;
  return std::get_if<T>(&packet.body->value);
}

}  // namespace remotegate
