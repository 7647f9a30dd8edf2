#pragma once

#include "remotegate/commitment.hpp"
#include "remotegate/errors.hpp"
#include "remotegate/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace remotegate {

// Fixed-price bilateral trade: the posted per-example reward is
// min(v_server, v_gateway); nullopt when the server values the service
// below the gateway's ask, in which case no trade happens and the server
// moves on to the next gateway.
std::optional<Rational> select_initial_reward(const Rational& v_server, const Rational& v_gateway);

// Per-round reward is the smaller of the two bids.
Rational negotiate_round(const Rational& bid_server, const Rational& bid_gateway);

// Cumulative reward: rate * sum of per-round accuracies.
Rational reward_total(const Rational& rate, std::span<const int> accuracies);

// Per-example rate for round r given the rate of round r-1 and the
// accuracies of rounds 1..r:
//   rate_r = (sum_{i<r} acc_i / (c * sum_{i<=r} acc_i)) * rate_{r-1}
// Throws Errc::invalid_argument when all accuracies are zero (undefined
// recurrence; callers keep the previous rate and flag the round).
Rational next_bid(const Rational& prev_bid, std::span<const int> accuracies, const Rational& c);

// The cumulative-reward bid both parties can compute at the start of
// round r (r >= 2) from information already exchanged:
//   kappa_r = reward_total(rate_{r-1}, accs_{1..r-1}) / c
// Once round r's accuracy is known, kappa_r / sum_{i<=r} acc_i equals
// next_bid(rate_{r-1}, accs_{1..r}, c); the blind bid exchange uses kappa
// so commitments can be formed before the round's predictions exist.
Rational next_reward_bid(const Rational& prev_rate, std::span<const int> accs_through_prev,
                         const Rational& c);

struct RewardLedgerRow {
  int round = 0;
  Rational bid_server{0};   // settled per-example rate, server side
  Rational bid_gateway{0};  // settled per-example rate, gateway side
  Rational rate{0};         // min of the two
  int accuracy = 0;
  Rational total{0};  // rate * sum of accuracies through this round
};

struct NegotiationState {
  Rational v_server{0};
  Rational v_gateway{0};
  Rational initial_reward{0};
  std::uint64_t gamma_service = 0;
  Rational fee{0};
  int installments = 0;
  Rational epsilon{0};
  std::map<std::string, Commitment> commitments;
};

}  // namespace remotegate
