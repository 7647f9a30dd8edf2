#include "remotegate/mechanism.hpp"

namespace remotegate {
namespace {

Rational sum_of(std::span<const int> values) {
  Rational sum{0};
  for (int v : values) {
    if (v < 0) fail(Errc::invalid_argument, "accuracy must be non-negative");
    sum += v;
  }
  return sum;
}

}  // namespace

std::optional<Rational> select_initial_reward(const Rational& v_server, const Rational& v_gateway) {
  if (v_server < 0 || v_gateway < 0) fail(Errc::invalid_argument, "valuations must be non-negative");
  if (v_server < v_gateway) return std::nullopt;
  return v_gateway;
}

Rational negotiate_round(const Rational& bid_server, const Rational& bid_gateway) {
  if (bid_server < 0 || bid_gateway < 0) fail(Errc::invalid_argument, "bids must be non-negative");
  return bid_server < bid_gateway ? bid_server : bid_gateway;
}

Rational reward_total(const Rational& rate, std::span<const int> accuracies) {
  return rate * sum_of(accuracies);
}

Rational next_bid(const Rational& prev_bid, std::span<const int> accuracies, const Rational& c) {
  if (accuracies.size() < 2) fail(Errc::invalid_argument, "next_bid needs round index >= 2");
  if (c <= 1) fail(Errc::invalid_argument, "bid reduction constant must exceed 1");
  const Rational through_r = sum_of(accuracies);
  if (through_r == 0) fail(Errc::invalid_argument, "bid recurrence undefined: all accuracies zero");
  const Rational through_prev = sum_of(accuracies.subspan(0, accuracies.size() - 1));
  return (through_prev / (c * through_r)) * prev_bid;
}

Rational next_reward_bid(const Rational& prev_rate, std::span<const int> accs_through_prev,
                         const Rational& c) {
  if (c <= 1) fail(Errc::invalid_argument, "bid reduction constant must exceed 1");
  return reward_total(prev_rate, accs_through_prev) / c;
}

}  // namespace remotegate
