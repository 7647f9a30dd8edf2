#include "remotegate/lifecycle.hpp"

#include <sstream>

namespace remotegate {

void ProtocolLog::append(std::uint64_t step, const std::string& event, nlohmann::json detail,
                         const std::string& digest) {
  if (!entries_.empty() && step < entries_.back().step) {
    fail(Errc::internal, "protocol log steps must be non-decreasing");
  }
  entries_.push_back(LogEntry{step, event, std::move(detail), digest});
}

void ProtocolLog::append_breach(std::uint64_t step, const std::string& cause,
                                nlohmann::json detail) {
  detail["cause"] = cause;
  append(step, "BREACH", std::move(detail));
  if (!breach_) {
    breach_ = true;
    breach_step_ = step;
  }
}

std::string ProtocolLog::to_jsonl() const {
  std::ostringstream os;
  for (const LogEntry& e : entries_) {
    nlohmann::json line;
    line["step"] = e.step;
    line["owner"] = to_string(owner_);
    line["event"] = e.event;
    if (!e.detail.is_null() && !(e.detail.is_object() && e.detail.empty())) {
      line["detail"] = e.detail;
    }
    if (!e.digest.empty()) line["digest"] = e.digest;
    os << line.dump() << "\n";
  }
  return os.str();
}

void PaymentLedger::open_account(Address owner, Rational initial_balance) {
  if (initial_balance < 0) fail(Errc::invalid_argument, "initial balance must be non-negative");
  balances_[owner] = std::move(initial_balance);
}

const Rational& PaymentLedger::balance(Address owner) const {
  auto it = balances_.find(owner);
  if (it == balances_.end()) fail(Errc::payment, "no account for " + to_string(owner));
  return it->second;
}

Rational PaymentLedger::total() const {
  Rational sum{0};
  for (const auto& [_, bal] : balances_) sum += bal;
  return sum;
}

const Receipt& PaymentLedger::pay(std::uint64_t step, Address payer, Address payee,
                                  const Rational& amount, const std::string& purpose) {
  if (amount < 0) fail(Errc::invalid_argument, "payment amount must be non-negative");
  auto payer_it = balances_.find(payer);
  auto payee_it = balances_.find(payee);
  if (payer_it == balances_.end()) fail(Errc::payment, "payer has no account");
  if (payee_it == balances_.end()) fail(Errc::payment, "payee has no account");
  if (payer_it->second < amount) {
    fail(Errc::payment, "insufficient funds: " + to_string(payer) + " holds " +
                            rational_to_string(payer_it->second) + ", needs " +
                            rational_to_string(amount));
  }
  payer_it->second -= amount;
  payee_it->second += amount;
  receipts_.push_back(Receipt{receipts_.size(), step, payer, payee, amount, purpose});
  return receipts_.back();
}

bool PaymentLedger::receipt_exists(Address payer, Address payee, const std::string& purpose) const {
  for (const Receipt& r : receipts_) {
    if (r.payer == payer && r.payee == payee && r.purpose == purpose) return true;
  }
  return false;
}

Rational PaymentLedger::total_paid(Address payer, Address payee,
                                   const std::string& purpose_prefix) const {
  Rational sum{0};
  for (const Receipt& r : receipts_) {
    if (r.payer == payer && r.payee == payee &&
        r.purpose.compare(0, purpose_prefix.size(), purpose_prefix) == 0) {
      sum += r.amount;
    }
  }
  return sum;
}

std::uint64_t ServiceAgreement::slot_end(int i) const {
  const auto iota = static_cast<std::uint64_t>(installments);
  const std::uint64_t slot = gamma_service / iota;
  if (i < installments) return start_step + slot * static_cast<std::uint64_t>(i);
  return start_step + gamma_service;
}

const char* to_string(GuiltyParty guilty) {
  switch (guilty) {
    case GuiltyParty::Server: return "SERVER";
    case GuiltyParty::Gateway: return "GATEWAY";
    case GuiltyParty::None: return "NONE";
  }
  return "?";
}

const char* to_string(Remedy remedy) {
  switch (remedy) {
    case Remedy::RefundToServer: return "REFUND_TO_SERVER";
    case Remedy::PayGateway: return "PAY_GATEWAY";
    case Remedy::NoAction: return "NO_ACTION";
  }
  return "?";
}

namespace {

struct Violation {
  std::uint64_t step = 0;
  GuiltyParty guilty = GuiltyParty::None;
  Remedy remedy = Remedy::NoAction;
  std::string rationale;
};

bool log_contains_digest(const ProtocolLog& log, const std::string& digest) {
  if (digest.empty()) return false;
  for (const LogEntry& e : log.entries()) {
    if (e.digest == digest) return true;
  }
  return false;
}

}  // namespace

Verdict resolve_conflict(const ProtocolLog& server_log, const ProtocolLog& gateway_log,
                         const PaymentLedger& ledger) {
  if (!server_log.breach() && !gateway_log.breach()) {
    fail(Errc::invalid_argument, "conflict resolution requires a breach entry");
  }

  std::vector<Violation> confirmed;
  bool unconfirmed_claim = false;

  for (const LogEntry& e : server_log.entries()) {
    if (e.event != "BREACH") continue;
    const std::string cause = e.detail.value("cause", "");
    if (cause == "filter_not_enforced") {
      // Server holds a VERIFIED transcript from a service-time spoof check:
      // the attack flows through the gateway unfiltered. Corroborated when
      // the gateway's log records sending that VERIFIED message.
      const std::string verified_digest = e.detail.value("verified_digest", "");
      if (log_contains_digest(gateway_log, verified_digest)) {
        confirmed.push_back(Violation{e.step, GuiltyParty::Gateway, Remedy::RefundToServer,
                                      "service-time spoof check verified the attack path through "
                                      "the gateway while the agreed filter was not enforced"});
      } else {
        unconfirmed_claim = true;
      }
    }
  }

  for (const LogEntry& e : gateway_log.entries()) {
    if (e.event != "BREACH") continue;
    const std::string cause = e.detail.value("cause", "");
    if (cause == "fee_missing") {
      const std::string purpose = e.detail.value("purpose", "");
      const Address server{e.detail.value("server", 0u)};
      const Address gateway{e.detail.value("gateway", 0u)};
      if (!purpose.empty() && !ledger.receipt_exists(server, gateway, purpose)) {
        confirmed.push_back(Violation{e.step, GuiltyParty::Server, Remedy::PayGateway,
                                      "installment fee absent from the payment ledger"});
      } else {
        unconfirmed_claim = true;
      }
    } else if (cause == "server_lied_on_accuracy" || cause == "commitment_mismatch") {
      // The claimed labels / openings are corroborated by matching message
      // digests in the server's own log. Nothing was paid, so there is
      // nothing to transfer.
      const std::string msg_digest = e.detail.value("message_digest", "");
      if (log_contains_digest(server_log, msg_digest)) {
        confirmed.push_back(
            Violation{e.step, GuiltyParty::Server, Remedy::NoAction,
                      cause == "server_lied_on_accuracy"
                          ? "revealed test labels diverge from the final model beyond tolerance"
                          : "commitment failed to open to the claimed value"});
      } else {
        unconfirmed_claim = true;
      }
    }
  }

  if (confirmed.empty()) {
    Verdict verdict;
    verdict.guilty = GuiltyParty::None;
    verdict.remedy = Remedy::NoAction;
    verdict.rationale = "no corroborated violation in either log";
    verdict.logs_inconsistent = unconfirmed_claim;
    return verdict;
  }

  const Violation* first = &confirmed.front();
  for (const Violation& v : confirmed) {
    if (v.step < first->step) first = &v;
  }
  Verdict verdict;
  verdict.guilty = first->guilty;
  verdict.remedy = first->remedy;
  verdict.rationale = first->rationale;
  verdict.logs_inconsistent = unconfirmed_claim;
  return verdict;
}

std::optional<std::uint64_t> Timeline::total_time() const {
  if (!t_deployed || !t_detect) return std::nullopt;
  return *t_deployed - *t_detect;
}

std::optional<std::string> Timeline::ordering_violation() const {
  const std::pair<const char*, const std::optional<std::uint64_t>*> marks[] = {
      {"t_start", &t_start},   {"t_detect", &t_detect},     {"t_begin", &t_begin},
      {"t_discovery", &t_discovery}, {"t_spoof", &t_spoof}, {"t_init", &t_init},
      {"t_learned", &t_learned},     {"t_paid", &t_paid},   {"t_deployed", &t_deployed},
      {"t_end", &t_end},
  };
  const char* prev_name = nullptr;
  std::uint64_t prev_value = 0;
  for (const auto& [name, value] : marks) {
    if (!value->has_value()) continue;
    if (prev_name != nullptr && **value < prev_value) {
      return std::string(prev_name) + " > " + name;
    }
    prev_name = name;
    prev_value = **value;
  }
  return std::nullopt;
}

nlohmann::json Timeline::to_json() const {
  nlohmann::json out;
  const auto put = [&out](const char* name, const std::optional<std::uint64_t>& v) {
    if (v) out[name] = *v;
  };
  put("t_start", t_start);
  put("t_detect", t_detect);
  put("t_begin", t_begin);
  put("t_discovery", t_discovery);
  put("t_spoof", t_spoof);
  put("t_init", t_init);
  put("t_learned", t_learned);
  put("t_paid", t_paid);
  put("t_deployed", t_deployed);
  put("t_end", t_end);
  if (auto total = total_time()) out["total_time"] = *total;
  return out;
}

}  // namespace remotegate
