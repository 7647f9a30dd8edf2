#pragma once

#include "remotegate/mechanism.hpp"
#include "remotegate/model.hpp"
#include "remotegate/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace remotegate {

enum class LogOwner : std::uint8_t { Server, Gateway };

inline const char* to_string(LogOwner owner) {
  return owner == LogOwner::Server ? "SERVER" : "GATEWAY";
}

struct LogEntry {
  std::uint64_t step = 0;
  std::string event;
  nlohmann::json detail;
  std::string digest;  // short hex of the related message, if any
};

// Append-only record of one party's state changes. The breach flag flips
// exactly when a BREACH entry is appended and never reverts.
class ProtocolLog {
 public:
  explicit ProtocolLog(LogOwner owner) : owner_(owner) {}

  void append(std::uint64_t step, const std::string& event, nlohmann::json detail = {},
              const std::string& digest = "");
  void append_breach(std::uint64_t step, const std::string& cause, nlohmann::json detail = {});

  LogOwner owner() const { return owner_; }
  bool breach() const { return breach_; }
  std::optional<std::uint64_t> breach_step() const { return breach_step_; }
  const std::vector<LogEntry>& entries() const { return entries_; }

  std::string to_jsonl() const;

 private:
  LogOwner owner_;
  std::vector<LogEntry> entries_;
  bool breach_ = false;
  std::optional<std::uint64_t> breach_step_;
};

struct Receipt {
  std::uint64_t index = 0;
  std::uint64_t step = 0;
  Address payer{};
  Address payee{};
  Rational amount{0};
  std::string purpose;
};

// Trusted payment rail: atomic transfers, conserved total, verifiable
// receipts. Stands in for the external payment blackbox.
class PaymentLedger {
 public:
  void open_account(Address owner, Rational initial_balance);
  bool has_account(Address owner) const { return balances_.count(owner) != 0; }
  const Rational& balance(Address owner) const;
  Rational total() const;

  // Throws Errc::payment on insufficient funds; no state changes then.
  const Receipt& pay(std::uint64_t step, Address payer, Address payee, const Rational& amount,
                     const std::string& purpose);

  const std::vector<Receipt>& receipts() const { return receipts_; }
  bool receipt_exists(Address payer, Address payee, const std::string& purpose) const;
  Rational total_paid(Address payer, Address payee, const std::string& purpose_prefix) const;

 private:
  std::map<Address, Rational> balances_;
  std::vector<Receipt> receipts_;
};

struct ServiceAgreement {
  std::uint64_t gamma_service = 0;
  Rational fee{0};
  int installments = 1;
  Rational epsilon{0};
  std::uint64_t start_step = 0;

  // Installments are gamma/iota steps long; the division remainder is
  // appended to the last installment. `i` is 1-based.
  std::uint64_t slot_end(int i) const;
  std::uint64_t end_step() const { return start_step + gamma_service; }
};

enum class GuiltyParty : std::uint8_t { Server, Gateway, None };
enum class Remedy : std::uint8_t { RefundToServer, PayGateway, NoAction };

const char* to_string(GuiltyParty guilty);
const char* to_string(Remedy remedy);

struct Verdict {
  GuiltyParty guilty = GuiltyParty::None;
  Remedy remedy = Remedy::NoAction;
  std::string rationale;
  bool logs_inconsistent = false;
};

// Deterministic arbitration: replays both logs against the protocol's
// legal-transition relation and blames the earliest confirmed violation.
// A violation counts only when the counterparty's log (or the ledger)
// corroborates it; breach claims nothing corroborates yield NONE/NO_ACTION
// with the inconsistency flagged.
Verdict resolve_conflict(const ProtocolLog& server_log, const ProtocolLog& gateway_log,
                         const PaymentLedger& ledger);

// Marks from the run timeline; absent marks belong to phases never reached.
struct Timeline {
  std::optional<std::uint64_t> t_start;
  std::optional<std::uint64_t> t_detect;
  std::optional<std::uint64_t> t_begin;
  std::optional<std::uint64_t> t_discovery;
  std::optional<std::uint64_t> t_spoof;
  std::optional<std::uint64_t> t_init;
  std::optional<std::uint64_t> t_learned;
  std::optional<std::uint64_t> t_paid;
  std::optional<std::uint64_t> t_deployed;
  std::optional<std::uint64_t> t_end;

  // Total protocol time per the timeline definition.
  std::optional<std::uint64_t> total_time() const;
  // Marks must be non-decreasing in timeline order; returns the first
  // violated pair, if any.
  std::optional<std::string> ordering_violation() const;
  nlohmann::json to_json() const;
};

}  // namespace remotegate
