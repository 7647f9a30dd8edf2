#pragma once

#include "remotegate/mechanism.hpp"
#include "remotegate/model.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace remotegate {

// Count of positions where the two label lists agree. Throws
// Errc::length_mismatch on unequal lengths.
int accuracy(std::span<const Label> truth, std::span<const Label> predicted);

// Classifier contract: cumulative fit over every example seen so far,
// deterministic prediction. Implementations must run in time polynomial
// in the example count.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void fit(std::span<const LabeledPacket> cumulative_pool) = 0;
  virtual Label predict(const Packet& packet) const = 0;
  virtual std::string name() const = 0;

  std::vector<Label> predict_all(std::span<const Packet> packets) const;
};

// Single-feature threshold rule: label `high` when feature[dim] >= threshold.
struct Stump {
  int dim = 0;
  std::uint32_t threshold = 0;
  Label high = Label::Attack;
  Label low = Label::Good;
};

// Reference learner: exhaustive search over (dimension, threshold,
// polarity) minimizing training error on the cumulative pool. Ties break
// toward the lowest dimension, then lowest threshold, then attack-above
// polarity. A single-label pool yields a constant predictor.
class StumpClassifier : public Classifier {
 public:
  void fit(std::span<const LabeledPacket> cumulative_pool) override;
  Label predict(const Packet& packet) const override;
  std::string name() const override { return "stump"; }

  const std::optional<Stump>& stump() const { return stump_; }
  int training_errors() const { return training_errors_; }

 private:
  std::optional<Stump> stump_;
  Label fallback_ = Label::Good;
  int training_errors_ = 0;
};

// Factory for config-selected classifiers; "stump" is the only built-in.
std::unique_ptr<Classifier> make_classifier(const std::string& name);

struct LearningRound {
  int round = 0;
  int train_size = 0;
  int test_size = 0;
  std::vector<Label> labels_true;
  std::vector<Label> labels_pred;
  int acc = 0;
  RewardLedgerRow ledger_row;
};

enum class LearningStatus {
  Accepted,
  RoundLimit,
  Timeout,
  AbortServerLied,
  AbortCommitFail,
  NoTrade,
};

const char* to_string(LearningStatus status);

struct LearningOutcome {
  LearningStatus status = LearningStatus::Timeout;
  std::vector<LearningRound> rounds;
  Rational final_reward{0};
};

}  // namespace remotegate
