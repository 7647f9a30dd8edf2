#include "remotegate/learning.hpp"

#include <algorithm>
#include <set>

namespace remotegate {

int accuracy(std::span<const Label> truth, std::span<const Label> predicted) {
  if (truth.size() != predicted.size()) {
    fail(Errc::length_mismatch, "label lists differ in length: " + std::to_string(truth.size()) +
                                    " vs " + std::to_string(predicted.size()));
  }
  int agree = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == predicted[i]) ++agree;
  }
  return agree;
}

std::vector<Label> Classifier::predict_all(std::span<const Packet> packets) const {
  std::vector<Label> out;
  out.reserve(packets.size());
  for (const Packet& p : packets) out.push_back(predict(p));
  return out;
}

namespace {

int stump_errors(const Stump& stump, std::span<const LabeledPacket> pool) {
  int errors = 0;
  for (const LabeledPacket& ex : pool) {
    const auto dim = static_cast<std::size_t>(stump.dim);
    const std::uint32_t v = dim < ex.packet.features.size() ? ex.packet.features[dim] : 0;
    const Label predicted = v >= stump.threshold ? stump.high : stump.low;
    if (predicted != ex.label) ++errors;
  }
  return errors;
}

}  // namespace

void StumpClassifier::fit(std::span<const LabeledPacket> cumulative_pool) {
  stump_.reset();
  fallback_ = Label::Good;
  training_errors_ = 0;
  if (cumulative_pool.empty()) return;

  const bool has_attack = std::any_of(cumulative_pool.begin(), cumulative_pool.end(),
                                      [](const LabeledPacket& e) { return e.label == Label::Attack; });
  const bool has_good = std::any_of(cumulative_pool.begin(), cumulative_pool.end(),
                                    [](const LabeledPacket& e) { return e.label == Label::Good; });
  if (!has_attack || !has_good) {
    fallback_ = has_attack ? Label::Attack : Label::Good;
    return;
  }

  std::size_t dims = 0;
  for (const LabeledPacket& ex : cumulative_pool) dims = std::max(dims, ex.packet.features.size());

  std::optional<Stump> best;
  int best_errors = static_cast<int>(cumulative_pool.size()) + 1;
  for (std::size_t dim = 0; dim < dims; ++dim) {
    std::set<std::uint32_t> values;
    for (const LabeledPacket& ex : cumulative_pool) {
      values.insert(dim < ex.packet.features.size() ? ex.packet.features[dim] : 0);
    }
    for (std::uint32_t threshold : values) {
      for (const Label high : {Label::Attack, Label::Good}) {
        const Stump candidate{static_cast<int>(dim), threshold, high,
                              high == Label::Attack ? Label::Good : Label::Attack};
        const int errors = stump_errors(candidate, cumulative_pool);
        if (errors < best_errors) {
          best_errors = errors;
          best = candidate;
        }
      }
    }
  }
  stump_ = best;
  training_errors_ = best_errors;
}

Label StumpClassifier::predict(const Packet& packet) const {
  if (!stump_) return fallback_;
  const auto dim = static_cast<std::size_t>(stump_->dim);
  const std::uint32_t v = dim < packet.features.size() ? packet.features[dim] : 0;
  return v >= stump_->threshold ? stump_->high : stump_->low;
}

std::unique_ptr<Classifier> make_classifier(const std::string& name) {
  if (name == "stump") return std::make_unique<StumpClassifier>();
  fail(Errc::validate, "unknown classifier: " + name);
}

const char* to_string(LearningStatus status) {
  switch (status) {
    case LearningStatus::Accepted: return "ACCEPTED";
    case LearningStatus::RoundLimit: return "ROUND_LIMIT";
    case LearningStatus::Timeout: return "TIMEOUT";
    case LearningStatus::AbortServerLied: return "ABORT_SERVER_LIED";
    case LearningStatus::AbortCommitFail: return "ABORT_COMMIT_FAIL";
    case LearningStatus::NoTrade: return "NO_TRADE";
  }
  return "?";
}

}  // namespace remotegate
