#pragma once

// Extractor for a Markov chain over states 0..m-1. The exits of each state
// (the states that follow it) form an i.i.d. die stream; each state owns a
// BinarizationForest fed from that stream. The most recent exit of a state
// is held back and only delivered when the next exit of the same state
// arrives.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "randstream/dice_extractor.hpp"

namespace randstream {

using ChainState = std::uint32_t;

class UnknownState : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class MarkovExtractor {
 public:
  explicit MarkovExtractor(std::uint32_t state_count, DepthLimit depth_limit = std::nullopt);

  StepOutput process(ChainState x);
  std::size_t process_into(ChainState x, BitVector& out);

  std::uint32_t state_count() const noexcept { return m_; }
  std::optional<ChainState> previous() const noexcept { return prev_; }
  std::optional<ChainState> pending(ChainState s) const { return pending_.at(s); }
  /// Exits already handed to the forest of `s`, in delivery order.
  const std::vector<ChainState>& delivered(ChainState s) const { return delivered_.at(s); }
  /// nullptr until the first exit of `s` is delivered.
  const BinarizationForest* forest(ChainState s) const;

  const BitVector& output() const noexcept { return output_; }
  std::uint64_t symbols_consumed() const noexcept { return symbols_; }
  std::uint64_t messages_processed() const noexcept { return messages_; }

 private:
  std::uint32_t m_;
  DepthLimit depth_limit_;
  std::vector<std::optional<BinarizationForest>> forests_;
  std::vector<std::optional<ChainState>> pending_;
  std::vector<std::vector<ChainState>> delivered_;
  std::optional<ChainState> prev_;
  BitVector output_;
  std::uint64_t symbols_ = 0;
  std::uint64_t messages_ = 0;
};

/// States that immediately follow each occurrence of `s` in `chain`.
std::vector<ChainState> exit_stream(std::span<const ChainState> chain, ChainState s);

}  // namespace randstream
