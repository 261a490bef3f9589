#include "randstream/markov_extractor.hpp"

#include <string>

namespace randstream {

MarkovExtractor::MarkovExtractor(std::uint32_t state_count, DepthLimit depth_limit)
    : m_(state_count),
      depth_limit_(depth_limit),
      forests_(state_count),
      pending_(state_count),
      delivered_(state_count) {
  face_width(state_count);  // validates the alphabet size
}

StepOutput MarkovExtractor::process(ChainState x) {
  StepOutput step;
  step.messages_processed = process_into(x, step.bits);
  return step;
}

std::size_t MarkovExtractor::process_into(ChainState x, BitVector& out) {
  if (x >= m_) {
    throw UnknownState("state " + std::to_string(x) + " outside [0, " + std::to_string(m_) +
                       ")");
  }
  std::size_t messages = 0;
  const std::size_t before = out.size();
  if (prev_) {
    const ChainState s = *prev_;
    if (const auto held = pending_[s]) {
      auto& forest = forests_[s];
      if (!forest) forest.emplace(m_, depth_limit_);
      messages = forest->process_into(*held, out);
      delivered_[s].push_back(*held);
    }
    pending_[s] = x;
  }
  prev_ = x;
  output_.insert(output_.end(), out.begin() + static_cast<std::ptrdiff_t>(before), out.end());
  ++symbols_;
  messages_ += messages;
  return messages;
}

const BinarizationForest* MarkovExtractor::forest(ChainState s) const {
  const auto& f = forests_.at(s);
  return f ? &*f : nullptr;
}

std::vector<ChainState> exit_stream(std::span<const ChainState> chain, ChainState s) {
  std::vector<ChainState> out;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i] == s) out.push_back(chain[i + 1]);
  }
  return out;
}

}  // namespace randstream
