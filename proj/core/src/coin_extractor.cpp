#include "randstream/coin_extractor.hpp"

#include <algorithm>

namespace randstream {

StatusTree::StatusTree(DepthLimit depth_limit) : depth_limit_(depth_limit) {
  nodes_.emplace_back();
}

std::size_t StatusTree::deliver(CoinSymbol symbol, BitVector& out) {
  std::size_t messages = 0;
  pending_.clear();
  pending_.emplace_back(NodeId{0}, symbol);
  while (!pending_.empty()) {
    auto [id, incoming] = pending_.back();
    pending_.pop_back();
    ++messages;

    const NodeUpdate update = node_update(nodes_[id].label, incoming);
    nodes_[id].label = update.next;
    if (update.emit) {
      out.push_back(*update.emit);
      nodes_[id].bit_log.push_back(*update.emit);
    }
    if (!update.left) continue;

    const std::uint32_t depth = nodes_[id].depth;
    if (depth_limit_ && depth >= *depth_limit_) continue;  // messages dropped

    if (nodes_[id].left == kNone) {
      const auto left = static_cast<NodeId>(nodes_.size());
      nodes_.push_back(Node{NodeLabel::Phi, depth + 1, kNone, kNone, {}});
      nodes_.push_back(Node{NodeLabel::Phi, depth + 1, kNone, kNone, {}});
      nodes_[id].left = left;
      nodes_[id].right = left + 1;
      max_depth_ = std::max<std::size_t>(max_depth_, depth + 1);
    }
    // Stack order: the left message must be fully processed first.
    if (update.right) pending_.emplace_back(nodes_[id].right, *update.right);
    pending_.emplace_back(nodes_[id].left, *update.left);
  }
  return messages;
}

bool operator==(const StatusTree::Node& a, const StatusTree::Node& b) {
  return a.label == b.label && a.depth == b.depth && a.left == b.left && a.right == b.right &&
         a.bit_log == b.bit_log;
}

bool operator==(const StatusTree& a, const StatusTree& b) {
  return a.depth_limit_ == b.depth_limit_ && a.nodes_ == b.nodes_;
}

StepOutput CoinExtractor::process(CoinSymbol symbol) {
  StepOutput step;
  step.messages_processed = process_into(symbol, step.bits);
  return step;
}

std::size_t CoinExtractor::process_into(CoinSymbol symbol, BitVector& out) {
  const std::size_t before = out.size();
  const std::size_t messages = tree_.deliver(symbol, out);
  output_.insert(output_.end(), out.begin() + static_cast<std::ptrdiff_t>(before), out.end());
  ++symbols_consumed_;
  messages_ += messages;
  return messages;
}

TraceBundle CoinExtractor::snapshot_trace() const {
  TraceBundle bundle;
  std::vector<std::pair<StatusTree::NodeId, std::string>> stack{{0, ""}};
  while (!stack.empty()) {
    auto [id, path] = std::move(stack.back());
    stack.pop_back();
    const auto& node = tree_.node(id);
    bundle.nodes.emplace(path, TraceEntry{node.label, node.bit_log});
    if (node.left != StatusTree::kNone) {
      stack.emplace_back(node.left, path + 'L');
      stack.emplace_back(node.right, path + 'R');
    }
  }
  return bundle;
}

ExtractResult extract_bits(const std::function<std::optional<CoinSymbol>()>& source,
                           std::size_t k, DepthLimit depth_limit) {
  ExtractResult result;
  if (k == 0) return result;
  StatusTree tree(depth_limit);
  while (result.bits.size() < k) {
    const auto symbol = source();
    if (!symbol) {
      result.complete = false;
      return result;
    }
    result.messages_processed += tree.deliver(*symbol, result.bits);
    ++result.symbols_consumed;
  }
  result.bits.resize(k);
  return result;
}

ExtractResult extract_bits(std::span<const CoinSymbol> source, std::size_t k,
                           DepthLimit depth_limit) {
  std::size_t next = 0;
  return extract_bits(
      [&]() -> std::optional<CoinSymbol> {
        if (next == source.size()) return std::nullopt;
        return source[next++];
      },
      k, depth_limit);
}

CoinExtractor run_coin_extractor(std::span<const CoinSymbol> input, DepthLimit depth_limit) {
  CoinExtractor extractor(depth_limit);
  BitVector scratch;
  for (auto s : input) {
    scratch.clear();
    extractor.process_into(s, scratch);
  }
  return extractor;
}

}  // namespace randstream
