#pragma once

// Streaming extractor for a two-symbol source. State is a binary "status
// tree": the root consumes raw tosses, and every node forwards derived
// symbols to its children so that information discarded by von Neumann's
// pairing is re-used further down.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "randstream/symbols.hpp"

namespace randstream {

struct NodeUpdate {
  NodeLabel next;
  std::optional<Bit> emit;
  std::optional<CoinSymbol> left;
  std::optional<CoinSymbol> right;

  friend bool operator==(const NodeUpdate&, const NodeUpdate&) = default;
};

/// Transition applied when a node labeled `label` receives `incoming`.
///
///   Phi  + y  -> y
///   0/1  + y  -> y, emitting the held bit
///   x    + y  -> (x == y ? Phi : (x == H ? One : Zero)), where x in {H, T};
///               the left child receives H if x != y else T, and the right
///               child receives x when x == y.
constexpr NodeUpdate node_update(NodeLabel label, CoinSymbol incoming) noexcept {
  switch (label) {
    case NodeLabel::Phi:
      return {to_label(incoming), std::nullopt, std::nullopt, std::nullopt};
    case NodeLabel::Zero:
      return {to_label(incoming), Bit{0}, std::nullopt, std::nullopt};
    case NodeLabel::One:
      return {to_label(incoming), Bit{1}, std::nullopt, std::nullopt};
    case NodeLabel::H:
      if (incoming == CoinSymbol::H) {
        return {NodeLabel::Phi, std::nullopt, CoinSymbol::T, CoinSymbol::H};
      }
      return {NodeLabel::One, std::nullopt, CoinSymbol::H, std::nullopt};
    case NodeLabel::T:
      if (incoming == CoinSymbol::T) {
        return {NodeLabel::Phi, std::nullopt, CoinSymbol::T, CoinSymbol::T};
      }
      return {NodeLabel::Zero, std::nullopt, CoinSymbol::H, std::nullopt};
  }
  return {label, std::nullopt, std::nullopt, std::nullopt};
}

/// Bits emitted while processing one input symbol, plus the number of
/// symbol deliveries it caused (the input itself included).
struct StepOutput {
  BitVector bits;
  std::size_t messages_processed = 0;
};

/// Arena-backed status tree. Node 0 is the root; children are always
/// allocated in pairs.
class StatusTree {
 public:
  using NodeId = std::uint32_t;
  static constexpr NodeId kNone = static_cast<NodeId>(-1);

  struct Node {
    NodeLabel label = NodeLabel::Phi;
    std::uint32_t depth = 0;
    NodeId left = kNone;
    NodeId right = kNone;
    BitVector bit_log;
  };

  explicit StatusTree(DepthLimit depth_limit = std::nullopt);

  /// Delivers `symbol` to the root and propagates depth-first, left
  /// subtree before right. Emitted bits are appended to `out` in emission
  /// order. Returns the number of deliveries.
  std::size_t deliver(CoinSymbol symbol, BitVector& out);

  const Node& node(NodeId id) const { return nodes_.at(id); }
  const Node& root() const { return nodes_.front(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  DepthLimit depth_limit() const noexcept { return depth_limit_; }
  std::size_t max_depth() const noexcept { return max_depth_; }

  friend bool operator==(const StatusTree&, const StatusTree&);

 private:
  std::vector<Node> nodes_;
  DepthLimit depth_limit_;
  std::size_t max_depth_ = 0;
  // Scratch stack reused across deliveries.
  std::vector<std::pair<NodeId, CoinSymbol>> pending_;
};

bool operator==(const StatusTree::Node& a, const StatusTree::Node& b);

/// Per-node view of a status tree, addressed by root-relative paths made of
/// 'L' and 'R' (the root is the empty path). Children of a node are present
/// iff path + "L" is present.
struct TraceEntry {
  NodeLabel label = NodeLabel::Phi;
  BitVector log;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct TraceBundle {
  std::map<std::string, TraceEntry> nodes;

  bool has_children(const std::string& path) const { return nodes.contains(path + 'L'); }

  friend bool operator==(const TraceBundle&, const TraceBundle&) = default;
};

/// A coin extractor together with its running totals.
class CoinExtractor {
 public:
  explicit CoinExtractor(DepthLimit depth_limit = std::nullopt) : tree_(depth_limit) {}

  StepOutput process(CoinSymbol symbol);

  /// Same as process() but appends the emitted bits to `out` instead of
  /// allocating; returns the message count.
  std::size_t process_into(CoinSymbol symbol, BitVector& out);

  const StatusTree& tree() const noexcept { return tree_; }
  const BitVector& output() const noexcept { return output_; }
  std::uint64_t symbols_consumed() const noexcept { return symbols_consumed_; }
  std::uint64_t bits_emitted() const noexcept { return output_.size(); }
  std::uint64_t messages_processed() const noexcept { return messages_; }

  TraceBundle snapshot_trace() const;

 private:
  StatusTree tree_;
  BitVector output_;
  std::uint64_t symbols_consumed_ = 0;
  std::uint64_t messages_ = 0;
};

struct ExtractResult {
  BitVector bits;
  std::uint64_t symbols_consumed = 0;
  std::uint64_t messages_processed = 0;
  /// False when the source ran dry before `k` bits were produced; `bits` then
  /// holds the partial output.
  bool complete = true;
};

/// Pulls symbols until at least `k` bits have been produced and returns the
/// first `k`. Surplus bits from the final symbol are dropped.
ExtractResult extract_bits(const std::function<std::optional<CoinSymbol>()>& source,
                           std::size_t k, DepthLimit depth_limit = std::nullopt);

ExtractResult extract_bits(std::span<const CoinSymbol> source, std::size_t k,
                           DepthLimit depth_limit = std::nullopt);

/// Runs a fresh extractor over the whole sequence.
CoinExtractor run_coin_extractor(std::span<const CoinSymbol> input,
                                 DepthLimit depth_limit = std::nullopt);

}  // namespace randstream
