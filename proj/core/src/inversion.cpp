#include "randstream/inversion.hpp"

namespace randstream {
namespace {

CoinSequence rebuild(const TraceBundle& bundle, const std::string& path) {
  const auto it = bundle.nodes.find(path);
  if (it == bundle.nodes.end()) throw InconsistentBundle(path, "node missing");
  const TraceEntry& entry = it->second;

  // Y: bits of this node, followed by a held 0/1 label.
  BitVector y = entry.log;
  if (entry.label == NodeLabel::Zero) y.push_back(0);
  if (entry.label == NodeLabel::One) y.push_back(1);

  CoinSequence left;
  CoinSequence right;
  const bool has_left = bundle.nodes.contains(path + 'L');
  const bool has_right = bundle.nodes.contains(path + 'R');
  if (has_left != has_right) throw InconsistentBundle(path, "children must come in pairs");
  if (has_left) {
    left = rebuild(bundle, path + 'L');
    right = rebuild(bundle, path + 'R');
  }
  if (left.size() != y.size() + right.size()) {
    throw InconsistentBundle(path, "left stream length " + std::to_string(left.size()) +
                                       " != emitted " + std::to_string(y.size()) +
                                       " + right stream " + std::to_string(right.size()));
  }

  CoinSequence x;
  x.reserve(2 * left.size() + 1);
  std::size_t yi = 0;
  std::size_t ri = 0;
  for (CoinSymbol l : left) {
    if (l == CoinSymbol::H) {
      if (yi == y.size()) throw InconsistentBundle(path, "emitted bits exhausted");
      if (y[yi++] == 1) {
        x.push_back(CoinSymbol::H);
        x.push_back(CoinSymbol::T);
      } else {
        x.push_back(CoinSymbol::T);
        x.push_back(CoinSymbol::H);
      }
    } else {
      if (ri == right.size()) throw InconsistentBundle(path, "right stream exhausted");
      const CoinSymbol r = right[ri++];
      x.push_back(r);
      x.push_back(r);
    }
  }
  if (yi != y.size() || ri != right.size()) {
    throw InconsistentBundle(path, "streams not consumed in step");
  }
  if (entry.label == NodeLabel::H) x.push_back(CoinSymbol::H);
  if (entry.label == NodeLabel::T) x.push_back(CoinSymbol::T);
  return x;
}

}  // namespace

CoinSequence reconstruct(const TraceBundle& bundle) { return rebuild(bundle, ""); }

CoinSequence flip_and_rebuild(const TraceBundle& bundle,
                              const std::map<std::string, BitVector>& new_logs) {
  if (new_logs.size() != bundle.nodes.size()) {
    throw LengthMismatch("expected logs for " + std::to_string(bundle.nodes.size()) +
                         " nodes, got " + std::to_string(new_logs.size()));
  }
  TraceBundle flipped = bundle;
  for (auto& [path, entry] : flipped.nodes) {
    const auto it = new_logs.find(path);
    if (it == new_logs.end()) throw LengthMismatch("no log for node '" + path + "'");
    if (it->second.size() != entry.log.size()) {
      throw LengthMismatch("log length changed at node '" + path + "'");
    }
    entry.log = it->second;
  }
  return reconstruct(flipped);
}

bool equivalent(std::span<const CoinSymbol> x, std::span<const CoinSymbol> y,
                DepthLimit depth_limit) {
  const TraceBundle a = run_coin_extractor(x, depth_limit).snapshot_trace();
  const TraceBundle b = run_coin_extractor(y, depth_limit).snapshot_trace();
  if (a.nodes.size() != b.nodes.size()) return false;
  for (auto ia = a.nodes.begin(), ib = b.nodes.begin(); ia != a.nodes.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (ia->second.label != ib->second.label) return false;
    if (ia->second.log.size() != ib->second.log.size()) return false;
  }
  return true;
}

}  // namespace randstream
