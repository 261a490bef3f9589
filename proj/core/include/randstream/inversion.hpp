#pragma once

// Inverse of the coin extractor: a status tree together with the bits each
// node emitted determines the input sequence uniquely. Replacing the logs
// with any other logs of the same per-node lengths yields another input
// that drives the extractor through the same tree shape.

#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include "randstream/coin_extractor.hpp"

namespace randstream {

class InconsistentBundle : public std::runtime_error {
 public:
  InconsistentBundle(const std::string& path, const std::string& what)
      : std::runtime_error("inconsistent trace at node '" + path + "': " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rebuilds the input that produced `bundle`. Only trees grown without a
/// depth limit carry enough information; a childless node must not hold
/// emitted bits.
CoinSequence reconstruct(const TraceBundle& bundle);

/// Reconstructs with the logs replaced by `new_logs`. Every node of `bundle`
/// must appear in `new_logs` with a log of the same length.
CoinSequence flip_and_rebuild(const TraceBundle& bundle,
                              const std::map<std::string, BitVector>& new_logs);

/// True iff both inputs grow the same labeled tree and every node emits
/// the same number of bits.
bool equivalent(std::span<const CoinSymbol> x, std::span<const CoinSymbol> y,
                DepthLimit depth_limit = std::nullopt);

}  // namespace randstream
