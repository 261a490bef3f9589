#pragma once

// Extractor for an m-sided die. Each face is written as a fixed-width
// binary string (MSB first, 1 -> H, 0 -> T); the j-th symbol of a face goes
// to the coin extractor keyed by the face's first j symbols. All keyed
// extractors on a face's path are run top-down and their bits are
// concatenated into one stream.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "randstream/coin_extractor.hpp"

namespace randstream {

/// A face value in [0, m).
using DieFace = std::uint32_t;

/// Largest supported alphabet.
inline constexpr std::uint32_t kMaxAlphabet = 1u << 24;

/// Number of binary symbols per face, ceil(log2 m).
std::uint32_t face_width(std::uint32_t m);

/// A node of the binarization tree: the first `length` symbols of a face,
/// packed MSB-first into `bits` (H = 1).
struct Prefix {
  std::uint32_t length = 0;
  std::uint32_t bits = 0;

  /// Dense index over all prefixes: 2^length - 1 + bits.
  std::size_t index() const noexcept { return ((std::size_t{1} << length) - 1) + bits; }
  static Prefix from_coins(std::span<const CoinSymbol> coins);

  friend bool operator==(const Prefix&, const Prefix&) = default;
};

/// Throws std::out_of_range when face >= m.
CoinSequence binarize(DieFace face, std::uint32_t m);

/// Symbols at position |gamma| of every face whose encoding starts with
/// gamma, in input order.
CoinSequence prefix_stream(std::span<const DieFace> faces, std::uint32_t m, Prefix gamma);

class BinarizationForest {
 public:
  explicit BinarizationForest(std::uint32_t m, DepthLimit depth_limit = std::nullopt);

  StepOutput process(DieFace face);
  std::size_t process_into(DieFace face, BitVector& out);

  std::uint32_t alphabet_size() const noexcept { return m_; }
  std::uint32_t width() const noexcept { return width_; }
  DepthLimit depth_limit() const noexcept { return depth_limit_; }

  /// nullptr until the prefix first receives a symbol.
  const CoinExtractor* tree(Prefix gamma) const;
  std::size_t tree_count() const noexcept { return trees_.size(); }

  const BitVector& output() const noexcept { return output_; }
  std::uint64_t faces_consumed() const noexcept { return faces_; }
  std::uint64_t messages_processed() const noexcept { return messages_; }

 private:
  std::uint32_t m_;
  std::uint32_t width_;
  DepthLimit depth_limit_;
  // Keyed by Prefix::index(); created on first delivery.
  std::unordered_map<std::size_t, CoinExtractor> trees_;
  BitVector output_;
  std::uint64_t faces_ = 0;
  std::uint64_t messages_ = 0;
};

}  // namespace randstream
