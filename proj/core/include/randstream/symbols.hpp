#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace randstream {

/// One toss of a two-sided source.
enum class CoinSymbol : std::uint8_t { T = 0, H = 1 };

/// Label stored at a status-tree node. Every node starts at Phi.
enum class NodeLabel : std::uint8_t { Phi, H, T, Zero, One };

/// Output bits are stored one per byte, each 0 or 1.
using Bit = std::uint8_t;
using BitVector = std::vector<Bit>;
using CoinSequence = std::vector<CoinSymbol>;

constexpr char to_char(CoinSymbol s) noexcept { return s == CoinSymbol::H ? 'H' : 'T'; }

constexpr char to_char(NodeLabel l) noexcept {
  switch (l) {
    case NodeLabel::Phi: return '.';
    case NodeLabel::H: return 'H';
    case NodeLabel::T: return 'T';
    case NodeLabel::Zero: return '0';
    case NodeLabel::One: return '1';
  }
  return '?';
}

constexpr NodeLabel to_label(CoinSymbol s) noexcept {
  return s == CoinSymbol::H ? NodeLabel::H : NodeLabel::T;
}

constexpr CoinSymbol flip(CoinSymbol s) noexcept {
  return s == CoinSymbol::H ? CoinSymbol::T : CoinSymbol::H;
}

/// Parses a string of 'H'/'T' characters. Throws std::invalid_argument on
/// anything else.
CoinSequence parse_coins(std::string_view text);
std::string format_coins(const CoinSequence& coins);

/// Parses a string of '0'/'1' characters.
BitVector parse_bits(std::string_view text);
std::string format_bits(const BitVector& bits);

/// Depth limit of a status tree; nullopt means the tree grows without bound.
using DepthLimit = std::optional<std::size_t>;

}  // namespace randstream
