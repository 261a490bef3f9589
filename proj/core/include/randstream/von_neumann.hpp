#pragma once

#include <optional>
#include <span>

#include "randstream/symbols.hpp"

namespace randstream {

/// Classic pairwise debiasing: HT -> 1, TH -> 0, HH/TT -> nothing. The bit is
/// produced as soon as its pair completes.
class VonNeumannExtractor {
 public:
  std::optional<Bit> process(CoinSymbol symbol) noexcept {
    if (!held_) {
      held_ = symbol;
      return std::nullopt;
    }
    const CoinSymbol first = *held_;
    held_.reset();
    if (first == symbol) return std::nullopt;
    return first == CoinSymbol::H ? Bit{1} : Bit{0};
  }

  bool holding() const noexcept { return held_.has_value(); }

 private:
  std::optional<CoinSymbol> held_;
};

BitVector von_neumann(std::span<const CoinSymbol> input);

}  // namespace randstream
