#include "randstream/von_neumann.hpp"

namespace randstream {

BitVector von_neumann(std::span<const CoinSymbol> input) {
  BitVector out;
  out.reserve(input.size() / 4);
  VonNeumannExtractor vn;
  for (auto s : input) {
    if (auto bit = vn.process(s)) out.push_back(*bit);
  }
  return out;
}

}  // namespace randstream
