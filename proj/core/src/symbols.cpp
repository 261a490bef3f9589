#include "randstream/symbols.hpp"

namespace randstream {

CoinSequence parse_coins(std::string_view text) {
  CoinSequence out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == 'H') {
      out.push_back(CoinSymbol::H);
    } else if (c == 'T') {
      out.push_back(CoinSymbol::T);
    } else {
      throw std::invalid_argument("not a coin symbol: '" + std::string(1, c) + "'");
    }
  }
  return out;
}

std::string format_coins(const CoinSequence& coins) {
  std::string out;
  out.reserve(coins.size());
  for (auto s : coins) out.push_back(to_char(s));
  return out;
}

BitVector parse_bits(std::string_view text) {
  BitVector out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("not a bit: '" + std::string(1, c) + "'");
    }
    out.push_back(static_cast<Bit>(c - '0'));
  }
  return out;
}

std::string format_bits(const BitVector& bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(static_cast<char>('0' + b));
  return out;
}

}  // namespace randstream
