#pragma once

// Symbol readers and bit writers for the command-line front end.
//
// Input formats:
//   text (coin)         'H'/'T', case-insensitive, whitespace ignored
//   text (dice/markov)  whitespace-separated decimal indices in [0, m)
//                       (for m <= 10 the separators are optional)
//   bits (coin)         raw bytes, MSB first, 1 -> H
// Output formats:
//   ascii   one '0'/'1' character per bit
//   packed  8 bits per byte, MSB first, last byte zero-padded

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "randstream/symbols.hpp"

namespace randstream::cli {

class BadSymbol : public std::runtime_error {
 public:
  BadSymbol(std::uint64_t offset, const std::string& token)
      : std::runtime_error("bad input symbol '" + token + "' at byte offset " +
                           std::to_string(offset)),
        offset_(offset) {}
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

class CoinTextReader {
 public:
  explicit CoinTextReader(std::istream& in) : in_(in) {}
  std::optional<CoinSymbol> next();

 private:
  std::istream& in_;
  std::uint64_t offset_ = 0;
};

class CoinBitsReader {
 public:
  explicit CoinBitsReader(std::istream& in) : in_(in) {}
  std::optional<CoinSymbol> next();

 private:
  std::istream& in_;
  unsigned char byte_ = 0;
  int remaining_ = 0;
};

/// Reads decimal indices; values >= m are rejected as bad symbols.
class IndexTextReader {
 public:
  IndexTextReader(std::istream& in, std::uint32_t m) : in_(in), m_(m) {}
  std::optional<std::uint32_t> next();

 private:
  std::istream& in_;
  std::uint32_t m_;
  std::uint64_t offset_ = 0;
};

/// Largest index in a whole text stream plus one (at least 2). Throws
/// BadSymbol on malformed tokens.
std::uint32_t infer_alphabet(std::istream& in);

enum class OutputFormat { Ascii, Packed };

class BitWriter {
 public:
  BitWriter(std::ostream& out, OutputFormat format) : out_(out), format_(format) {}

  void put(Bit bit);
  /// Writes any partial byte. Returns the number of valid bits in the last
  /// byte written: 8 on a byte boundary, 0 if nothing was written.
  unsigned finish();
  std::uint64_t bits_written() const noexcept { return count_; }

 private:
  std::ostream& out_;
  OutputFormat format_;
  unsigned char acc_ = 0;
  unsigned filled_ = 0;
  std::uint64_t count_ = 0;
};

}  // namespace randstream::cli
