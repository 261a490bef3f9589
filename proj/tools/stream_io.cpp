#include "stream_io.hpp"

#include <algorithm>
#include <cctype>

namespace randstream::cli {

std::optional<CoinSymbol> CoinTextReader::next() {
  int c;
  while ((c = in_.get()) != std::char_traits<char>::eof()) {
    const std::uint64_t at = offset_++;
    if (std::isspace(c)) continue;
    switch (c) {
      case 'H':
      case 'h':
        return CoinSymbol::H;
      case 'T':
      case 't':
        return CoinSymbol::T;
      default:
        throw BadSymbol(at, std::string(1, static_cast<char>(c)));
    }
  }
  return std::nullopt;
}

std::optional<CoinSymbol> CoinBitsReader::next() {
  if (remaining_ == 0) {
    const int c = in_.get();
    if (c == std::char_traits<char>::eof()) return std::nullopt;
    byte_ = static_cast<unsigned char>(c);
    remaining_ = 8;
  }
  --remaining_;
  return ((byte_ >> remaining_) & 1u) ? CoinSymbol::H : CoinSymbol::T;
}

namespace {

// Reads one whitespace-delimited token; returns its starting offset.
std::optional<std::uint64_t> read_token(std::istream& in, std::uint64_t& offset,
                                        std::string& token) {
  token.clear();
  int c;
  while ((c = in.peek()) != std::char_traits<char>::eof() && std::isspace(c)) {
    in.get();
    ++offset;
  }
  if (c == std::char_traits<char>::eof()) return std::nullopt;
  const std::uint64_t start = offset;
  while ((c = in.peek()) != std::char_traits<char>::eof() && !std::isspace(c)) {
    token.push_back(static_cast<char>(in.get()));
    ++offset;
  }
  return start;
}

std::uint32_t parse_index(const std::string& token, std::uint64_t at) {
  if (token.empty() || token.size() > 9 ||
      token.find_first_not_of("0123456789") != std::string::npos) {
    throw BadSymbol(at, token);
  }
  return static_cast<std::uint32_t>(std::stoul(token));
}

}  // namespace

std::optional<std::uint32_t> IndexTextReader::next() {
  if (m_ <= 10) {
    // Every index is one digit, so separators are optional.
    int c;
    while ((c = in_.get()) != std::char_traits<char>::eof()) {
      const std::uint64_t at = offset_++;
      if (std::isspace(c)) continue;
      const auto value = static_cast<std::uint32_t>(c - '0');
      if (c < '0' || c > '9' || value >= m_) throw BadSymbol(at, std::string(1, static_cast<char>(c)));
      return value;
    }
    return std::nullopt;
  }
  std::string token;
  const auto at = read_token(in_, offset_, token);
  if (!at) return std::nullopt;
  const std::uint32_t value = parse_index(token, *at);
  if (value >= m_) throw BadSymbol(*at, token);
  return value;
}

std::uint32_t infer_alphabet(std::istream& in) {
  std::uint64_t offset = 0;
  std::string token;
  std::uint32_t largest = 0;
  while (const auto at = read_token(in, offset, token)) {
    largest = std::max(largest, parse_index(token, *at));
  }
  return std::max<std::uint32_t>(2, largest + 1);
}

void BitWriter::put(Bit bit) {
  ++count_;
  if (format_ == OutputFormat::Ascii) {
    out_.put(bit ? '1' : '0');
    return;
  }
  acc_ = static_cast<unsigned char>((acc_ << 1) | (bit & 1u));
  if (++filled_ == 8) {
    out_.put(static_cast<char>(acc_));
    acc_ = 0;
    filled_ = 0;
  }
}

unsigned BitWriter::finish() {
  if (format_ == OutputFormat::Ascii) {
    out_.flush();
    return 8;
  }
  if (count_ == 0) return 0;
  const unsigned valid = filled_ == 0 ? 8 : filled_;
  if (filled_ != 0) {
    out_.put(static_cast<char>(acc_ << (8 - filled_)));
    acc_ = 0;
    filled_ = 0;
  }
  out_.flush();
  return valid;
}

}  // namespace randstream::cli
