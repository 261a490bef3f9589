#include "randstream/dice_extractor.hpp"

#include <bit>
#include <string>

namespace randstream {

std::uint32_t face_width(std::uint32_t m) {
  if (m < 2 || m > kMaxAlphabet) {
    throw std::invalid_argument("alphabet size must be in [2, 2^24], got " + std::to_string(m));
  }
  return static_cast<std::uint32_t>(std::bit_width(m - 1));
}

Prefix Prefix::from_coins(std::span<const CoinSymbol> coins) {
  Prefix p;
  for (auto c : coins) {
    p.bits = (p.bits << 1) | (c == CoinSymbol::H ? 1u : 0u);
    ++p.length;
  }
  return p;
}

CoinSequence binarize(DieFace face, std::uint32_t m) {
  const std::uint32_t w = face_width(m);
  if (face >= m) {
    throw std::out_of_range("face " + std::to_string(face) + " outside [0, " +
                            std::to_string(m) + ")");
  }
  CoinSequence out(w);
  for (std::uint32_t i = 0; i < w; ++i) {
    const bool bit = (face >> (w - 1 - i)) & 1u;
    out[i] = bit ? CoinSymbol::H : CoinSymbol::T;
  }
  return out;
}

CoinSequence prefix_stream(std::span<const DieFace> faces, std::uint32_t m, Prefix gamma) {
  const std::uint32_t w = face_width(m);
  if (gamma.length >= w) throw std::out_of_range("prefix longer than binarization depth");
  CoinSequence out;
  for (DieFace f : faces) {
    const CoinSequence code = binarize(f, m);
    const Prefix head = Prefix::from_coins(std::span(code).first(gamma.length));
    if (head == gamma) out.push_back(code[gamma.length]);
  }
  return out;
}

BinarizationForest::BinarizationForest(std::uint32_t m, DepthLimit depth_limit)
    : m_(m), width_(face_width(m)), depth_limit_(depth_limit) {}

StepOutput BinarizationForest::process(DieFace face) {
  StepOutput step;
  step.messages_processed = process_into(face, step.bits);
  return step;
}

std::size_t BinarizationForest::process_into(DieFace face, BitVector& out) {
  if (face >= m_) {
    throw std::out_of_range("face " + std::to_string(face) + " outside [0, " +
                            std::to_string(m_) + ")");
  }
  const std::size_t before = out.size();
  std::size_t messages = 0;
  Prefix gamma;
  for (std::uint32_t i = 0; i < width_; ++i) {
    const bool bit = (face >> (width_ - 1 - i)) & 1u;
    auto slot = trees_.try_emplace(gamma.index(), depth_limit_).first;
    messages += slot->second.process_into(bit ? CoinSymbol::H : CoinSymbol::T, out);
    gamma.bits = (gamma.bits << 1) | (bit ? 1u : 0u);
    ++gamma.length;
  }
  output_.insert(output_.end(), out.begin() + static_cast<std::ptrdiff_t>(before), out.end());
  ++faces_;
  messages_ += messages;
  return messages;
}

const CoinExtractor* BinarizationForest::tree(Prefix gamma) const {
  if (gamma.length >= width_) return nullptr;
  const auto it = trees_.find(gamma.index());
  return it == trees_.end() ? nullptr : &it->second;
}

}  // namespace randstream
