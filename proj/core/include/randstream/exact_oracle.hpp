#pragma once

// Exhaustive, exact check that the first k output bits of an extractor are
// uniform. Every input string of length n_max is explored; an input stops at
// its shortest prefix producing >= k bits, and that prefix's probability is
// credited to the k-bit word it starts with. Inputs that never reach k bits
// are credited to `incomplete`.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "randstream/markov_extractor.hpp"

namespace randstream {

/// Exact probability, always kept in lowest terms.
using ExactProb = mpq_class;

/// Parses "a/b", "a" or a decimal such as "0.25". Throws
/// std::invalid_argument if the text is malformed or outside [0, 1].
ExactProb parse_probability(std::string_view text);

class HorizonTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input-space caps applied unless `force` is set.
inline constexpr unsigned kMaxCoinHorizon = 14;
inline constexpr std::uint64_t kMaxDiceLeaves = 6561;    // 3^8
inline constexpr std::uint64_t kMaxMarkovLeaves = 1024;  // 2^10
inline constexpr unsigned kMaxOutputBits = 16;

struct UniformityReport {
  unsigned k = 0;
  unsigned n_max = 0;
  /// Indexed by the k-bit word read MSB-first.
  std::vector<ExactProb> mass;
  ExactProb incomplete;

  bool uniform() const;
  ExactProb total() const;
  ExactProb captured() const;
};

UniformityReport verify_coin(const ExactProb& p, DepthLimit depth, unsigned n_max, unsigned k,
                             bool force = false);

/// `dist[i]` is the probability of face i; the alphabet size is dist.size().
UniformityReport verify_dice(const std::vector<ExactProb>& dist, DepthLimit depth, unsigned n_max,
                             unsigned k, bool force = false);

/// Paths start at `start` and take n_max further transitions, so the
/// extractor sees n_max + 1 states. Rows of `transition` must sum to 1.
UniformityReport verify_markov(const std::vector<std::vector<ExactProb>>& transition,
                               ChainState start, DepthLimit depth, unsigned n_max, unsigned k,
                               bool force = false);

std::string format_report_text(const UniformityReport& report);
/// Header "output,mass"; one row per word, then "incomplete".
std::string format_report_csv(const UniformityReport& report);

}  // namespace randstream
