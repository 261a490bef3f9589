#include "randstream/exact_oracle.hpp"

#include <sstream>

namespace randstream {
namespace {

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (r > (std::uint64_t{1} << 62) / base) return std::uint64_t{1} << 62;
    r *= base;
  }
  return r;
}

void check_k(unsigned k) {
  if (k < 1 || k > kMaxOutputBits) {
    throw std::invalid_argument("k must be in [1, " + std::to_string(kMaxOutputBits) + "]");
  }
}

void check_distribution(const std::vector<ExactProb>& dist, const std::string& what) {
  ExactProb sum = 0;
  for (const auto& p : dist) {
    if (p < 0 || p > 1) throw std::invalid_argument(what + " entry outside [0, 1]");
    sum += p;
  }
  if (sum != 1) throw std::invalid_argument(what + " sums to " + sum.get_str() + ", not 1");
}

std::size_t word_index(const BitVector& bits, unsigned k) {
  std::size_t w = 0;
  for (unsigned i = 0; i < k; ++i) w = (w << 1) | bits[i];
  return w;
}

// Depth-first walk over the input tree. Each branch gets its own copy of the
// extractor; `probability(state, symbol)` gives the conditional probability
// of the next symbol.
template <class Extractor, class Feed, class Probability>
class Enumerator {
 public:
  Enumerator(unsigned alphabet, unsigned n_max, unsigned k, Feed feed, Probability probability)
      : alphabet_(alphabet), n_max_(n_max), k_(k), feed_(feed), probability_(probability) {
    report_.k = k;
    report_.n_max = n_max;
    report_.mass.assign(std::size_t{1} << k, ExactProb(0));
    report_.incomplete = 0;
  }

  UniformityReport run(const Extractor& initial, unsigned consumed) {
    walk(initial, ExactProb(1), consumed);
    return std::move(report_);
  }

 private:
  void walk(const Extractor& state, const ExactProb& weight, unsigned consumed) {
    if (consumed == n_max_) {
      report_.incomplete += weight;
      return;
    }
    for (unsigned a = 0; a < alphabet_; ++a) {
      const ExactProb pa = probability_(state, a);
      if (pa == 0) continue;
      Extractor next = state;
      feed_(next, a);
      const ExactProb w = weight * pa;
      if (next.output().size() >= k_) {
        report_.mass[word_index(next.output(), k_)] += w;
      } else {
        walk(next, w, consumed + 1);
      }
    }
  }

  unsigned alphabet_;
  unsigned n_max_;
  unsigned k_;
  Feed feed_;
  Probability probability_;
  UniformityReport report_;
};

template <class Extractor, class Feed, class Probability>
UniformityReport enumerate(const Extractor& initial, unsigned consumed, unsigned alphabet,
                           unsigned n_max, unsigned k, Feed feed, Probability probability) {
  Enumerator<Extractor, Feed, Probability> e(alphabet, n_max, k, feed, probability);
  return e.run(initial, consumed);
}

std::string word_string(std::size_t w, unsigned k) {
  std::string word(k, '0');
  for (unsigned i = 0; i < k; ++i) {
    if ((w >> (k - 1 - i)) & 1u) word[i] = '1';
  }
  return word;
}

}  // namespace

ExactProb parse_probability(std::string_view text) {
  std::string s(text);
  ExactProb value;
  const auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      // Decimal: digits.digits
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("bad decimal");
      }
      mpz_class num(digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(s.size() - dot - 1));
      value = ExactProb(num, den);
    } else {
      if (s.empty() || s.find_first_not_of("0123456789/") != std::string::npos) {
        throw std::invalid_argument("bad fraction");
      }
      value = ExactProb(s, 10);
    }
    if (value.get_den() == 0) throw std::invalid_argument("zero denominator");
    value.canonicalize();
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a probability: '" + s + "'");
  }
  if (value < 0 || value > 1) {
    throw std::invalid_argument("probability outside [0, 1]: '" + s + "'");
  }
  return value;
}

bool UniformityReport::uniform() const {
  for (const auto& m : mass) {
    if (m != mass.front()) return false;
  }
  return true;
}

ExactProb UniformityReport::captured() const {
  ExactProb sum = 0;
  for (const auto& m : mass) sum += m;
  return sum;
}

ExactProb UniformityReport::total() const { return captured() + incomplete; }

UniformityReport verify_coin(const ExactProb& p, DepthLimit depth, unsigned n_max, unsigned k,
                             bool force) {
  check_k(k);
  if (p < 0 || p > 1) throw std::invalid_argument("p outside [0, 1]");
  if (!force && n_max > kMaxCoinHorizon) {
    throw HorizonTooLarge("n_max " + std::to_string(n_max) + " exceeds cap " +
                          std::to_string(kMaxCoinHorizon));
  }
  const ExactProb q = 1 - p;
  return enumerate(
      CoinExtractor(depth), 0, 2, n_max, k,
      [](CoinExtractor& e, unsigned a) { e.process(a ? CoinSymbol::H : CoinSymbol::T); },
      [&](const CoinExtractor&, unsigned a) { return a ? p : q; });
}

UniformityReport verify_dice(const std::vector<ExactProb>& dist, DepthLimit depth, unsigned n_max,
                             unsigned k, bool force) {
  check_k(k);
  check_distribution(dist, "face distribution");
  const auto m = static_cast<std::uint32_t>(dist.size());
  face_width(m);
  if (!force && checked_pow(m, n_max) > kMaxDiceLeaves) {
    throw HorizonTooLarge("m^n_max exceeds cap " + std::to_string(kMaxDiceLeaves));
  }
  return enumerate(
      BinarizationForest(m, depth), 0, m, n_max, k,
      [](BinarizationForest& f, unsigned a) { f.process(a); },
      [&](const BinarizationForest&, unsigned a) { return dist[a]; });
}

UniformityReport verify_markov(const std::vector<std::vector<ExactProb>>& transition,
                               ChainState start, DepthLimit depth, unsigned n_max, unsigned k,
                               bool force) {
  check_k(k);
  const auto m = static_cast<std::uint32_t>(transition.size());
  for (const auto& row : transition) {
    if (row.size() != m) throw std::invalid_argument("transition matrix must be square");
    check_distribution(row, "transition row");
  }
  if (start >= m) throw UnknownState("start state outside the chain");
  if (!force && checked_pow(m, n_max) > kMaxMarkovLeaves) {
    throw HorizonTooLarge("m^n_max exceeds cap " + std::to_string(kMaxMarkovLeaves));
  }
  MarkovExtractor initial(m, depth);
  initial.process(start);
  return enumerate(
      initial, 0, m, n_max, k, [](MarkovExtractor& e, unsigned a) { e.process(a); },
      [&](const MarkovExtractor& e, unsigned a) { return transition[*e.previous()][a]; });
}

std::string format_report_text(const UniformityReport& report) {
  std::ostringstream out;
  out << "uniform: " << (report.uniform() ? "yes" : "no") << '\n';
  out << "k: " << report.k << '\n';
  out << "n_max: " << report.n_max << '\n';
  for (std::size_t w = 0; w < report.mass.size(); ++w) {
    const std::string word = word_string(w, report.k);
    out << word << ": " << report.mass[w].get_str() << '\n';
  }
  out << "incomplete: " << report.incomplete.get_str() << '\n';
  out << "total: " << report.total().get_str() << '\n';
  return out.str();
}

std::string format_report_csv(const UniformityReport& report) {
  std::ostringstream out;
  out << "output,mass\n";
  for (std::size_t w = 0; w < report.mass.size(); ++w) {
    const std::string word = word_string(w, report.k);
    out << word << ',' << report.mass[w].get_str() << '\n';
  }
  out << "incomplete," << report.incomplete.get_str() << '\n';
  return out.str();
}

}  // namespace randstream
