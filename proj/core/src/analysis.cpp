#include "randstream/analysis.hpp"

#include <cmath>
#include <random>
#include <string>
#include <unordered_map>

#include "randstream/coin_extractor.hpp"

namespace randstream {
namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("probability must lie in [0, 1], got " + std::to_string(p));
  }
}

double canonical(double p) { return p <= 0.5 ? p : 1.0 - p; }

struct LevelSums {
  double rho = 0.0;
  double messages = 0.0;
  double dropped = 0.0;
};

// Walks the recursion tree level by level. Nodes carrying the same
// (canonical) probability are merged by adding their weights, which keeps
// the frontier small. With a positive tolerance, a child whose weight times
// its entropy is below it is cut: it still contributes its own pq term, and
// the rest of its subtree (at most weight * (H - pq)) is added to `dropped`.
LevelSums expand(double p, std::size_t depth, double tolerance) {
  LevelSums sums;
  std::unordered_map<double, double> level{{canonical(p), 1.0}};
  std::unordered_map<double, double> next;
  for (std::size_t j = 0; j <= depth; ++j) {
    next.clear();
    for (const auto& [x, w] : level) {
      const double y = 1.0 - x;
      sums.rho += w * x * y;
      sums.messages += w;
      if (j == depth) continue;
      const double s = x * x + y * y;
      const double children[2][2] = {{canonical(s), 0.5 * w}, {canonical(x * x / s), 0.5 * s * w}};
      for (const auto& [cx, cw] : children) {
        if (tolerance > 0.0) {
          const double h = entropy(cx);
          if (cw * h < tolerance) {
            sums.rho += cw * cx * (1.0 - cx);
            sums.dropped += cw * (h - cx * (1.0 - cx));
            continue;
          }
        }
        next[cx] += cw;
      }
    }
    level.swap(next);
  }
  return sums;
}

}  // namespace

CoinModel::CoinModel(double heads_probability) : p(heads_probability) {
  check_probability(p);
}

double entropy(double p) {
  check_probability(p);
  if (p == 0.0 || p == 1.0) return 0.0;
  const double q = 1.0 - p;
  return -p * std::log2(p) - q * std::log2(q);
}

double rho(double p, std::size_t depth) {
  // Up to depth 20 the frontier is small enough to evaluate exactly. Beyond
  // that the pruned value is low by at most a few 1e-5 (see rho_pruned).
  return rho_pruned(p, depth, depth <= 20 ? 0.0 : 1e-10).value;
}

RhoEvaluation rho_pruned(double p, std::size_t depth, double tolerance) {
  check_probability(p);
  const LevelSums sums = expand(p, depth, tolerance);
  return {sums.rho, sums.dropped};
}

double processing_time(double p, std::size_t depth) {
  check_probability(p);
  return expand(p, depth, 0.0).messages;
}

EfficiencyReport efficiency(double p, std::size_t depth) {
  EfficiencyReport r;
  r.depth = depth;
  r.p = p;
  r.rho = rho(p, depth);
  r.tosses_per_bit = 1.0 / r.rho;
  r.entropy = entropy(p);
  r.efficiency_ratio = r.entropy > 0.0 ? r.rho / r.entropy : 0.0;
  return r;
}

const std::vector<std::size_t>& table_depths() {
  static const std::vector<std::size_t> depths{0, 1, 2, 3, 4, 5, 7, 10, 15};
  return depths;
}

const std::vector<double>& table_probabilities() {
  static const std::vector<double> ps{0.1, 0.2, 0.3, 0.4, 0.5};
  return ps;
}

std::vector<TableRow> efficiency_table(TableMetric metric, const std::vector<std::size_t>& depths,
                                       const std::vector<double>& ps) {
  for (double p : ps) check_probability(p);
  std::vector<TableRow> rows;
  for (std::size_t d : depths) {
    TableRow row{d, {}};
    for (double p : ps) {
      row.values.push_back(metric == TableMetric::TossesPerBit ? 1.0 / rho(p, d)
                                                               : processing_time(p, d));
    }
    rows.push_back(std::move(row));
  }
  if (metric == TableMetric::TossesPerBit) {
    TableRow limit{std::nullopt, {}};
    for (double p : ps) limit.values.push_back(1.0 / entropy(p));
    rows.push_back(std::move(limit));
  }
  return rows;
}

std::vector<TableRow> table_I() {
  return efficiency_table(TableMetric::TossesPerBit, table_depths(), table_probabilities());
}

std::vector<TableRow> table_II() {
  return efficiency_table(TableMetric::MessagesPerSymbol, table_depths(), table_probabilities());
}

SimulationResult simulate_efficiency(double p, DepthLimit depth, std::uint64_t k,
                                     std::uint64_t seed) {
  check_probability(p);
  if (p == 0.0 || p == 1.0) throw DomainError("a deterministic coin never yields bits");
  if (k == 0) throw DomainError("k must be positive");

  std::mt19937_64 engine(seed);
  StatusTree tree(depth);
  BitVector bits;
  bits.reserve(k + 64);
  SimulationResult result;
  std::uint64_t messages = 0;
  while (bits.size() < k) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    messages += tree.deliver(u < p ? CoinSymbol::H : CoinSymbol::T, bits);
    ++result.symbols_consumed;
  }
  result.bits = k;
  result.tosses_per_bit = static_cast<double>(result.symbols_consumed) / static_cast<double>(k);
  result.messages_per_symbol =
      static_cast<double>(messages) / static_cast<double>(result.symbols_consumed);
  return result;
}

}  // namespace randstream
