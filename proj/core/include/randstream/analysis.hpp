#pragma once

// Asymptotic efficiency of the depth-limited coin extractor.
//
// A node fed i.i.d. symbols with P(H) = p emits pq bits per symbol. Its left
// child receives one symbol per pair, T for a concordant pair, so P(T) is
// p^2 + q^2; its right child receives the repeated symbol of each concordant
// pair, so P(H) is p^2 / (p^2 + q^2). Unrolling that split over d levels
// gives the bits-per-toss rate rho_d(p) and the deliveries-per-toss cost
// t_d(p). Both are symmetric in p and q.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "randstream/symbols.hpp"

namespace randstream {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct CoinModel {
  double p = 0.5;

  /// Throws DomainError unless 0 <= p <= 1.
  explicit CoinModel(double heads_probability);
  double q() const noexcept { return 1.0 - p; }
};

/// Binary entropy in bits, with 0 log 0 = 0.
double entropy(double p);

/// Expected output bits per input toss of the depth-d extractor.
double rho(double p, std::size_t depth);

/// Expected deliveries (messages) per input toss of the depth-d extractor.
double processing_time(double p, std::size_t depth);

struct RhoEvaluation {
  double value = 0.0;
  /// Upper bound on the mass dropped by pruning; the exact rate lies in
  /// [value, value + truncation_bound].
  double truncation_bound = 0.0;
};

/// rho() for large depths. Subtrees whose total contribution is provably
/// below `tolerance` are cut off and accounted for in truncation_bound.
RhoEvaluation rho_pruned(double p, std::size_t depth, double tolerance);

struct EfficiencyReport {
  std::size_t depth = 0;
  double p = 0.5;
  double rho = 0.0;
  double tosses_per_bit = 0.0;
  double entropy = 0.0;
  /// rho / entropy, i.e. lower bound on tosses per bit over the real value.
  double efficiency_ratio = 0.0;
};

EfficiencyReport efficiency(double p, std::size_t depth);

/// Depths and probabilities of the standard efficiency tables.
const std::vector<std::size_t>& table_depths();
const std::vector<double>& table_probabilities();

struct TableRow {
  /// nullopt marks the unlimited-depth row (1 / entropy).
  std::optional<std::size_t> depth;
  std::vector<double> values;
};

enum class TableMetric { TossesPerBit, MessagesPerSymbol };

/// One row per depth, one column per probability. TossesPerBit tables end
/// with the unlimited-depth row.
std::vector<TableRow> efficiency_table(TableMetric metric, const std::vector<std::size_t>& depths,
                                       const std::vector<double>& ps);

/// Tosses-per-bit table over the standard grid, including the limit row.
std::vector<TableRow> table_I();
/// Messages-per-toss table over the standard grid.
std::vector<TableRow> table_II();

struct SimulationResult {
  double tosses_per_bit = 0.0;
  double messages_per_symbol = 0.0;
  std::uint64_t symbols_consumed = 0;
  std::uint64_t bits = 0;
};

/// Extracts k bits from a seeded pseudorandom p-coin (std::mt19937_64; a
/// toss is H iff the top 53 bits of a draw, scaled to [0,1), fall below p).
SimulationResult simulate_efficiency(double p, DepthLimit depth, std::uint64_t k,
                                     std::uint64_t seed);

}  // namespace randstream
