#include "randstream/analysis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "randstream/coin_extractor.hpp"
#include "support/published_tables.hpp"
#include "support/reference_tree.hpp"

namespace randstream {
namespace {

// Direct transcription of the recursions without merging or pruning.
double naive_rho(double p, std::size_t d) {
  const double q = 1 - p;
  if (d == 0) return p * q;
  const double s = p * p + q * q;
  return p * q + 0.5 * naive_rho(s, d - 1) + 0.5 * s * naive_rho(p * p / s, d - 1);
}

double naive_time(double p, std::size_t d) {
  const double q = 1 - p;
  if (d == 0) return 1.0;
  const double s = p * p + q * q;
  return 1 + 0.5 * naive_time(s, d - 1) + 0.5 * s * naive_time(p * p / s, d - 1);
}

TEST(Entropy, Values) {
  EXPECT_DOUBLE_EQ(entropy(0.5), 1.0);
  EXPECT_NEAR(1 / entropy(0.3), 1.1347, 5e-5);
  EXPECT_EQ(entropy(0.0), 0.0);
  EXPECT_EQ(entropy(1.0), 0.0);
  EXPECT_THROW(entropy(-0.1), DomainError);
  EXPECT_THROW(entropy(1.5), DomainError);
  EXPECT_THROW(entropy(std::nan("")), DomainError);
}

TEST(Rho, FairCoinClosedForm) {
  EXPECT_DOUBLE_EQ(rho(0.5, 0), 0.25);
  for (std::size_t d = 0; d <= 30; ++d) {
    EXPECT_NEAR(rho(0.5, d), 1 - std::pow(0.75, static_cast<double>(d + 1)), 1e-12) << d;
  }
}

TEST(Rho, MatchesNaiveRecursion) {
  for (double p : {0.01, 0.1, 0.25, 0.3, 0.5, 0.77, 0.9}) {
    for (std::size_t d = 0; d <= 12; ++d) {
      EXPECT_NEAR(rho(p, d), naive_rho(p, d), 1e-12) << p << ' ' << d;
      EXPECT_NEAR(processing_time(p, d), naive_time(p, d), 1e-9) << p << ' ' << d;
    }
  }
}

TEST(Rho, TableCells) {
  EXPECT_NEAR(1 / rho(0.4, 15), 1.0408, 5e-5);
  EXPECT_NEAR(1 / rho(0.3, 7), 1.2748, 5e-5);
  EXPECT_NEAR(1 / rho(0.4, 3), 1.5190, 5e-5);
}

TEST(Rho, MonotoneBoundedAndSymmetric) {
  for (int i = 1; i < 100; ++i) {
    const double p = i / 100.0;
    double last = 0;
    for (std::size_t d = 0; d <= 16; ++d) {
      const double r = rho(p, d);
      EXPECT_GE(r, last - 1e-15);
      EXPECT_LE(r, entropy(p) + 1e-12);
      EXPECT_NEAR(r, rho(1 - p, d), 1e-12);
      last = r;
    }
    EXPECT_NEAR(rho(p, 0), p * (1 - p), 1e-15);
  }
}

TEST(Rho, DegenerateCoins) {
  EXPECT_EQ(rho(0.0, 5), 0.0);
  EXPECT_EQ(rho(1.0, 5), 0.0);
  EXPECT_THROW(rho(1.01, 2), DomainError);
}

TEST(Rho, ConvergesToEntropy) {
  for (double p : table_probabilities()) {
    const auto eval = rho_pruned(p, 60, 1e-10);
    EXPECT_LE(eval.value, entropy(p) + 1e-12);
    // The true value lies in [value, value + bound].
    EXPECT_LT(entropy(p) - eval.value, 1e-3) << p;
    EXPECT_LT(eval.truncation_bound, 1e-3);
    EXPECT_NEAR(rho(p, 60), eval.value, eval.truncation_bound + 1e-6);
    EXPECT_LT(std::abs(rho(p, 60) - entropy(p)), 1e-3);
  }
}

TEST(Rho, PrunedIsExactWithoutPruning) {
  for (std::size_t d = 0; d <= 10; ++d) {
    const auto eval = rho_pruned(0.2, d, 0.0);
    EXPECT_NEAR(eval.value, naive_rho(0.2, d), 1e-12);
    EXPECT_EQ(eval.truncation_bound, 0.0);
  }
}

TEST(ProcessingTime, Values) {
  for (double p : {0.1, 0.3, 0.5}) EXPECT_DOUBLE_EQ(processing_time(p, 0), 1.0);
  EXPECT_NEAR(processing_time(0.5, 1), 1.75, 1e-12);
  EXPECT_NEAR(processing_time(0.1, 2), 2.7413, 5e-5);
}

TEST(ProcessingTime, BoundedByDepthPlusOne) {
  for (int i = 1; i < 50; ++i) {
    for (std::size_t d = 0; d <= 15; ++d) {
      EXPECT_LE(processing_time(i / 100.0, d), static_cast<double>(d + 1) + 1e-12);
    }
  }
}

TEST(ProcessingTime, MatchesCountedMessages) {
  std::mt19937_64 rng(31);
  for (double p : {0.2, 0.5}) {
    for (std::size_t d : {1u, 4u, 7u}) {
      const auto coins = testing::random_coins(rng, 1000000, p);
      const auto ex = run_coin_extractor(coins, d);
      const double observed = static_cast<double>(ex.messages_processed()) / coins.size();
      EXPECT_NEAR(observed, processing_time(p, d), 0.01 * processing_time(p, d)) << p << ' ' << d;
    }
  }
}

TEST(Tables, ShapesAndValues) {
  const auto t1 = table_I();
  ASSERT_EQ(t1.size(), 10u);
  EXPECT_FALSE(t1.back().depth.has_value());
  for (std::size_t r = 0; r < 9; ++r) {
    ASSERT_EQ(t1[r].depth, table_depths()[r]);
    for (std::size_t c = 0; c < 5; ++c) {
      EXPECT_NEAR(t1[r].values[c], testing::kTossesPerBit[r][c], 5e-5);
    }
  }
  for (std::size_t c = 0; c < 5; ++c) {
    EXPECT_NEAR(t1.back().values[c], testing::kTossesPerBitLimit[c], 5e-5);
  }
  const auto t2 = table_II();
  ASSERT_EQ(t2.size(), 9u);
  for (std::size_t r = 0; r < 9; ++r) {
    for (std::size_t c = 0; c < 5; ++c) {
      EXPECT_NEAR(t2[r].values[c], testing::kMessagesPerSymbol[r][c], 5e-4);
    }
  }
}

TEST(Efficiency, Report) {
  const auto e = efficiency(0.3, 7);
  EXPECT_NEAR(e.tosses_per_bit, 1.2748, 5e-5);
  EXPECT_NEAR(e.efficiency_ratio, 1.1347 / 1.2748, 1e-3);
  EXPECT_DOUBLE_EQ(e.rho * e.tosses_per_bit, 1.0);
}

TEST(Simulation, MatchesAnalyticValues) {
  const auto a = simulate_efficiency(0.3, 7, 100000, 1);
  EXPECT_NEAR(a.tosses_per_bit, 1.2748, 0.02 * 1.2748);
  const auto b = simulate_efficiency(0.5, 0, 100000, 2);
  EXPECT_NEAR(b.tosses_per_bit, 4.0, 0.08);
  const auto c = simulate_efficiency(0.5, 15, 100000, 3);
  EXPECT_NEAR(c.messages_per_symbol, 3.9599, 0.02 * 3.9599);
  EXPECT_EQ(a.bits, 100000u);
}

TEST(Simulation, IsSeeded) {
  const auto a = simulate_efficiency(0.2, 3, 5000, 42);
  const auto b = simulate_efficiency(0.2, 3, 5000, 42);
  EXPECT_EQ(a.symbols_consumed, b.symbols_consumed);
  EXPECT_THROW(simulate_efficiency(1.0, 3, 10, 1), DomainError);
  EXPECT_THROW(simulate_efficiency(0.0, 3, 10, 1), DomainError);
}

}  // namespace
}  // namespace randstream
