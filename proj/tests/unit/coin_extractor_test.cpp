#include "randstream/coin_extractor.hpp"

#include <gtest/gtest.h>

#include <random>

#include "randstream/von_neumann.hpp"
#include "support/reference_tree.hpp"

namespace randstream {
namespace {

using testing::ReferenceTree;
using testing::random_coins;

constexpr auto H = CoinSymbol::H;
constexpr auto T = CoinSymbol::T;

TEST(NodeUpdate, MatchesRuleTable) {
  using L = NodeLabel;
  const NodeUpdate none_h{L::H, std::nullopt, std::nullopt, std::nullopt};
  const NodeUpdate none_t{L::T, std::nullopt, std::nullopt, std::nullopt};
  EXPECT_EQ(node_update(L::Phi, H), none_h);
  EXPECT_EQ(node_update(L::Phi, T), none_t);
  EXPECT_EQ(node_update(L::Zero, H), (NodeUpdate{L::H, Bit{0}, std::nullopt, std::nullopt}));
  EXPECT_EQ(node_update(L::Zero, T), (NodeUpdate{L::T, Bit{0}, std::nullopt, std::nullopt}));
  EXPECT_EQ(node_update(L::One, H), (NodeUpdate{L::H, Bit{1}, std::nullopt, std::nullopt}));
  EXPECT_EQ(node_update(L::One, T), (NodeUpdate{L::T, Bit{1}, std::nullopt, std::nullopt}));
  EXPECT_EQ(node_update(L::H, H), (NodeUpdate{L::Phi, std::nullopt, T, H}));
  EXPECT_EQ(node_update(L::T, T), (NodeUpdate{L::Phi, std::nullopt, T, T}));
  EXPECT_EQ(node_update(L::H, T), (NodeUpdate{L::One, std::nullopt, H, std::nullopt}));
  EXPECT_EQ(node_update(L::T, H), (NodeUpdate{L::Zero, std::nullopt, H, std::nullopt}));
}

TEST(NodeUpdate, IsConstexpr) {
  static_assert(node_update(NodeLabel::One, CoinSymbol::T).emit == Bit{1});
  static_assert(node_update(NodeLabel::T, CoinSymbol::H).next == NodeLabel::Zero);
}

TEST(CoinExtractor, WorkedTraceEmitsAtThirdAndSixthSymbol) {
  CoinExtractor ex;
  const auto input = parse_coins("HTTTHT");
  std::vector<std::size_t> emitted_at;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const auto step = ex.process(input[i]);
    EXPECT_GE(step.messages_processed, 1u);
    for (std::size_t b = 0; b < step.bits.size(); ++b) emitted_at.push_back(i + 1);
  }
  EXPECT_EQ(format_bits(ex.output()), "11");
  EXPECT_EQ(emitted_at, (std::vector<std::size_t>{3, 6}));
  EXPECT_EQ(ex.symbols_consumed(), 6u);
  EXPECT_EQ(ex.bits_emitted(), 2u);
}

TEST(CoinExtractor, SingleSymbolEmitsNothing) {
  CoinExtractor ex;
  const auto step = ex.process(H);
  EXPECT_TRUE(step.bits.empty());
  EXPECT_EQ(step.messages_processed, 1u);
}

TEST(CoinExtractor, HeldBitWaitsForNextSymbol) {
  CoinExtractor ex;
  ex.process(H);
  ex.process(T);
  EXPECT_TRUE(ex.output().empty());
  EXPECT_EQ(ex.tree().root().label, NodeLabel::One);
  ex.process(H);
  EXPECT_EQ(format_bits(ex.output()), "1");
}

TEST(CoinExtractor, NoFlushAtEndOfInput) {
  // HT leaves a One at the root; it is never emitted without another symbol.
  const auto ex = run_coin_extractor(parse_coins("HT"));
  EXPECT_TRUE(ex.output().empty());
}

TEST(ExtractBits, WorkedExample) {
  const auto input = parse_coins("HTTTHTHHTT");
  const auto r = extract_bits(std::span(input), 2);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(format_bits(r.bits), "11");
  EXPECT_EQ(r.symbols_consumed, 6u);
}

TEST(ExtractBits, ZeroBitsConsumesNothing) {
  const auto input = parse_coins("HTTT");
  const auto r = extract_bits(std::span(input), 0);
  EXPECT_TRUE(r.complete);
  EXPECT_TRUE(r.bits.empty());
  EXPECT_EQ(r.symbols_consumed, 0u);
}

TEST(ExtractBits, ConstantSourceIsExhausted) {
  const CoinSequence all_heads(100, H);
  const auto r = extract_bits(std::span(all_heads), 1);
  EXPECT_FALSE(r.complete);
  EXPECT_TRUE(r.bits.empty());
  EXPECT_EQ(r.symbols_consumed, 100u);
}

TEST(ExtractBits, SurplusBitsAreDropped) {
  // Find a symbol that emits two bits at once and ask for only the first.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto input = random_coins(rng, 64);
    CoinExtractor ex;
    for (std::size_t i = 0; i < input.size(); ++i) {
      const std::size_t before = ex.bits_emitted();
      if (ex.process(input[i]).bits.size() >= 2) {
        const auto r = extract_bits(std::span(input), before + 1);
        EXPECT_EQ(r.symbols_consumed, i + 1);
        EXPECT_EQ(r.bits.size(), before + 1);
        EXPECT_TRUE(std::equal(r.bits.begin(), r.bits.end(), ex.output().begin()));
        return;
      }
    }
  }
  FAIL() << "no multi-bit step found";
}

TEST(ExtractBits, GeneratorSourceMatchesSpan) {
  std::mt19937_64 rng(11);
  const auto input = random_coins(rng, 500, 0.3);
  std::size_t i = 0;
  const auto a = extract_bits(
      [&]() -> std::optional<CoinSymbol> {
        if (i == input.size()) return std::nullopt;
        return input[i++];
      },
      40, 3);
  const auto b = extract_bits(std::span(input), 40, 3);
  EXPECT_EQ(a.bits, b.bits);
  EXPECT_EQ(a.symbols_consumed, b.symbols_consumed);
}

TEST(SnapshotTrace, FreshSession) {
  const CoinExtractor ex;
  const auto trace = ex.snapshot_trace();
  ASSERT_EQ(trace.nodes.size(), 1u);
  EXPECT_EQ(trace.nodes.at("").label, NodeLabel::Phi);
  EXPECT_TRUE(trace.nodes.at("").log.empty());
}

TEST(SnapshotTrace, AfterSingleSymbol) {
  const auto trace = run_coin_extractor(parse_coins("H")).snapshot_trace();
  ASSERT_EQ(trace.nodes.size(), 1u);
  EXPECT_EQ(trace.nodes.at("").label, NodeLabel::H);
}

TEST(SnapshotTrace, WorkedExampleLogs) {
  const auto ex = run_coin_extractor(parse_coins("HTTTHT"));
  const auto trace = ex.snapshot_trace();
  EXPECT_EQ(format_bits(trace.nodes.at("").log), "1");
  EXPECT_EQ(format_bits(trace.nodes.at("L").log), "1");
  for (const auto& [path, entry] : trace.nodes) {
    if (path != "" && path != "L") { EXPECT_TRUE(entry.log.empty()) << path; }
  }
  // Strict rule application leaves the second-level node holding H.
  EXPECT_EQ(trace.nodes.at("").label, NodeLabel::One);
  EXPECT_EQ(trace.nodes.at("L").label, NodeLabel::H);
  EXPECT_EQ(trace.nodes.at("R").label, NodeLabel::T);
  EXPECT_EQ(trace.nodes.at("LL").label, NodeLabel::H);
  EXPECT_EQ(trace.nodes.at("LR").label, NodeLabel::Phi);
  EXPECT_EQ(trace.nodes.size(), 5u);
}

TEST(SnapshotTrace, DoesNotMutate) {
  auto ex = run_coin_extractor(parse_coins("HTTTHTHH"));
  const StatusTree before = ex.tree();
  (void)ex.snapshot_trace();
  EXPECT_TRUE(before == ex.tree());
}

// --- Properties -----------------------------------------------------------

class CoinProperties : public ::testing::TestWithParam<int> {};

DepthLimit depth_for(int param) {
  return param < 0 ? DepthLimit{} : DepthLimit{static_cast<std::size_t>(param)};
}

TEST_P(CoinProperties, AgreesWithReferenceTree) {
  const DepthLimit depth = depth_for(GetParam());
  std::mt19937_64 rng(1000 + GetParam());
  for (int trial = 0; trial < 200; ++trial) {
    const double p = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const auto input = random_coins(rng, 1 + rng() % 400, p);
    CoinExtractor ex(depth);
    ReferenceTree ref(depth);
    for (auto s : input) {
      const auto step = ex.process(s);
      ASSERT_EQ(step.messages_processed, ref.feed(s));
    }
    ASSERT_EQ(ex.output(), ref.output());

    const auto trace = ex.snapshot_trace();
    std::size_t ref_nodes = 0;
    std::size_t logged = 0;
    ref.visit([&](const std::string& path, const testing::RefNode& u) {
      ++ref_nodes;
      logged += u.log.size();
      const auto& entry = trace.nodes.at(path);
      EXPECT_EQ(entry.label, u.label);
      EXPECT_EQ(entry.log, u.log);
      // Pair structure: an even number of received symbols leaves the node
      // in {Phi, 0, 1}; an odd number in {H, T}.
      const bool odd = u.received.size() % 2 == 1;
      const bool holds_symbol = u.label == NodeLabel::H || u.label == NodeLabel::T;
      EXPECT_EQ(odd, holds_symbol) << path;
      if (depth) { EXPECT_LE(u.depth, *depth); }
      EXPECT_EQ(u.left == nullptr, u.right == nullptr);
    });
    EXPECT_EQ(ref_nodes, trace.nodes.size());
    EXPECT_EQ(logged, ex.output().size());
  }
}

TEST_P(CoinProperties, OutputIsAStream) {
  const DepthLimit depth = depth_for(GetParam());
  std::mt19937_64 rng(2000 + GetParam());
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = random_coins(rng, rng() % 200);
    const auto y = random_coins(rng, rng() % 200);
    CoinSequence xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    const auto fx = run_coin_extractor(x, depth);
    const auto fxy = run_coin_extractor(xy, depth);
    ASSERT_TRUE(testing::is_prefix(fx.output(), fxy.output()));
  }
}

TEST_P(CoinProperties, DeterministicAndBoundedPerStep) {
  const DepthLimit depth = depth_for(GetParam());
  std::mt19937_64 rng(3000 + GetParam());
  for (int trial = 0; trial < 100; ++trial) {
    const auto input = random_coins(rng, 300, 0.3);
    CoinExtractor a(depth);
    CoinExtractor b(depth);
    for (auto s : input) {
      const auto step = a.process(s);
      b.process(s);
      EXPECT_LE(step.bits.size(), step.messages_processed);
      if (depth) {
        // Each delivery forwards to at most two children and a node only
        // emits when it forwards nothing.
        EXPECT_LE(step.messages_processed, (std::size_t{2} << *depth) - 1);
        EXPECT_LE(step.bits.size(), std::size_t{1} << *depth);
      }
    }
    EXPECT_TRUE(a.tree() == b.tree());
    EXPECT_EQ(a.output(), b.output());
    if (depth) { EXPECT_LE(a.tree().max_depth(), *depth); }
  }
}

INSTANTIATE_TEST_SUITE_P(Depths, CoinProperties, ::testing::Values(0, 1, 2, 3, 7, -1),
                         [](const auto& info) {
                           return info.param < 0 ? std::string("unlimited")
                                                 : "d" + std::to_string(info.param);
                         });

TEST(CoinExtractor, PerStepMessagesCanExceedDepthPlusOne) {
  // Fourth H: root forwards to both children, each of which forwards to
  // both of its own children.
  CoinExtractor ex(2);
  std::size_t last = 0;
  for (int i = 0; i < 4; ++i) last = ex.process(H).messages_processed;
  EXPECT_EQ(last, 7u);
}

TEST(CoinExtractor, DepthZeroLagsVonNeumannByAtMostOneBit) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const auto input = random_coins(rng, rng() % 300, 0.4);
    const auto ours = run_coin_extractor(input, 0).output();
    const auto vn = von_neumann(input);
    ASSERT_TRUE(testing::is_prefix(ours, vn));
    ASSERT_LE(vn.size() - ours.size(), 1u);
  }
}

TEST(CoinExtractor, UnlimitedDepthGrowsLogarithmically) {
  std::mt19937_64 rng(5);
  const auto input = random_coins(rng, 1 << 14);
  const auto ex = run_coin_extractor(input);
  EXPECT_LE(ex.tree().max_depth(), 14u);
  EXPECT_GE(ex.tree().max_depth(), 8u);
}

}  // namespace
}  // namespace randstream
