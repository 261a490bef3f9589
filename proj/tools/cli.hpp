#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "randstream/symbols.hpp"
#include "stream_io.hpp"

namespace randstream::cli {

enum ExitStatus : int {
  kSuccess = 0,
  kNotUniform = 1,
  kBadSymbol = 2,
  kSourceExhausted = 3,
  kConfigError = 4,
};

enum class Mode { Coin, Dice, Markov, VonNeumann };
enum class InputFormat { Text, Bits };

struct RunConfig {
  Mode mode = Mode::Coin;
  DepthLimit depth = 15;
  std::optional<std::uint32_t> m;
  std::optional<std::uint64_t> bits;
  std::string input = "-";
  InputFormat input_format = InputFormat::Text;
  OutputFormat output_format = OutputFormat::Ascii;
  std::vector<std::uint32_t> state_order;
  bool stats = false;
  std::string stats_file;
};

/// Parses "unlimited" or a non-negative integer.
DepthLimit parse_depth(const std::string& text);

/// Streams the configured input through the extractor and writes bits to
/// `out`. Diagnostics and stats go to `err` (or the stats file).
int cmd_extract(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// Full command line: extract | analyze | verify | bench.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace randstream::cli
