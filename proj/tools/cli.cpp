#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "randstream/analysis.hpp"
#include "randstream/coin_extractor.hpp"
#include "randstream/dice_extractor.hpp"
#include "randstream/exact_oracle.hpp"
#include "randstream/markov_extractor.hpp"
#include "randstream/von_neumann.hpp"

namespace randstream::cli {
namespace {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::Coin: return "coin";
    case Mode::Dice: return "dice";
    case Mode::Markov: return "markov";
    case Mode::VonNeumann: return "vonneumann";
  }
  return "?";
}

json depth_json(DepthLimit depth) {
  return depth ? json(*depth) : json("unlimited");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

// Reads from `in` or from a file, depending on the configured path.
struct InputSource {
  std::ifstream file;
  std::istream* stream = nullptr;

  InputSource(const std::string& path, std::istream& fallback) {
    if (path == "-" || path.empty()) {
      stream = &fallback;
      return;
    }
    file.open(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open input '" + path + "'");
    stream = &file;
  }
};

using SymbolSource = std::function<std::optional<std::uint32_t>()>;
using Processor = std::function<std::size_t(std::uint32_t, BitVector&)>;

SymbolSource make_source(const RunConfig& config, std::uint32_t m, std::istream& in) {
  const bool coin_like = config.mode == Mode::Coin || config.mode == Mode::VonNeumann;
  if (coin_like) {
    auto wrap = [](auto reader) -> SymbolSource {
      return [reader]() mutable -> std::optional<std::uint32_t> {
        const auto s = reader->next();
        if (!s) return std::nullopt;
        return static_cast<std::uint32_t>(*s);
      };
    };
    if (config.input_format == InputFormat::Bits) {
      return wrap(std::make_shared<CoinBitsReader>(in));
    }
    return wrap(std::make_shared<CoinTextReader>(in));
  }
  if (config.input_format == InputFormat::Bits) {
    throw ConfigError("input format 'bits' is only valid for coin modes");
  }
  auto reader = std::make_shared<IndexTextReader>(in, m);
  return [reader]() { return reader->next(); };
}

Processor make_processor(const RunConfig& config, std::uint32_t m) {
  switch (config.mode) {
    case Mode::Coin: {
      auto tree = std::make_shared<StatusTree>(config.depth);
      return [tree](std::uint32_t s, BitVector& out) {
        return tree->deliver(static_cast<CoinSymbol>(s), out);
      };
    }
    case Mode::VonNeumann: {
      auto vn = std::make_shared<VonNeumannExtractor>();
      return [vn](std::uint32_t s, BitVector& out) -> std::size_t {
        if (auto bit = vn->process(static_cast<CoinSymbol>(s))) out.push_back(*bit);
        return 1;
      };
    }
    case Mode::Dice: {
      auto forest = std::make_shared<BinarizationForest>(m, config.depth);
      return [forest](std::uint32_t s, BitVector& out) { return forest->process_into(s, out); };
    }
    case Mode::Markov: {
      auto chain = std::make_shared<MarkovExtractor>(m, config.depth);
      std::vector<std::uint32_t> face(m);
      for (std::uint32_t i = 0; i < m; ++i) face[i] = i;
      if (!config.state_order.empty()) {
        if (config.state_order.size() != m) {
          throw ConfigError("--state-order must list all " + std::to_string(m) + " states");
        }
        std::vector<bool> seen(m, false);
        for (std::uint32_t pos = 0; pos < m; ++pos) {
          const std::uint32_t s = config.state_order[pos];
          if (s >= m || seen[s]) throw ConfigError("--state-order must be a permutation");
          seen[s] = true;
          face[s] = pos;
        }
      }
      return [chain, face](std::uint32_t s, BitVector& out) {
        return chain->process_into(face[s], out);
      };
    }
  }
  throw ConfigError("unknown mode");
}

std::uint32_t resolve_alphabet(const RunConfig& config) {
  if (config.mode == Mode::Coin || config.mode == Mode::VonNeumann) {
    if (config.m && *config.m != 2) throw ConfigError("coin modes fix m = 2");
    return 2;
  }
  if (config.m) {
    if (*config.m < 2 || *config.m > kMaxAlphabet) throw ConfigError("m must be in [2, 2^24]");
    return *config.m;
  }
  if (config.mode == Mode::Markov && config.input != "-" && !config.input.empty()) {
    std::ifstream scan(config.input, std::ios::binary);
    if (!scan) throw ConfigError("cannot open input '" + config.input + "'");
    return infer_alphabet(scan);
  }
  throw ConfigError(std::string("--m is required for ") + mode_name(config.mode) +
                    (config.mode == Mode::Markov ? " when reading standard input" : ""));
}

}  // namespace

DepthLimit parse_depth(const std::string& text) {
  if (text == "unlimited" || text == "inf") return std::nullopt;
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos ||
      text.size() > 9) {
    throw ConfigError("depth must be a non-negative integer or 'unlimited', got '" + text + "'");
  }
  return static_cast<std::size_t>(std::stoul(text));
}

int cmd_extract(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  std::uint32_t m = 0;
  SymbolSource next;
  Processor process;
  std::optional<InputSource> input;
  try {
    m = resolve_alphabet(config);
    input.emplace(config.input, in);
    next = make_source(config, m, *input->stream);
    process = make_processor(config, m);
  } catch (const BadSymbol& e) {
    err << "error: " << e.what() << '\n';
    return kBadSymbol;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  BitWriter writer(out, config.output_format);
  BitVector step;
  std::uint64_t symbols = 0;
  std::uint64_t messages = 0;
  int status = kSuccess;
  try {
    while (!config.bits || writer.bits_written() < *config.bits) {
      const auto symbol = next();
      if (!symbol) break;
      step.clear();
      messages += process(*symbol, step);
      ++symbols;
      for (Bit b : step) {
        if (config.bits && writer.bits_written() == *config.bits) break;
        writer.put(b);
      }
    }
  } catch (const BadSymbol& e) {
    err << "error: " << e.what() << '\n';
    status = kBadSymbol;
  }
  const unsigned last_byte_bits = writer.finish();

  if (status == kSuccess && config.bits && writer.bits_written() < *config.bits) {
    err << "error: source exhausted after " << writer.bits_written() << " of " << *config.bits
        << " bits\n";
    status = kSourceExhausted;
  }

  if (config.stats || !config.stats_file.empty()) {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    json stats{
        {"mode", mode_name(config.mode)},
        {"depth", config.mode == Mode::VonNeumann ? json(nullptr) : depth_json(config.depth)},
        {"m", m},
        {"input_symbols", symbols},
        {"output_bits", writer.bits_written()},
        {"messages_processed", messages},
        {"tosses_per_bit_observed",
         writer.bits_written() ? json(static_cast<double>(symbols) /
                                      static_cast<double>(writer.bits_written()))
                               : json(nullptr)},
        {"wall_seconds", wall},
    };
    if (config.output_format == OutputFormat::Packed) {
      stats["final_byte_valid_bits"] = last_byte_bits;
    }
    if (!config.stats_file.empty()) {
      std::ofstream file(config.stats_file);
      if (!file) {
        err << "error: cannot write stats file '" << config.stats_file << "'\n";
        return kConfigError;
      }
      file << stats.dump() << '\n';
    } else {
      err << stats.dump() << '\n';
    }
  }
  return status;
}

namespace {

struct AnalyzeOptions {
  std::string metric = "tosses";
  std::string depths;
  std::string ps;
  std::string format = "text";
};

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out) {
  std::vector<std::size_t> depths = table_depths();
  std::vector<double> ps = table_probabilities();
  if (!opt.depths.empty()) {
    depths.clear();
    for (const auto& d : split(opt.depths, ',')) {
      const auto depth = parse_depth(d);
      if (!depth) throw ConfigError("analyze depths must be finite");
      depths.push_back(*depth);
    }
  }
  if (!opt.ps.empty()) {
    ps.clear();
    for (const auto& p : split(opt.ps, ',')) {
      try {
        ps.push_back(std::stod(p));
      } catch (const std::exception&) {
        throw ConfigError("bad probability '" + p + "'");
      }
    }
  }
  TableMetric metric;
  if (opt.metric == "tosses") {
    metric = TableMetric::TossesPerBit;
  } else if (opt.metric == "time") {
    metric = TableMetric::MessagesPerSymbol;
  } else {
    throw ConfigError("metric must be 'tosses' or 'time'");
  }
  const auto rows = efficiency_table(metric, depths, ps);

  if (opt.format == "csv") {
    out << "depth,p,"
        << (metric == TableMetric::TossesPerBit ? "tosses_per_bit" : "messages_per_symbol")
        << '\n';
    for (const auto& row : rows) {
      for (std::size_t j = 0; j < ps.size(); ++j) {
        out << (row.depth ? std::to_string(*row.depth) : "inf") << ',' << ps[j] << ','
            << std::fixed << std::setprecision(4) << row.values[j] << '\n';
        out.unsetf(std::ios::floatfield);
      }
    }
    return kSuccess;
  }
  if (opt.format != "text") throw ConfigError("format must be 'text' or 'csv'");

  out << std::setw(13) << "maximum depth";
  for (double p : ps) {
    std::ostringstream head;
    head << "p=" << p;
    out << std::setw(10) << head.str();
  }
  out << '\n';
  for (const auto& row : rows) {
    out << std::setw(13) << (row.depth ? std::to_string(*row.depth) : "inf");
    for (double v : row.values) out << std::setw(10) << std::fixed << std::setprecision(4) << v;
    out.unsetf(std::ios::floatfield);
    out << '\n';
  }
  return kSuccess;
}

struct VerifyOptions {
  std::string mode = "coin";
  std::string p = "1/2";
  std::string dist;
  std::string matrix;
  std::uint32_t start = 0;
  std::string depth = "unlimited";
  unsigned n_max = 10;
  unsigned k = 1;
  bool force = false;
  std::string format = "text";
};

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  const DepthLimit depth = parse_depth(opt.depth);
  auto parse_row = [](const std::string& text) {
    std::vector<ExactProb> row;
    for (const auto& item : split(text, ',')) row.push_back(parse_probability(item));
    return row;
  };
  UniformityReport report;
  if (opt.mode == "coin") {
    report = verify_coin(parse_probability(opt.p), depth, opt.n_max, opt.k, opt.force);
  } else if (opt.mode == "dice") {
    if (opt.dist.empty()) throw ConfigError("--dist is required for dice");
    report = verify_dice(parse_row(opt.dist), depth, opt.n_max, opt.k, opt.force);
  } else if (opt.mode == "markov") {
    if (opt.matrix.empty()) throw ConfigError("--matrix is required for markov");
    std::vector<std::vector<ExactProb>> matrix;
    for (const auto& row : split(opt.matrix, ';')) matrix.push_back(parse_row(row));
    report = verify_markov(matrix, opt.start, depth, opt.n_max, opt.k, opt.force);
  } else {
    throw ConfigError("verify mode must be coin, dice or markov");
  }
  if (opt.format == "csv") {
    out << format_report_csv(report);
  } else if (opt.format == "text") {
    out << format_report_text(report);
  } else {
    throw ConfigError("format must be 'text' or 'csv'");
  }
  return report.uniform() ? kSuccess : kNotUniform;
}

struct BenchOptions {
  double p = 0.3;
  std::string depth = "15";
  std::uint64_t k = 100000;
  std::uint64_t seed = 1;
  unsigned trials = 1;
};

int cmd_bench(const BenchOptions& opt, std::ostream& out) {
  const DepthLimit depth = parse_depth(opt.depth);
  if (opt.trials == 0) throw ConfigError("--trials must be positive");
  std::vector<double> tosses;
  std::vector<double> messages;
  const auto started = std::chrono::steady_clock::now();
  for (unsigned t = 0; t < opt.trials; ++t) {
    const auto r = simulate_efficiency(opt.p, depth, opt.k, opt.seed + t);
    tosses.push_back(r.tosses_per_bit);
    messages.push_back(r.messages_per_symbol);
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto stddev = [&](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean(v);
    double s = 0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };
  json summary{
      {"p", opt.p},
      {"depth", depth_json(depth)},
      {"k", opt.k},
      {"seed", opt.seed},
      {"trials", opt.trials},
      {"tosses_per_bit_mean", mean(tosses)},
      {"tosses_per_bit_stddev", stddev(tosses)},
      {"messages_per_symbol_mean", mean(messages)},
      {"messages_per_symbol_stddev", stddev(messages)},
      {"entropy_tosses_per_bit", 1.0 / entropy(opt.p)},
      {"wall_seconds", wall},
  };
  if (depth) {
    summary["analytic_tosses_per_bit"] = 1.0 / rho(opt.p, *depth);
    summary["analytic_messages_per_symbol"] = processing_time(opt.p, *depth);
  }
  out << summary.dump(2) << '\n';
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Streaming extraction of unbiased bits from biased sources", "randstream"};
  app.require_subcommand(1);

  RunConfig config;
  std::string mode = "coin";
  std::string depth = "15";
  std::string input_format = "text";
  std::string output_format = "ascii";
  std::string state_order;
  std::uint32_t m = 0;
  std::uint64_t bits = 0;
  auto* extract = app.add_subcommand("extract", "Extract unbiased bits from a symbol stream");
  extract->add_option("--mode", mode, "coin | dice | markov | vonneumann")
      ->check(CLI::IsMember({"coin", "dice", "markov", "vonneumann"}));
  extract->add_option("--depth", depth, "Status-tree depth limit or 'unlimited'");
  auto* m_opt = extract->add_option("--m", m, "Alphabet size (dice) or state count (markov)");
  auto* bits_opt = extract->add_option("--bits", bits, "Stop after this many output bits");
  extract->add_option("--input", config.input, "Input path, '-' for standard input");
  extract->add_option("--input-format", input_format, "text | bits")
      ->check(CLI::IsMember({"text", "bits"}));
  extract->add_option("--output-format", output_format, "ascii | packed")
      ->check(CLI::IsMember({"ascii", "packed"}));
  extract->add_option("--state-order", state_order,
                      "Markov states in declaration order, comma-separated");
  extract->add_flag("--stats", config.stats, "Print a JSON stats object on standard error");
  extract->add_option("--stats-file", config.stats_file, "Write the JSON stats object here");

  AnalyzeOptions analyze_opt;
  auto* analyze = app.add_subcommand("analyze", "Print analytic efficiency tables");
  analyze->add_option("--metric", analyze_opt.metric, "tosses | time");
  analyze->add_option("--depths", analyze_opt.depths, "Comma-separated depths");
  analyze->add_option("--ps", analyze_opt.ps, "Comma-separated probabilities of H");
  analyze->add_option("--format", analyze_opt.format, "text | csv");

  VerifyOptions verify_opt;
  auto* verify = app.add_subcommand("verify", "Exact uniformity check by enumeration");
  verify->add_option("--mode", verify_opt.mode, "coin | dice | markov");
  verify->add_option("--p", verify_opt.p, "Probability of H (coin), e.g. 1/3");
  verify->add_option("--dist", verify_opt.dist, "Face distribution (dice), e.g. 1/2,1/3,1/6");
  verify->add_option("--matrix", verify_opt.matrix, "Transition rows (markov), e.g. 1/3,2/3;3/4,1/4");
  verify->add_option("--start", verify_opt.start, "Start state (markov)");
  verify->add_option("--depth", verify_opt.depth, "Depth limit or 'unlimited'");
  verify->add_option("--n-max", verify_opt.n_max, "Input horizon");
  verify->add_option("--k", verify_opt.k, "Number of output bits checked");
  verify->add_flag("--force", verify_opt.force, "Lift the enumeration size caps");
  verify->add_option("--format", verify_opt.format, "text | csv");

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Monte-Carlo efficiency on a seeded biased coin");
  bench->add_option("--p", bench_opt.p, "Probability of H");
  bench->add_option("--depth", bench_opt.depth, "Depth limit or 'unlimited'");
  bench->add_option("--bits", bench_opt.k, "Bits to extract per trial");
  bench->add_option("--seed", bench_opt.seed, "Seed of the first trial");
  bench->add_option("--trials", bench_opt.trials, "Number of trials (seeds seed, seed+1, ...)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*extract) {
      static const std::map<std::string, Mode> modes{{"coin", Mode::Coin},
                                                     {"dice", Mode::Dice},
                                                     {"markov", Mode::Markov},
                                                     {"vonneumann", Mode::VonNeumann}};
      config.mode = modes.at(mode);
      config.depth = parse_depth(depth);
      if (*m_opt) config.m = m;
      if (*bits_opt) config.bits = bits;
      config.input_format = input_format == "bits" ? InputFormat::Bits : InputFormat::Text;
      config.output_format =
          output_format == "packed" ? OutputFormat::Packed : OutputFormat::Ascii;
      if (!state_order.empty()) {
        for (const auto& s : split(state_order, ',')) {
          const auto v = parse_depth(s);
          if (!v) throw ConfigError("bad state index in --state-order");
          config.state_order.push_back(static_cast<std::uint32_t>(*v));
        }
      }
      return cmd_extract(config, in, out, err);
    }
    if (*analyze) return cmd_analyze(analyze_opt, out);
    if (*verify) return cmd_verify(verify_opt, out);
    if (*bench) return cmd_bench(bench_opt, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace randstream::cli
