// Command-line front end: `trace` logs a single game turn by turn, `simulate`
// runs one configuration and writes its report bundle, `sweep` runs a whole
// parameter grid. Exit codes: 0 success, 1 I/O or internal failure, 2 bad
// usage, 3 one or more games hit the turn cap.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bhikar/engine.hpp"
#include "bhikar/io.hpp"
#include "bhikar/random.hpp"
#include "bhikar/stats.hpp"
#include "bhikar/sweep.hpp"
#include "bhikar/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAborted = 3;

std::uint64_t entropy_seed() {
  std::random_device device;
  const std::uint64_t high = device();
  const std::uint64_t low = device();
  return (high << 32) ^ low;
}

int default_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// ---- trace -----------------------------------------------------------------

struct TraceArgs {
  int players = 2;
  int decks = 1;
  std::uint64_t seed = 0;
  bool entropy = false;
  std::int64_t turn_cap = bhikar::kDefaultTurnCap;
  std::string format = "text";
};

struct TextTracer {
  std::ostream& out;
  void operator()(const bhikar::CardPlayed& e) const {
    out << "turn " << e.turn << ": player " << e.player << " plays "
        << bhikar::rank_label(e.rank) << '\n';
  }
  void operator()(const bhikar::HandWon& e) const {
    out << "turn " << e.turn << ": player " << e.player << " collects pile of "
        << e.pile_size << '\n';
  }
  void operator()(const bhikar::PlayerEliminated& e) const {
    out << "turn " << e.turn << ": player " << e.player << " eliminated\n";
  }
  void operator()(const bhikar::GameEnded& e) const {
    out << "turn " << e.total_turns << ": player " << e.winner << " wins after "
        << e.total_turns << " turns\n";
  }
};

struct JsonlTracer {
  std::ostream& out;
  void operator()(const bhikar::CardPlayed& e) const {
    out << nlohmann::json{{"event", "card_played"},
                          {"turn", e.turn},
                          {"player", e.player},
                          {"rank", e.rank}}
               .dump()
        << '\n';
  }
  void operator()(const bhikar::HandWon& e) const {
    out << nlohmann::json{{"event", "hand_won"},
                          {"turn", e.turn},
                          {"player", e.player},
                          {"pile_size", e.pile_size}}
               .dump()
        << '\n';
  }
  void operator()(const bhikar::PlayerEliminated& e) const {
    out << nlohmann::json{{"event", "player_eliminated"}, {"turn", e.turn}, {"player", e.player}}
               .dump()
        << '\n';
  }
  void operator()(const bhikar::GameEnded& e) const {
    out << nlohmann::json{{"event", "game_ended"},
                          {"turn", e.total_turns},
                          {"winner", e.winner},
                          {"total_turns", e.total_turns}}
               .dump()
        << '\n';
  }
};

int run_trace(const TraceArgs& args) {
  const bhikar::GameConfig config{args.players, args.decks, args.turn_cap};
  const std::uint64_t seed = args.entropy ? entropy_seed() : args.seed;
  if (args.entropy) std::cerr << "seed: " << seed << '\n';
  bhikar::RandomStream rng = bhikar::stream_for(bhikar::SeedPlan{seed}, 0, 0);

  bhikar::GameResult result;
  if (args.format == "jsonl") {
    std::cout << nlohmann::json{{"event", "metadata"},
                                {"tool", bhikar::kToolName},
                                {"version", bhikar::kVersion},
                                {"generator", bhikar::RandomStream::generator_name()},
                                {"master_seed", seed},
                                {"players", config.players},
                                {"decks", config.decks},
                                {"turn_cap", config.turn_cap}}
                     .dump()
              << '\n';
    result = bhikar::run_game(config, rng, JsonlTracer{std::cout});
    if (!result.terminated)
      std::cout << nlohmann::json{{"event", "aborted"}, {"total_turns", result.total_turns}}.dump()
                << '\n';
  } else {
    std::cout << "# " << bhikar::kToolName << ' ' << bhikar::kVersion << " trace | players="
              << config.players << " decks=" << config.decks << " seed=" << seed
              << " generator=" << bhikar::RandomStream::generator_name()
              << " turn_cap=" << config.turn_cap << '\n';
    result = bhikar::run_game(config, rng, TextTracer{std::cout});
    if (!result.terminated)
      std::cout << "# aborted after " << result.total_turns << " turns (turn cap reached)\n";
  }
  std::cout.flush();
  if (!std::cout) {
    std::cerr << "error: failed writing trace to stdout\n";
    return kExitFailure;
  }
  if (!result.terminated) {
    std::cerr << "aborted: turn cap of " << config.turn_cap << " reached\n";
    return kExitAborted;
  }
  return kExitOk;
}

// ---- simulate / sweep ------------------------------------------------------

struct RunArgs {
  std::vector<int> players{2, 3, 4, 5};
  std::vector<int> decks{1, 2, 3, 4, 5};
  std::uint64_t games = 1'000'000;
  std::uint64_t seed = 0;
  bool entropy = false;
  int workers = default_workers();
  std::int64_t turn_cap = bhikar::kDefaultTurnCap;
  std::string out_dir = ".";
  bool quiet = false;
};

// Prints cell progress to stderr, at most one line per cell per second plus a
// final line when a cell completes.
class ProgressPrinter {
 public:
  void operator()(const bhikar::SweepProgress& p) {
    if (last_printed_.size() <= p.cell) last_printed_.resize(p.cell + 1, -1.0);
    const bool final_snapshot = p.games_done == p.games_total;
    if (!final_snapshot && last_printed_[p.cell] >= 0.0 &&
        p.elapsed_seconds - last_printed_[p.cell] < 1.0)
      return;
    last_printed_[p.cell] = final_snapshot ? std::numeric_limits<double>::max() : p.elapsed_seconds;
    char line[160];
    std::snprintf(line, sizeof line, "%s: %llu/%llu games (%.1fs)\n",
                  bhikar::cell_dir_name(p.players, p.decks).c_str(),
                  static_cast<unsigned long long>(p.games_done),
                  static_cast<unsigned long long>(p.games_total), p.elapsed_seconds);
    std::cerr << line;
  }

 private:
  std::vector<double> last_printed_;
};

bhikar::SweepSpec to_spec(const RunArgs& args, std::uint64_t seed) {
  bhikar::SweepSpec spec;
  spec.player_counts = args.players;
  spec.deck_counts = args.decks;
  spec.games_per_config = args.games;
  spec.master_seed = seed;
  spec.workers = args.workers;
  spec.turn_cap = args.turn_cap;
  return spec;
}

int run_simulate(const RunArgs& args) {
  const std::uint64_t seed = args.entropy ? entropy_seed() : args.seed;
  if (args.entropy) std::cerr << "seed: " << seed << '\n';
  const bhikar::SweepSpec spec = to_spec(args, seed);
  ProgressPrinter printer;
  bhikar::ProgressSink sink;
  if (!args.quiet) sink = std::ref(printer);
  const bhikar::SweepResult result = bhikar::run_sweep(spec, sink);

  bhikar::RunMetadata meta;
  meta.master_seed = seed;
  const bhikar::ConfigReport& report = result.cells.front();
  bhikar::write_report_bundle(args.out_dir, report, meta);
  if (report.aborted > 0) {
    std::cerr << "aborted: " << report.aborted << " game(s) hit the turn cap of "
              << args.turn_cap << '\n';
    return kExitAborted;
  }
  return kExitOk;
}

int run_sweep_cmd(const RunArgs& args) {
  const std::uint64_t seed = args.entropy ? entropy_seed() : args.seed;
  if (args.entropy) std::cerr << "seed: " << seed << '\n';
  const bhikar::SweepSpec spec = to_spec(args, seed);
  ProgressPrinter printer;
  bhikar::ProgressSink sink;
  if (!args.quiet) sink = std::ref(printer);
  const bhikar::SweepResult result = bhikar::run_sweep(spec, sink);

  bhikar::RunMetadata meta;
  meta.master_seed = seed;
  bhikar::write_sweep_output(args.out_dir, result, meta);

  std::uint64_t aborted = 0;
  for (const bhikar::ConfigReport& cell : result.cells) aborted += cell.aborted;
  if (aborted > 0) {
    std::cerr << "aborted: " << aborted << " game(s) hit the turn cap of " << args.turn_cap
              << '\n';
    return kExitAborted;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for the Bhikar-Sawkar card game"};
  app.set_version_flag("--version", std::string(bhikar::kToolName) + " " + bhikar::kVersion);
  app.require_subcommand(1);

  const auto player_range = CLI::Range(2, std::numeric_limits<int>::max());
  const auto deck_range = CLI::Range(1, std::numeric_limits<int>::max());
  const auto cap_range = CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max());

  TraceArgs trace_args;
  CLI::App* trace = app.add_subcommand("trace", "Play one game and log every turn");
  trace->add_option("--players,-n", trace_args.players, "Number of players")->check(player_range);
  trace->add_option("--decks,-k", trace_args.decks, "Number of 52-card decks in the shoe")
      ->check(deck_range);
  CLI::Option* trace_seed = trace->add_option("--seed", trace_args.seed, "Master seed");
  trace->add_flag("--entropy", trace_args.entropy, "Seed from system entropy (prints the seed)")
      ->excludes(trace_seed);
  trace->add_option("--turn-cap", trace_args.turn_cap, "Abort the game after this many turns")
      ->check(cap_range);
  trace->add_option("--format", trace_args.format, "Log format")
      ->check(CLI::IsMember({"text", "jsonl"}));

  RunArgs sim_args;
  CLI::App* simulate = app.add_subcommand("simulate", "Simulate one configuration and write its report");
  simulate->add_option("--players,-n", sim_args.players, "Number of players")
      ->required()
      ->expected(1)
      ->check(player_range);
  simulate->add_option("--decks,-k", sim_args.decks, "Number of 52-card decks in the shoe")
      ->required()
      ->expected(1)
      ->check(deck_range);
  simulate->add_option("--games", sim_args.games, "Games to simulate")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  CLI::Option* sim_seed = simulate->add_option("--seed", sim_args.seed, "Master seed");
  simulate->add_flag("--entropy", sim_args.entropy, "Seed from system entropy (prints the seed)")
      ->excludes(sim_seed);
  simulate->add_option("--workers", sim_args.workers, "Worker threads")
      ->check(CLI::Range(1, 4096));
  simulate->add_option("--turn-cap", sim_args.turn_cap, "Abort games after this many turns")
      ->check(cap_range);
  simulate->add_option("--out", sim_args.out_dir, "Output directory");
  simulate->add_flag("--quiet", sim_args.quiet, "Suppress progress output");

  RunArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a (players x decks) grid and write all reports");
  sweep->add_option("--players,-n", sweep_args.players, "Player counts (repeat or comma-separate)")
      ->delimiter(',')
      ->check(player_range);
  sweep->add_option("--decks,-k", sweep_args.decks, "Deck counts (repeat or comma-separate)")
      ->delimiter(',')
      ->check(deck_range);
  sweep->add_option("--games", sweep_args.games, "Games per grid cell")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  CLI::Option* sweep_seed = sweep->add_option("--seed", sweep_args.seed, "Master seed");
  sweep->add_flag("--entropy", sweep_args.entropy, "Seed from system entropy (prints the seed)")
      ->excludes(sweep_seed);
  sweep->add_option("--workers", sweep_args.workers, "Worker threads")->check(CLI::Range(1, 4096));
  sweep->add_option("--turn-cap", sweep_args.turn_cap, "Abort games after this many turns")
      ->check(cap_range);
  sweep->add_option("--out-dir", sweep_args.out_dir, "Output directory");
  sweep->add_flag("--quiet", sweep_args.quiet, "Suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*trace) return run_trace(trace_args);
    if (*simulate) return run_simulate(sim_args);
    return run_sweep_cmd(sweep_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
