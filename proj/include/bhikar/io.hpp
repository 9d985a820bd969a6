#pragma once

// Result serialization. Output files are a pure function of the results and
// the run metadata: no timestamps, no hostnames, no worker counts. Re-running
// with the same seed must reproduce every file byte for byte, which is also
// how the pipeline's determinism gets checked end to end.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bhikar/engine.hpp"
#include "bhikar/stats.hpp"
#include "bhikar/sweep.hpp"
#include "bhikar/version.hpp"

namespace bhikar {

inline constexpr const char* kGridOrdering =
    "row-major: players ascending x decks ascending";

// Stamped on every output so a result file identifies the run that made it.
struct RunMetadata {
  std::string tool = kToolName;
  std::string version = kVersion;
  std::string generator = RandomStream::generator_name();
  std::uint64_t master_seed = 0;
  std::string grid_ordering = kGridOrdering;
};

// Shortest representation that round-trips a double exactly enough for
// millions of games (15 significant digits).
inline std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.15g", value);
  return buffer;
}

inline std::string rank_label(Rank rank) {
  static constexpr const char* kLabels[kRanksPerDeck] = {
      "A", "2", "3", "4", "5", "6", "7", "8", "9", "10", "J", "Q", "K"};
  return rank < kRanksPerDeck ? kLabels[rank] : "?";
}

inline std::string cell_dir_name(int players, int decks) {
  return "N" + std::to_string(players) + "_K" + std::to_string(decks);
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

inline void close_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

inline void write_metadata_comments(std::ofstream& out, const RunMetadata& meta) {
  out << "# tool: " << meta.tool << ' ' << meta.version << '\n'
      << "# generator: " << meta.generator << '\n'
      << "# master_seed: " << meta.master_seed << '\n'
      << "# grid_ordering: " << meta.grid_ordering << '\n';
}

}  // namespace detail

inline nlohmann::json metadata_json(const RunMetadata& meta) {
  return nlohmann::json{{"tool", meta.tool},
                        {"version", meta.version},
                        {"generator", meta.generator},
                        {"master_seed", meta.master_seed},
                        {"grid_ordering", meta.grid_ordering}};
}

inline nlohmann::json summary_json(const ConfigReport& report, const RunMetadata& meta) {
  return nlohmann::json{
      {"metadata", metadata_json(meta)},
      {"config",
       {{"players", report.config.players},
        {"decks", report.config.decks},
        {"turn_cap", report.config.turn_cap}}},
      {"games", report.games},
      {"aborted", report.aborted},
      {"terminated", report.terminated},
      {"min_turns", report.min_turns},
      {"max_turns", report.max_turns},
      {"total_turns", report.total_turns_sum},
      {"mean_turns", report.mean_turns},
      {"total_hands", report.total_hands},
      {"game_wins", report.game_wins},
      {"game_win_pdf", report.game_win_pdf},
      {"hand_wins", report.hand_wins},
      {"hand_win_pdf", report.hand_win_pdf},
      {"turn_bin_width", report.turn_hist.bin_width()},
      {"hand_size_bin_width", report.hand_size_hist.bin_width()},
  };
}

inline void write_summary_json(const std::filesystem::path& path, const ConfigReport& report,
                               const RunMetadata& meta) {
  std::ofstream out = detail::open_output(path);
  out << summary_json(report, meta).dump(2) << '\n';
  detail::close_output(out, path);
}

// One row per occupied bin, ascending; empty bins are implicit zeros. The
// probability column is count / total over that histogram, so the column sums
// to 1 whenever the histogram is non-empty.
inline void write_histogram_csv(const std::filesystem::path& path, const Histogram& hist,
                                const ConfigReport& report, const RunMetadata& meta) {
  std::ofstream out = detail::open_output(path);
  detail::write_metadata_comments(out, meta);
  out << "# players: " << report.config.players << '\n'
      << "# decks: " << report.config.decks << '\n'
      << "# games: " << report.games << '\n'
      << "# aborted: " << report.aborted << '\n'
      << "# bin_width: " << hist.bin_width() << '\n'
      << "# total_observations: " << hist.total() << '\n'
      << "bin_start,bin_end,count,probability\n";
  const std::vector<std::uint64_t>& counts = hist.counts();
  for (std::size_t bin = 0; bin < counts.size(); ++bin) {
    if (counts[bin] == 0) continue;
    const std::int64_t start = static_cast<std::int64_t>(bin) * hist.bin_width();
    const double probability =
        static_cast<double>(counts[bin]) / static_cast<double>(hist.total());
    out << start << ',' << start + hist.bin_width() << ',' << counts[bin] << ','
        << format_double(probability) << '\n';
  }
  detail::close_output(out, path);
}

// summary.json + turns_hist.csv + hand_sizes_hist.csv for one configuration.
inline void write_report_bundle(const std::filesystem::path& dir, const ConfigReport& report,
                                const RunMetadata& meta) {
  std::filesystem::create_directories(dir);
  write_summary_json(dir / "summary.json", report, meta);
  write_histogram_csv(dir / "turns_hist.csv", report.turn_hist, report, meta);
  write_histogram_csv(dir / "hand_sizes_hist.csv", report.hand_size_hist, report, meta);
}

// Cross-grid overview, one row per cell in cell_index order. Win-probability
// columns are padded to the widest player count; absent seats stay blank.
inline void write_grid_summary_csv(const std::filesystem::path& path, const SweepResult& result,
                                   const RunMetadata& meta) {
  int max_players = 0;
  for (const ConfigReport& cell : result.cells)
    max_players = std::max(max_players, cell.config.players);

  std::ofstream out = detail::open_output(path);
  detail::write_metadata_comments(out, meta);
  out << "# games_per_config: " << result.spec.games_per_config << '\n';
  out << "players,decks,games,min_turns,max_turns,mean_turns,aborts";
  for (int p = 0; p < max_players; ++p) out << ",game_win_prob_p" << p;
  out << '\n';
  for (const ConfigReport& cell : result.cells) {
    out << cell.config.players << ',' << cell.config.decks << ',' << cell.games << ','
        << cell.min_turns << ',' << cell.max_turns << ',' << format_double(cell.mean_turns)
        << ',' << cell.aborted;
    for (int p = 0; p < max_players; ++p) {
      out << ',';
      if (p < cell.config.players) out << format_double(cell.game_win_pdf[static_cast<std::size_t>(p)]);
    }
    out << '\n';
  }
  detail::close_output(out, path);
}

// Full sweep output tree: one bundle directory per cell plus grid_summary.csv.
inline void write_sweep_output(const std::filesystem::path& dir, const SweepResult& result,
                               const RunMetadata& meta) {
  std::filesystem::create_directories(dir);
  for (const ConfigReport& cell : result.cells)
    write_report_bundle(dir / cell_dir_name(cell.config.players, cell.config.decks), cell, meta);
  write_grid_summary_csv(dir / "grid_summary.csv", result, meta);
}

}  // namespace bhikar
