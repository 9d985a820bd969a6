#pragma once

// Streaming statistics over game results. Everything an accumulator stores is
// an exact integer (counts and sums), so merging shards is associative and
// commutative and the final numbers are bit-identical no matter how many
// workers produced them or in what order they merged. Floating point appears
// only in finalize().
//
// Aborted games (turn cap hit) are counted but contribute nothing else: no
// turn total, no histogram entries, no win credit. Means and distributions
// describe terminated games only.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bhikar/engine.hpp"

namespace bhikar {

// Fixed-width binning of non-negative integers: bin b covers
// [b * bin_width, (b + 1) * bin_width).
class Histogram {
 public:
  Histogram() = default;
  explicit Histogram(std::int64_t bin_width) : width_(bin_width) {
    if (bin_width < 1) throw std::invalid_argument("bin_width must be positive");
  }

  void record(std::int64_t value) {
    assert(value >= 0);
    const auto bin = static_cast<std::size_t>(value / width_);
    if (bin >= counts_.size()) counts_.resize(bin + 1, 0);
    ++counts_[bin];
    ++total_;
  }

  void merge(const Histogram& other) {
    if (width_ != other.width_) throw std::logic_error("cannot merge histograms of different bin widths");
    if (other.counts_.size() > counts_.size()) counts_.resize(other.counts_.size(), 0);
    for (std::size_t i = 0; i < other.counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
  }

  std::int64_t bin_width() const { return width_; }
  std::uint64_t total() const { return total_; }
  // Dense counts from bin 0 upward; trailing bins are nonzero only if hit.
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  std::int64_t width_ = 1;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

inline constexpr std::int64_t kTurnBinWidth = 100;
inline constexpr std::int64_t kHandSizeBinWidth = 5;

// Exact running tallies for one (players, decks) configuration.
struct ConfigAccumulator {
  GameConfig config;
  std::uint64_t games = 0;
  std::uint64_t aborted = 0;
  std::int64_t min_turns = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_turns = 0;
  std::int64_t total_turns_sum = 0;
  std::uint64_t total_hands = 0;
  std::vector<std::uint64_t> game_wins;
  std::vector<std::uint64_t> hand_wins;
  Histogram turn_hist;
  Histogram hand_size_hist;

  explicit ConfigAccumulator(GameConfig cfg, std::int64_t turn_bin_width = kTurnBinWidth,
                             std::int64_t hand_bin_width = kHandSizeBinWidth)
      : config(cfg),
        game_wins(static_cast<std::size_t>(cfg.players), 0),
        hand_wins(static_cast<std::size_t>(cfg.players), 0),
        turn_hist(turn_bin_width),
        hand_size_hist(hand_bin_width) {
    config.validate();
  }

  void record(const GameResult& result) {
    if (result.hand_wins.size() != static_cast<std::size_t>(config.players))
      throw std::logic_error("result does not match this configuration's player count");
    ++games;
    if (!result.terminated) {
      ++aborted;
      return;
    }
    if (result.winner < 0 || result.winner >= config.players)
      throw std::logic_error("terminated result carries an out-of-range winner");
    min_turns = std::min(min_turns, result.total_turns);
    max_turns = std::max(max_turns, result.total_turns);
    total_turns_sum += result.total_turns;
    turn_hist.record(result.total_turns);
    ++game_wins[static_cast<std::size_t>(result.winner)];
    for (std::size_t p = 0; p < result.hand_wins.size(); ++p) hand_wins[p] += result.hand_wins[p];
    for (const int size : result.hand_sizes) hand_size_hist.record(size);
    total_hands += result.hand_sizes.size();
  }

  void merge(const ConfigAccumulator& other) {
    if (!(config == other.config)) throw std::logic_error("cannot merge accumulators for different configurations");
    games += other.games;
    aborted += other.aborted;
    min_turns = std::min(min_turns, other.min_turns);
    max_turns = std::max(max_turns, other.max_turns);
    total_turns_sum += other.total_turns_sum;
    total_hands += other.total_hands;
    for (std::size_t p = 0; p < game_wins.size(); ++p) {
      game_wins[p] += other.game_wins[p];
      hand_wins[p] += other.hand_wins[p];
    }
    turn_hist.merge(other.turn_hist);
    hand_size_hist.merge(other.hand_size_hist);
  }

  friend bool operator==(const ConfigAccumulator&, const ConfigAccumulator&) = default;
};

// Finished summary of one configuration. Probabilities are normalized over
// terminated games (or hands actually won). An all-aborted accumulator still
// finalizes -- the abort count is the finding -- but its distribution fields
// are all zero because there is nothing to normalize.
struct ConfigReport {
  GameConfig config;
  std::uint64_t games = 0;
  std::uint64_t aborted = 0;
  std::uint64_t terminated = 0;
  std::int64_t min_turns = 0;
  std::int64_t max_turns = 0;
  std::int64_t total_turns_sum = 0;
  double mean_turns = 0.0;
  std::uint64_t total_hands = 0;
  std::vector<std::uint64_t> game_wins;
  std::vector<double> game_win_pdf;
  std::vector<std::uint64_t> hand_wins;
  std::vector<double> hand_win_pdf;
  Histogram turn_hist;
  std::vector<double> turn_pdf;
  Histogram hand_size_hist;
  std::vector<double> hand_size_pdf;

  friend bool operator==(const ConfigReport&, const ConfigReport&) = default;
};

inline ConfigReport finalize(const ConfigAccumulator& acc) {
  if (acc.games == 0) throw std::invalid_argument("cannot finalize an empty accumulator");
  const std::uint64_t terminated = acc.games - acc.aborted;

  ConfigReport report;
  report.config = acc.config;
  report.games = acc.games;
  report.aborted = acc.aborted;
  report.terminated = terminated;
  report.min_turns = terminated == 0 ? 0 : acc.min_turns;
  report.max_turns = acc.max_turns;
  report.total_turns_sum = acc.total_turns_sum;
  report.mean_turns = terminated == 0 ? 0.0
                                      : static_cast<double>(acc.total_turns_sum) /
                                            static_cast<double>(terminated);
  report.total_hands = acc.total_hands;
  report.game_wins = acc.game_wins;
  report.hand_wins = acc.hand_wins;
  report.turn_hist = acc.turn_hist;
  report.hand_size_hist = acc.hand_size_hist;

  report.game_win_pdf.reserve(acc.game_wins.size());
  for (const std::uint64_t wins : acc.game_wins)
    report.game_win_pdf.push_back(
        terminated == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(terminated));
  report.hand_win_pdf.reserve(acc.hand_wins.size());
  for (const std::uint64_t wins : acc.hand_wins)
    report.hand_win_pdf.push_back(
        acc.total_hands == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(acc.total_hands));

  const auto to_pdf = [](const Histogram& hist, std::vector<double>& out) {
    out.reserve(hist.counts().size());
    for (const std::uint64_t count : hist.counts())
      out.push_back(hist.total() == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(hist.total()));
  };
  to_pdf(acc.turn_hist, report.turn_pdf);
  to_pdf(acc.hand_size_hist, report.hand_size_pdf);
  return report;
}

}  // namespace bhikar
