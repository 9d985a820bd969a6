#pragma once

// Parameter-grid experiment runner. A sweep plays games_per_config games for
// every (players, decks) cell of a grid, farming games out to worker threads.
//
// Reproducibility contract: each game's stream comes from
// stream_for(master_seed, cell_index, game_index) and every tally is an exact
// integer, so the merged results are bit-identical for any worker count and
// any scheduling. Cells are indexed row-major over the sorted player list
// crossed with the sorted deck list.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bhikar/engine.hpp"
#include "bhikar/random.hpp"
#include "bhikar/stats.hpp"

namespace bhikar {

struct SweepSpec {
  std::vector<int> player_counts{2, 3, 4, 5};
  std::vector<int> deck_counts{1, 2, 3, 4, 5};
  std::uint64_t games_per_config = 1'000'000;
  std::uint64_t master_seed = 0;
  int workers = 1;
  std::int64_t turn_cap = kDefaultTurnCap;
  std::int64_t turn_bin_width = kTurnBinWidth;
  std::int64_t hand_size_bin_width = kHandSizeBinWidth;
};

// Sorted, deduplicated, validated copy of a spec. All sweep entry points
// normalize first, so {3,2} and {2,3} describe the same sweep.
inline SweepSpec normalized(SweepSpec spec) {
  const auto tidy = [](std::vector<int>& values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
  };
  tidy(spec.player_counts);
  tidy(spec.deck_counts);
  if (spec.player_counts.empty()) throw std::invalid_argument("player list is empty");
  if (spec.deck_counts.empty()) throw std::invalid_argument("deck list is empty");
  if (spec.player_counts.front() < 2) throw std::invalid_argument("players must be >= 2");
  if (spec.deck_counts.front() < 1) throw std::invalid_argument("decks must be >= 1");
  if (spec.games_per_config == 0) throw std::invalid_argument("games_per_config must be positive");
  if (spec.turn_cap < 1) throw std::invalid_argument("turn_cap must be positive");
  if (spec.workers < 1) spec.workers = 1;
  return spec;
}

// Row-major cell number of (players, decks) within a normalized spec's grid.
inline std::size_t cell_index(int players, int decks, const SweepSpec& spec) {
  const SweepSpec norm = normalized(spec);
  const auto find = [](const std::vector<int>& values, int wanted, const char* what) {
    const auto it = std::find(values.begin(), values.end(), wanted);
    if (it == values.end()) throw std::invalid_argument(std::string(what) + " not in sweep grid");
    return static_cast<std::size_t>(it - values.begin());
  };
  const std::size_t row = find(norm.player_counts, players, "player count");
  const std::size_t col = find(norm.deck_counts, decks, "deck count");
  return row * norm.deck_counts.size() + col;
}

struct SweepProgress {
  std::size_t cell;
  int players;
  int decks;
  std::uint64_t games_done;
  std::uint64_t games_total;
  double elapsed_seconds;
};

using ProgressSink = std::function<void(const SweepProgress&)>;

struct SweepResult {
  SweepSpec spec;  // normalized
  std::vector<ConfigReport> cells;  // row-major, matching cell_index

  const ConfigReport& at(int players, int decks) const {
    return cells.at(cell_index(players, decks, spec));
  }
};

// Run the whole grid. The progress sink, if given, is invoked from the
// calling thread only -- roughly every 100 ms for cells that advanced, plus a
// final snapshot of every cell.
inline SweepResult run_sweep(const SweepSpec& raw_spec, const ProgressSink& progress = {}) {
  const SweepSpec spec = normalized(raw_spec);
  const std::size_t cell_count = spec.player_counts.size() * spec.deck_counts.size();

  std::vector<GameConfig> configs;
  configs.reserve(cell_count);
  for (const int players : spec.player_counts)
    for (const int decks : spec.deck_counts)
      configs.push_back(GameConfig{players, decks, spec.turn_cap});

  const std::uint64_t per_cell = spec.games_per_config;
  const std::uint64_t total_games = per_cell * cell_count;
  const int workers = spec.workers;
  const SeedPlan plan{spec.master_seed};

  // One accumulator set per worker; merged in worker order afterwards. (The
  // tallies are exact integers, so the merge order is irrelevant to the
  // result -- keeping it fixed just makes the pipeline easy to reason about.)
  std::vector<std::vector<ConfigAccumulator>> shards;
  shards.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    std::vector<ConfigAccumulator> shard;
    shard.reserve(cell_count);
    for (const GameConfig& config : configs)
      shard.emplace_back(config, spec.turn_bin_width, spec.hand_size_bin_width);
    shards.push_back(std::move(shard));
  }

  std::atomic<std::uint64_t> next_game{0};
  const auto done_counts = std::make_unique<std::atomic<std::uint64_t>[]>(cell_count);
  for (std::size_t c = 0; c < cell_count; ++c) done_counts[c].store(0, std::memory_order_relaxed);
  std::atomic<int> active_workers{workers};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  constexpr std::uint64_t kChunk = 64;
  const auto worker_body = [&](int worker_id) {
    try {
      std::vector<ConfigAccumulator>& shard = shards[static_cast<std::size_t>(worker_id)];
      while (!failed.load(std::memory_order_relaxed)) {
        const std::uint64_t begin = next_game.fetch_add(kChunk, std::memory_order_relaxed);
        if (begin >= total_games) break;
        const std::uint64_t end = std::min(begin + kChunk, total_games);
        for (std::uint64_t t = begin; t < end; ++t) {
          const std::size_t cell = static_cast<std::size_t>(t / per_cell);
          const std::uint64_t game = t % per_cell;
          RandomStream rng = stream_for(plan, cell, game);
          shard[cell].record(run_game(configs[cell], rng));
          done_counts[cell].fetch_add(1, std::memory_order_relaxed);
        }
      }
    } catch (...) {
      {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
      failed.store(true, std::memory_order_relaxed);
    }
    active_workers.fetch_sub(1, std::memory_order_release);
  };

  const auto start_time = std::chrono::steady_clock::now();
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker_body, w);

  const auto emit = [&](std::size_t cell, std::uint64_t done) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_time;
    progress(SweepProgress{cell, configs[cell].players, configs[cell].decks, done, per_cell,
                           elapsed.count()});
  };
  if (progress) {
    std::vector<std::uint64_t> last_seen(cell_count, 0);
    while (active_workers.load(std::memory_order_acquire) > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
      for (std::size_t c = 0; c < cell_count; ++c) {
        const std::uint64_t done = done_counts[c].load(std::memory_order_relaxed);
        if (done != last_seen[c] && done != per_cell) {
          last_seen[c] = done;
          emit(c, done);
        }
      }
    }
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  if (progress)
    for (std::size_t c = 0; c < cell_count; ++c) emit(c, done_counts[c].load(std::memory_order_relaxed));

  SweepResult result;
  result.spec = spec;
  result.cells.reserve(cell_count);
  for (std::size_t c = 0; c < cell_count; ++c) {
    ConfigAccumulator merged = shards[0][c];
    for (int w = 1; w < workers; ++w) merged.merge(shards[static_cast<std::size_t>(w)][c]);
    result.cells.push_back(finalize(merged));
  }
  return result;
}

}  // namespace bhikar
