#pragma once

// Core game engine for Bhikar-Sawkar (a beggar-thy-neighbour style matching
// game). N players sit in a circle with personal decks dealt round-robin from
// a shuffled shoe of K standard 52-card packs; only ranks matter. Each turn
// the current player moves their top card onto a central pile. If it matches
// the rank directly beneath it, the player collects the whole pile, shuffles
// it, slides it under their deck, and immediately plays again. Otherwise play
// passes clockwise. A player whose deck is empty when the rotation reaches
// them is out. Last player standing wins -- even if their own deck is empty,
// since everyone else went out first.
//
// The engine is deliberately allocation-light: decks are power-of-two ring
// buffers sized once per game, and the hot loop emits events through a
// templated observer that compiles to nothing when unused.

#include <bit>
#include <cassert>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "bhikar/random.hpp"

namespace bhikar {

// Card rank, 0..12 (ace through king); suits are irrelevant to the rules.
using Rank = std::uint8_t;

inline constexpr int kRanksPerDeck = 13;
inline constexpr int kCopiesPerRank = 4;
inline constexpr int kCardsPerDeck = kRanksPerDeck * kCopiesPerRank;
inline constexpr std::int64_t kDefaultTurnCap = 10'000'000;

struct GameConfig {
  int players = 2;
  int decks = 1;
  std::int64_t turn_cap = kDefaultTurnCap;

  void validate() const {
    if (players < 2) throw std::invalid_argument("players must be >= 2");
    if (decks < 1) throw std::invalid_argument("decks must be >= 1");
    if (turn_cap < 1) throw std::invalid_argument("turn_cap must be positive");
  }

  int total_cards() const { return decks * kCardsPerDeck; }

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

// The K*52-card shoe in canonical order: all 4K copies of rank 0, then rank 1,
// and so on. Callers shuffle it before dealing.
inline std::vector<Rank> build_shoe(int decks) {
  if (decks < 1) throw std::invalid_argument("decks must be >= 1");
  std::vector<Rank> shoe;
  shoe.reserve(static_cast<std::size_t>(decks) * kCardsPerDeck);
  for (Rank rank = 0; rank < kRanksPerDeck; ++rank)
    for (int copy = 0; copy < kCopiesPerRank * decks; ++copy) shoe.push_back(rank);
  return shoe;
}

// A player's personal deck: draw from the top (front), append collected piles
// to the bottom (back). Fixed-capacity power-of-two ring buffer -- capacity is
// the whole shoe, so it never grows mid-game.
class PlayerDeck {
 public:
  PlayerDeck() = default;
  explicit PlayerDeck(std::size_t capacity)
      : buffer_(std::bit_ceil(capacity < 1 ? std::size_t{1} : capacity)),
        mask_(buffer_.size() - 1) {}

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  Rank draw() {
    assert(count_ > 0);
    const Rank card = buffer_[head_];
    head_ = (head_ + 1) & mask_;
    --count_;
    return card;
  }

  void push_bottom(Rank card) {
    assert(count_ < buffer_.size());
    buffer_[(head_ + count_) & mask_] = card;
    ++count_;
  }

  void append_bottom(std::span<const Rank> cards) {
    for (const Rank card : cards) push_bottom(card);
  }

  // Top card first; for inspection and tests, not the hot path.
  std::vector<Rank> snapshot() const {
    std::vector<Rank> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) out.push_back(buffer_[(head_ + i) & mask_]);
    return out;
  }

 private:
  std::vector<Rank> buffer_;
  std::size_t mask_ = 0;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
};

// Round-robin deal starting with player 0: shoe position i goes to player
// i % players, and the first card a player receives ends up on top.
inline std::vector<PlayerDeck> deal(std::span<const Rank> shoe, int players) {
  if (players < 2) throw std::invalid_argument("players must be >= 2");
  if (shoe.empty()) throw std::invalid_argument("cannot deal an empty shoe");
  std::vector<PlayerDeck> decks;
  decks.reserve(static_cast<std::size_t>(players));
  for (int p = 0; p < players; ++p) decks.emplace_back(shoe.size());
  for (std::size_t i = 0; i < shoe.size(); ++i)
    decks[i % static_cast<std::size_t>(players)].push_bottom(shoe[i]);
  return decks;
}

enum class GameStatus { Running, Finished, Aborted };

// ---- Turn events ----------------------------------------------------------
// Emitted in causal order. A HandWon always follows the CardPlayed that
// completed the match, on the same turn, by the same player.

struct CardPlayed {
  int player;
  Rank rank;
  std::int64_t turn;
  friend bool operator==(const CardPlayed&, const CardPlayed&) = default;
};

struct HandWon {
  int player;
  int pile_size;  // cards collected, including the matching pair
  std::int64_t turn;
  friend bool operator==(const HandWon&, const HandWon&) = default;
};

struct PlayerEliminated {
  int player;
  std::int64_t turn;
  friend bool operator==(const PlayerEliminated&, const PlayerEliminated&) = default;
};

struct GameEnded {
  int winner;
  std::int64_t total_turns;
  friend bool operator==(const GameEnded&, const GameEnded&) = default;
};

using TurnEvent = std::variant<CardPlayed, HandWon, PlayerEliminated, GameEnded>;

// Observer that discards everything; the compiler erases the calls entirely.
struct NullObserver {
  template <typename Event>
  constexpr void operator()(const Event&) const noexcept {}
};

struct GameState {
  GameConfig config;
  std::vector<PlayerDeck> decks;
  std::vector<Rank> pile;  // pile[0] is the bottom, pile.back() the top
  std::vector<std::uint8_t> eliminated;
  int alive = 0;
  int current = 0;  // always a live player while Running
  std::int64_t turns = 0;
  GameStatus status = GameStatus::Running;
  int winner = -1;

  static GameState deal_from(const GameConfig& config, std::span<const Rank> shoe) {
    config.validate();
    GameState state;
    state.config = config;
    state.decks = deal(shoe, config.players);
    state.pile.reserve(shoe.size());
    state.eliminated.assign(static_cast<std::size_t>(config.players), 0);
    state.alive = config.players;
    return state;
  }

  std::size_t cards_in_play() const {
    std::size_t total = pile.size();
    for (const PlayerDeck& deck : decks) total += deck.size();
    return total;
  }
};

// Advance the game by one turn: the current player plays one card, then either
// collects a matched pile (and stays current) or the rotation moves on,
// eliminating any empty-decked players it passes over. Ends the game when one
// player remains, or aborts it when the turn cap is reached.
template <typename Observer>
void step(GameState& state, RandomStream& rng, Observer&& observe) {
  assert(state.status == GameStatus::Running);
  if (state.turns >= state.config.turn_cap) {
    state.status = GameStatus::Aborted;
    return;
  }

  PlayerDeck& deck = state.decks[static_cast<std::size_t>(state.current)];
  assert(!deck.empty());
  const Rank played = deck.draw();
  ++state.turns;
  const bool match = !state.pile.empty() && state.pile.back() == played;
  state.pile.push_back(played);
  observe(CardPlayed{state.current, played, state.turns});

  if (match) {
    // Collect: shuffle the pile and slide it under the winner's deck. The
    // winner plays again immediately, so `current` does not move.
    shuffle(std::span<Rank>(state.pile), rng);
    deck.append_bottom(state.pile);
    observe(HandWon{state.current, static_cast<int>(state.pile.size()), state.turns});
    state.pile.clear();
    return;
  }

  // No match: pass clockwise. Players found holding empty decks are
  // eliminated as the rotation reaches them.
  int seat = state.current;
  for (;;) {
    seat = seat + 1 == state.config.players ? 0 : seat + 1;
    if (state.eliminated[static_cast<std::size_t>(seat)]) continue;
    if (state.decks[static_cast<std::size_t>(seat)].empty()) {
      state.eliminated[static_cast<std::size_t>(seat)] = 1;
      --state.alive;
      observe(PlayerEliminated{seat, state.turns});
      if (state.alive == 1) {
        for (int p = 0; p < state.config.players; ++p) {
          if (!state.eliminated[static_cast<std::size_t>(p)]) {
            state.winner = p;
            break;
          }
        }
        state.status = GameStatus::Finished;
        observe(GameEnded{state.winner, state.turns});
        return;
      }
      continue;
    }
    state.current = seat;
    return;
  }
}

struct GameResult {
  std::int64_t total_turns = 0;
  int winner = -1;  // -1 when aborted
  std::vector<std::uint64_t> hand_wins;  // per player
  std::vector<int> hand_sizes;           // one entry per hand won, in order
  bool terminated = false;

  friend bool operator==(const GameResult&, const GameResult&) = default;
};

namespace detail {

template <typename Inner>
struct ResultRecorder {
  GameResult& result;
  Inner& inner;

  void operator()(const CardPlayed& e) { inner(e); }
  void operator()(const HandWon& e) {
    ++result.hand_wins[static_cast<std::size_t>(e.player)];
    result.hand_sizes.push_back(e.pile_size);
    inner(e);
  }
  void operator()(const PlayerEliminated& e) { inner(e); }
  void operator()(const GameEnded& e) { inner(e); }
};

}  // namespace detail

// Play a game from an already-arranged shoe. Deterministic given (config,
// shoe, rng): the only randomness left is pile shuffling on collection.
template <typename Observer = NullObserver>
GameResult run_game_from_shoe(const GameConfig& config, std::span<const Rank> shoe,
                              RandomStream& rng, Observer&& observe = {}) {
  GameState state = GameState::deal_from(config, shoe);
  GameResult result;
  result.hand_wins.assign(static_cast<std::size_t>(config.players), 0);
  detail::ResultRecorder<std::remove_reference_t<Observer>> recorder{result, observe};
  while (state.status == GameStatus::Running) step(state, rng, recorder);

  result.total_turns = state.turns;
  result.terminated = state.status == GameStatus::Finished;
  result.winner = result.terminated ? state.winner : -1;
  // Every card is played at least once before the game can end: a hard lower
  // bound on the duration of any terminated game.
  if (result.terminated && result.total_turns < static_cast<std::int64_t>(shoe.size()))
    throw std::logic_error("game ended in fewer turns than cards dealt");
  return result;
}

// Play one full game: build the shoe, shuffle it, deal, and run to the end
// (or to config.turn_cap, in which case the result is marked not terminated).
template <typename Observer = NullObserver>
GameResult run_game(const GameConfig& config, RandomStream& rng, Observer&& observe = {}) {
  config.validate();
  std::vector<Rank> shoe = build_shoe(config.decks);
  shuffle(std::span<Rank>(shoe), rng);
  return run_game_from_shoe(config, shoe, rng, std::forward<Observer>(observe));
}

}  // namespace bhikar
