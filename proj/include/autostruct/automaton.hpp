#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "autostruct/alphabet.hpp"

namespace autostruct {

/// Caps on intermediate automata. Constructions throw ResourceLimit when a
/// result would exceed `max_states`.
struct Limits {
  std::size_t max_states = std::numeric_limits<std::size_t>::max();
};

/// Nondeterministic automaton with a single initial state and no
/// epsilon-moves.
class Nfa {
 public:
  Nfa(AlphabetPtr alphabet, std::size_t num_states, State initial = 0);

  State add_state();
  void add_transition(State from, Symbol symbol, State to);
  void set_accepting(State s, bool accepting = true);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return accepting_.size(); }
  State initial() const { return initial_; }
  bool accepting(State s) const { return accepting_[s] != 0; }
  /// Outgoing (symbol, target) pairs, in insertion order.
  const std::vector<std::pair<Symbol, State>>& transitions(State s) const { return out_[s]; }

  /// Exactly one outgoing transition per (state, symbol).
  bool is_deterministic() const;
  bool accepts(std::span<const Symbol> word) const;

 private:
  AlphabetPtr alphabet_;
  State initial_;
  std::vector<char> accepting_;
  std::vector<std::vector<std::pair<Symbol, State>>> out_;
};

/// Complete deterministic automaton with a dense transition table.
class Dfa {
 public:
  Dfa(AlphabetPtr alphabet, std::size_t num_states, State initial, std::vector<State> delta,
      std::vector<char> accepting);

  static Dfa empty_language(AlphabetPtr alphabet);
  static Dfa universal(AlphabetPtr alphabet);
  static Dfa single_word(AlphabetPtr alphabet, std::span<const Symbol> word);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  std::size_t num_symbols() const { return num_symbols_; }
  std::size_t num_states() const { return accepting_.size(); }
  State initial() const { return initial_; }
  State next(State s, Symbol a) const { return delta_[std::size_t{s} * num_symbols_ + a]; }
  bool accepting(State s) const { return accepting_[s] != 0; }
  std::span<const State> row(State s) const {
    return {delta_.data() + std::size_t{s} * num_symbols_, num_symbols_};
  }

  State run(std::span<const Symbol> word) const;
  bool accepts(std::span<const Symbol> word) const { return accepting(run(word)); }

  Nfa to_nfa() const;

  /// Same alphabet, state count, initial state, table and accepting set.
  bool structurally_equal(const Dfa& other) const;

 private:
  AlphabetPtr alphabet_;
  std::size_t num_symbols_;
  State initial_;
  std::vector<State> delta_;
  std::vector<char> accepting_;
};

/// Subset construction; the result is complete and keeps only reachable
/// subsets.
Dfa determinize(const Nfa& nfa, const Limits& limits = {});

/// Minimal complete DFA. States are numbered in breadth-first order from the
/// initial state, exploring symbols in id order, so language-equal inputs give
/// structurally equal outputs.
Dfa minimize(const Dfa& dfa);

enum class BoolOp { conjunction, disjunction, difference, symmetric_difference };

/// Synchronous product; difference is L(a) \ L(b).
Dfa product(const Dfa& a, const Dfa& b, BoolOp op, const Limits& limits = {});

/// L(universe) \ L(a).
Dfa complement(const Dfa& a, const Dfa& universe);

struct Emptiness {
  bool empty = true;
  /// Length-lexicographically least accepted word when nonempty.
  std::optional<Word> witness;
};

Emptiness check_emptiness(const Dfa& dfa);
bool is_empty(const Dfa& dfa);
bool is_infinite(const Dfa& dfa);
bool equivalent(const Dfa& a, const Dfa& b);

/// Exact language size, or nullopt when the language is infinite. Saturates
/// at the maximum of uint64.
std::optional<std::uint64_t> language_size(const Dfa& dfa);

/// First `max_count` accepted words in length-lexicographic order.
std::vector<Word> enumerate(const Dfa& dfa, std::size_t max_count);

/// Accepted words of exactly `length`, in lexicographic order, at most
/// `max_count` of them.
std::vector<Word> enumerate_length(const Dfa& dfa, std::size_t length, std::size_t max_count);

/// States from which some accepting state is reachable.
std::vector<char> coreachable(const Dfa& dfa);

/// Keeps only states reachable from the initial one; numbering unchanged in
/// relative order.
Dfa reachable_part(const Dfa& dfa);

}  // namespace autostruct
