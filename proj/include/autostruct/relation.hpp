#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "autostruct/alphabet.hpp"
#include "autostruct/automaton.hpp"

namespace autostruct {

/// Digit value used for the pad symbol on a track: `base.size()`.
inline std::uint32_t pad_digit(const Alphabet& base) { return static_cast<std::uint32_t>(base.size()); }

/// Track symbol for a column of digits (each < base.size() + 1, not all pad).
Symbol encode_column(const Alphabet& base, std::span<const std::uint32_t> digits);
/// Inverse of encode_column; `digits.size()` selects the arity.
void decode_column(const Alphabet& base, Symbol symbol, std::span<std::uint32_t> digits);

/// Convolution of `strings` over the k-track alphabet of `base`.
Word convolve(const Alphabet& base, const std::vector<Word>& strings);
/// Splits a track word into its k component strings (pads removed).
std::vector<Word> deconvolve(const Alphabet& base, int arity, std::span<const Symbol> word);

/// Accepts exactly the well-padded strings over the k-track alphabet.
Dfa valid_convolutions(const AlphabetPtr& base, int arity);

/// A k-ary relation over base-alphabet strings, stored as the minimal complete
/// DFA of its convolution language. The language is always contained in the
/// valid convolutions.
class RegularRelation {
 public:
  /// `acceptor` must be over `Alphabet::tracks(base, arity)`; it is
  /// intersected with the valid convolutions and minimized.
  RegularRelation(AlphabetPtr base, int arity, const Dfa& acceptor);

  static RegularRelation empty(AlphabetPtr base, int arity);
  /// All k-tuples of strings over the base.
  static RegularRelation full(AlphabetPtr base, int arity);
  /// Unary relation from a language over the base.
  static RegularRelation from_language(const Dfa& language);
  /// Like the constructor, but the caller guarantees the acceptor only
  /// accepts valid convolutions; skips the intersection.
  static RegularRelation from_valid(AlphabetPtr base, int arity, const Dfa& acceptor);

  const AlphabetPtr& base() const { return base_; }
  int arity() const { return arity_; }
  const AlphabetPtr& alphabet() const { return dfa_.alphabet(); }
  const Dfa& dfa() const { return dfa_; }

  bool contains(const std::vector<Word>& tuple) const;
  bool empty() const { return is_empty(dfa_); }
  bool infinite() const { return is_infinite(dfa_); }

  /// Canonical-form identity; equivalent to language equality.
  bool operator==(const RegularRelation& other) const;

 private:
  struct Canonical {};
  RegularRelation(AlphabetPtr base, int arity, Dfa minimal, Canonical);

  AlphabetPtr base_;
  int arity_;
  Dfa dfa_;
};

/// State of a track-by-track construction, encoded as a vector of words.
using StateKey = std::vector<std::uint32_t>;

/// Builds a relation of the given arity by exploring `step` from `init`.
/// `step` receives one digit per track (pad = base.size()) and writes the
/// successor, returning false for a dead transition. Columns that would break
/// the pad-suffix rule are rejected before `step` is called.
using StepFn = std::function<bool(const StateKey& from, std::span<const std::uint32_t> column,
                                  StateKey& to)>;
using AcceptFn = std::function<bool(const StateKey&)>;

RegularRelation build_relation(const AlphabetPtr& base, int arity, const StateKey& init,
                               const StepFn& step, const AcceptFn& accept,
                               const Limits& limits = {});

/// One conjunct of a synchronized product: a relation and the result track
/// read by each of its tracks. Entries may repeat.
struct TrackBinding {
  const RegularRelation* relation;
  std::vector<int> tracks;
};

/// Tuples (x_0..x_{k-1}) such that every binding accepts its selected
/// sub-tuple.
RegularRelation synchronize(const AlphabetPtr& base, int arity,
                            const std::vector<TrackBinding>& parts, const Limits& limits = {});

RegularRelation intersect(const RegularRelation& a, const RegularRelation& b);
RegularRelation unite(const RegularRelation& a, const RegularRelation& b);
RegularRelation subtract(const RegularRelation& a, const RegularRelation& b);

/// Appends a track ranging over L(a).
RegularRelation cylindrify(const RegularRelation& r, const Dfa& a, const Limits& limits = {});

/// Deletes track `track` (0-based), keeping tuples with some witness in L(a)
/// on that track. Requires arity >= 2.
RegularRelation project_exists(const RegularRelation& r, int track, const Dfa& a,
                               const Limits& limits = {});
/// Tuples every L(a)-value of track `track` extends into r. Requires arity >= 2.
RegularRelation project_forall(const RegularRelation& r, int track, const Dfa& a,
                               const Limits& limits = {});
/// Arity-1 forms of the projections: does some / every string of L(a) lie in r?
bool exists_any(const RegularRelation& r, const Dfa& a);
bool forall_any(const RegularRelation& r, const Dfa& a);

/// Fixes track `track` to the constant `c`. Requires arity >= 2.
RegularRelation instantiate(const RegularRelation& r, int track, std::span<const Symbol> c,
                            const Limits& limits = {});

/// Result tuple y has y_j = x_{perm[j]} for (x_0..x_{k-1}) in r.
RegularRelation rearrange(const RegularRelation& r, const std::vector<int>& perm,
                          const Limits& limits = {});

/// Linkage: tuples (a_0 .. a_{offset+m2-1}) with (a_0..a_{m1-1}) in r and
/// (a_offset .. a_{offset+m2-1}) in s. Requires offset + 1 < m1 <= offset + m2.
RegularRelation link(const RegularRelation& r, const RegularRelation& s, int offset,
                     const Limits& limits = {});

RegularRelation equality_relation(const AlphabetPtr& base);
/// Length-lexicographic x <= y, ties broken by symbol id.
RegularRelation llex_relation(const AlphabetPtr& base);

/// Tuples with infinitely many witnesses on track `track`. Requires arity >= 2.
RegularRelation exists_infinitely(const RegularRelation& r, int track, const Limits& limits = {});
/// Tuples whose witness set on `track` is finite with size = residue mod
/// modulus. Requires arity >= 2 and 0 <= residue < modulus.
RegularRelation exists_mod(const RegularRelation& r, int track, std::uint32_t modulus,
                           std::uint32_t residue, const Limits& limits = {});

/// Size of L(dfa) modulo `modulus`, or nullopt when infinite.
std::optional<std::uint32_t> language_size_mod(const Dfa& dfa, std::uint32_t modulus);

}  // namespace autostruct
