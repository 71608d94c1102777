#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace autostruct {

using Symbol = std::uint32_t;
using State = std::uint32_t;

/// A finite string over some alphabet, as symbol ids.
using Word = std::vector<Symbol>;

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Ordered finite symbol table.
///
/// Two flavours share this type: a plain alphabet with explicit names, and the
/// k-track convolution alphabet over a base alphabet. Track symbols are the
/// k-tuples over base ∪ {pad}, excluding the all-pad tuple; the id of a tuple is
/// its mixed-radix value with track 0 most significant and the pad digit equal
/// to `base.size()`, so ids follow the lexicographic order of the tuples. The
/// 1-track alphabet over a base is the base itself.
class Alphabet : public std::enable_shared_from_this<Alphabet> {
 public:
  static AlphabetPtr make(std::vector<std::string> names);
  static AlphabetPtr tracks(const AlphabetPtr& base, int arity);

  std::size_t size() const { return size_; }

  /// Display name; track symbols render as `a|b|_`.
  std::string name(Symbol s) const;
  std::optional<Symbol> find(std::string_view name) const;
  /// Like `find` but throws InvalidArgument.
  Symbol at(std::string_view name) const;

  bool is_track() const { return arity_ > 1; }
  int arity() const { return arity_; }
  /// Base alphabet of a track alphabet; the alphabet itself when plain.
  AlphabetPtr base() const;
  const std::vector<std::string>& names() const { return names_; }

  /// Parses a word: whitespace-separated symbol names, or, when the text has
  /// no whitespace, one symbol per character.
  Word parse_word(std::string_view text) const;
  /// Inverse of parse_word: concatenates single-character names, otherwise
  /// joins with spaces.
  std::string format_word(std::span<const Symbol> word) const;

  bool operator==(const Alphabet& other) const;

 private:
  Alphabet() = default;

  std::size_t size_ = 0;
  int arity_ = 1;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> index_;
  AlphabetPtr base_;
  bool single_char_names_ = true;
};

/// Pointer-or-content equality.
bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

/// Throws AlphabetMismatch unless the alphabets are equal.
void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b, std::string_view what);

/// Returns a name not in `taken`, trying `preferred` candidates first.
std::string fresh_symbol_name(const std::vector<std::string>& taken,
                              std::initializer_list<std::string_view> preferred);

}  // namespace autostruct
