#include "autostruct/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "autostruct/error.hpp"

namespace autostruct {

namespace {

constexpr std::size_t kMaxTrackAlphabet = std::size_t{1} << 24;

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isspace(c) || c == '|' || c == '"';
  });
}

}  // namespace

AlphabetPtr Alphabet::make(std::vector<std::string> names) {
  if (names.empty()) throw InvalidArgument("alphabet must be nonempty");
  std::shared_ptr<Alphabet> a(new Alphabet());
  a->size_ = names.size();
  for (Symbol i = 0; i < names.size(); ++i) {
    if (!valid_name(names[i]))
      throw InvalidArgument("invalid symbol name '" + names[i] + "'");
    if (!a->index_.emplace(names[i], i).second)
      throw InvalidArgument("duplicate symbol name '" + names[i] + "'");
    if (names[i].size() != 1) a->single_char_names_ = false;
  }
  a->names_ = std::move(names);
  return a;
}

AlphabetPtr Alphabet::tracks(const AlphabetPtr& base, int arity) {
  if (arity < 1) throw InvalidArgument("track arity must be at least 1");
  if (base->is_track()) throw InvalidArgument("track alphabet over a track alphabet");
  if (arity == 1) return base;
  if (base->find("_")) throw InvalidArgument("'_' is reserved for the pad on track alphabets");
  std::size_t total = 1;
  for (int i = 0; i < arity; ++i) {
    total *= base->size() + 1;
    if (total > kMaxTrackAlphabet)
      throw InvalidArgument("track alphabet of arity " + std::to_string(arity) + " over " +
                            std::to_string(base->size()) + " symbols is too large");
  }
  std::shared_ptr<Alphabet> a(new Alphabet());
  a->size_ = total - 1;
  a->arity_ = arity;
  a->base_ = base;
  a->single_char_names_ = false;
  return a;
}

AlphabetPtr Alphabet::base() const {
  if (base_) return base_;
  return shared_from_this();
}

std::string Alphabet::name(Symbol s) const {
  if (s >= size_) throw InvalidArgument("symbol id out of range");
  if (!is_track()) return names_[s];
  const std::size_t radix = base_->size() + 1;
  std::vector<std::string> parts(arity_);
  for (int t = arity_ - 1; t >= 0; --t) {
    const std::size_t d = s % radix;
    s = static_cast<Symbol>(s / radix);
    parts[t] = d == base_->size() ? "_" : base_->names_[d];
  }
  std::string out = parts[0];
  for (int t = 1; t < arity_; ++t) out += "|" + parts[t];
  return out;
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  if (!is_track()) {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const std::size_t radix = base_->size() + 1;
  std::size_t id = 0;
  int tracks = 0;
  std::size_t start = 0;
  bool all_pad = true;
  while (true) {
    const std::size_t bar = name.find('|', start);
    std::string_view part = name.substr(start, bar == std::string_view::npos ? name.npos : bar - start);
    std::size_t digit;
    if (part == "_") {
      digit = base_->size();
    } else {
      auto d = base_->find(part);
      if (!d) return std::nullopt;
      digit = *d;
      all_pad = false;
    }
    id = id * radix + digit;
    ++tracks;
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (tracks != arity_ || all_pad) return std::nullopt;
  return static_cast<Symbol>(id);
}

Symbol Alphabet::at(std::string_view name) const {
  auto s = find(name);
  if (!s) throw InvalidArgument("symbol '" + std::string(name) + "' is not in the alphabet");
  return *s;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word out;
  const bool has_space = std::any_of(text.begin(), text.end(),
                                     [](unsigned char c) { return std::isspace(c); });
  if (!has_space) {
    if (text.empty()) return out;
    // Whole text may itself be a multi-character symbol.
    if (auto s = find(text); s && text.size() > 1) return {*s};
    for (char c : text) out.push_back(at(std::string_view(&c, 1)));
    return out;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.push_back(at(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

std::string Alphabet::format_word(std::span<const Symbol> word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!single_char_names_ && i > 0) out += ' ';
    out += name(word[i]);
  }
  return out;
}

bool Alphabet::operator==(const Alphabet& other) const {
  if (this == &other) return true;
  if (arity_ != other.arity_ || size_ != other.size_) return false;
  if (is_track()) return same_alphabet(base_, other.base_);
  return names_ == other.names_;
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b, std::string_view what) {
  if (!same_alphabet(a, b)) throw AlphabetMismatch(std::string(what) + ": alphabets differ");
}

std::string fresh_symbol_name(const std::vector<std::string>& taken,
                              std::initializer_list<std::string_view> preferred) {
  auto free = [&](std::string_view n) {
    return std::find(taken.begin(), taken.end(), n) == taken.end();
  };
  for (auto p : preferred)
    if (free(p)) return std::string(p);
  for (int i = 0;; ++i) {
    std::string n = "pad" + std::to_string(i);
    if (free(n)) return n;
  }
}

}  // namespace autostruct
