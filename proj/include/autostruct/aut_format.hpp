#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "autostruct/automaton.hpp"
#include "autostruct/relation.hpp"

namespace autostruct {

/// Contents of a `.aut` file.
struct AutFile {
  AlphabetPtr base;
  int arity = 1;
  Nfa automaton;
};

/// Parses the line-oriented automaton format:
///
///     alphabet: 0 1
///     tracks: 2 pad _
///     states: 3
///     initial: 0
///     accepting: 2
///     trans: 0 0|1 -> 1
///
/// `tracks:` is optional. Blank lines and `#` comments are ignored. Missing
/// transitions go to an implicit rejecting sink. Throws FormatError.
AutFile parse_aut(std::string_view text);
AutFile load_aut(const std::filesystem::path& path);

/// Loads a `.aut` file as a relation. When `base` is given the file's
/// alphabet must equal it.
RegularRelation relation_from_aut(const AutFile& file, const AlphabetPtr& base = nullptr);

/// Writes the trimmed DFA (useful states only, canonical order).
std::string format_aut(const Dfa& dfa);
std::string format_aut(const RegularRelation& r);

/// Graphviz rendering with deterministic node and edge order.
std::string to_dot(const Dfa& dfa, std::string_view name = "automaton");

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace autostruct
