#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "autostruct/presentation.hpp"

namespace autostruct {

/// Deterministic Turing machine on a tape that is infinite to the right. A
/// left move on the first cell leaves the head in place.
struct TuringMachine {
  struct Rule {
    std::string state, read, next, write;
    char move = 'R';  // 'L' or 'R'
  };

  std::vector<std::string> tape;  // includes the blank
  std::string blank;
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> halting;
  std::vector<Rule> rules;

  const Rule* rule(const std::string& state, const std::string& read) const;
};

/// Reads the line format
///
///     tape: B 0 1
///     blank: B
///     states: q0 q1 h
///     initial: q0
///     halt: h
///     trans q0 1 -> q1 0 R
///
/// and validates it. `#` starts a comment. Throws FormatError.
TuringMachine parse_turing_machine(std::string_view text);
std::string format_turing_machine(const TuringMachine& tm);

/// Throws FormatError on undeclared symbols, duplicate rules, rules out of
/// halting states, overlapping tape and state names, or the reserved `_`.
void validate(const TuringMachine& tm);

struct Configuration {
  std::vector<std::string> tape;  // cells 0.., trailing blanks optional
  std::size_t head = 0;
  std::string state;
};

/// Configuration graph with relation Edge for one computation step.
/// Configurations are written `left state head right` over tape symbols and
/// state names: `left` is every cell before the head, `head` the scanned
/// cell, and `right` the cells after it with trailing blanks removed.
Presentation tm_config_space(const TuringMachine& tm);

Word encode_configuration(const Presentation& space, const TuringMachine& tm, const Configuration& c);
Configuration initial_configuration(const TuringMachine& tm, const std::vector<std::string>& input);

}  // namespace autostruct
