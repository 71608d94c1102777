#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace autostruct {

struct Term {
  enum class Kind { variable, constant };
  Kind kind = Kind::variable;
  /// Variable name, or the constant's text without quotes.
  std::string text;

  bool is_variable() const { return kind == Kind::variable; }
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// First-order formula extended with the infinity quantifier EI and the
/// counting quantifiers E[n,m].
struct Formula {
  enum class Kind {
    atom,
    equal,
    negation,
    conjunction,
    disjunction,
    implication,
    equivalence,
    exists,
    forall,
    exists_infinitely,
    exists_mod,
  };

  Kind kind;
  /// Relation name for atoms; bound variable for quantifiers.
  std::string name;
  /// Atom arguments, or the two sides of an equality.
  std::vector<Term> terms;
  /// Operand(s); quantifiers and negation use `left` only.
  FormulaPtr left, right;
  std::uint32_t modulus = 0, residue = 0;
  std::size_t line = 1, column = 1;

  bool is_quantifier() const { return kind >= Kind::exists; }
};

/// Parses a formula. Binders that shadow an enclosing binder or a free
/// variable are renamed apart. Throws SyntaxError.
FormulaPtr parse_formula(std::string_view text);

/// Fully parenthesized rendering that parse_formula accepts.
std::string to_string(const Formula& f);

/// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula& f);

namespace fo {

FormulaPtr atom(std::string relation, std::vector<std::string> variables);
FormulaPtr equal(std::string x, std::string y);
FormulaPtr negation(FormulaPtr f);
FormulaPtr conjunction(FormulaPtr a, FormulaPtr b);
FormulaPtr disjunction(FormulaPtr a, FormulaPtr b);
FormulaPtr implication(FormulaPtr a, FormulaPtr b);
FormulaPtr equivalence(FormulaPtr a, FormulaPtr b);
FormulaPtr exists(std::string x, FormulaPtr body);
FormulaPtr forall(std::string x, FormulaPtr body);
FormulaPtr exists_infinitely(std::string x, FormulaPtr body);
FormulaPtr exists_mod(std::uint32_t n, std::uint32_t m, std::string x, FormulaPtr body);

}  // namespace fo

}  // namespace autostruct
