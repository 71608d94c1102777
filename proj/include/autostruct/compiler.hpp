#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autostruct/formula.hpp"
#include "autostruct/presentation.hpp"

namespace autostruct {

struct CompileOptions {
  /// Largest intermediate DFA allowed before ResourceLimit is thrown.
  std::size_t state_cap = 200000;
};

/// Result of compiling a formula: the relation of satisfying tuples over the
/// free variables, or a truth value for sentences.
struct CompiledFormula {
  std::vector<std::string> variables;
  std::optional<RegularRelation> relation;
  bool truth = false;
  std::string source;

  bool is_sentence() const { return variables.empty(); }
};

CompiledFormula compile(const Presentation& p, const Formula& f, const CompileOptions& options = {});
CompiledFormula compile(const Presentation& p, std::string_view text,
                        const CompileOptions& options = {});

/// Truth of a sentence; CompileError when free variables remain.
bool decide(const Presentation& p, const Formula& sentence, const CompileOptions& options = {});
bool decide(const Presentation& p, std::string_view sentence, const CompileOptions& options = {});

struct Witnesses {
  std::vector<std::string> variables;
  /// One row per satisfying tuple, length-lex in convolution order.
  std::vector<std::vector<std::string>> rows;
};

Witnesses witness(const Presentation& p, const Formula& f, std::size_t max_count,
                  const CompileOptions& options = {});
Witnesses witness(const Presentation& p, std::string_view text, std::size_t max_count,
                  const CompileOptions& options = {});

/// Extends `p` with the relation defined by `f`. `parameters` fixes the track
/// order; by default the free variables in order of first occurrence.
Presentation define_relation(const Presentation& p, const std::string& name, std::string_view text,
                             const std::vector<std::string>& parameters = {},
                             const CompileOptions& options = {});

}  // namespace autostruct
