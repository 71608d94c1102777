#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "autostruct/compiler.hpp"
#include "autostruct/presentation.hpp"

namespace autostruct {

/// Random words of L(dfa): a length is drawn uniformly from those <=
/// max_length that have accepted words, then a word of that length
/// uniformly. Empty when the language has no word that short.
std::vector<Word> sample_words(const Dfa& dfa, std::mt19937_64& rng, std::size_t count, std::size_t max_length);

/// Decides that the last track of relation `name` is a function of the
/// others on the domain: A x1..xn E y (R(x,y) & A z (R(x,z) -> z = y)).
bool is_functional(const Presentation& p, const std::string& name, const CompileOptions& options = {});

struct GrowthSample {
  std::vector<std::string> arguments;
  std::string value;
};

struct GrowthReport {
  std::string relation;
  /// State count of the relation's minimal DFA.
  std::size_t constant = 0;
  std::size_t samples = 0;
  /// Largest |f(x)| - max |x_i| seen.
  long long max_excess = 0;
  /// Samples with |f(x)| > max |x_i| + constant.
  std::vector<GrowthSample> violations;
};

/// Samples argument tuples from the domain and checks
/// |f(x1..xn)| <= max |xi| + C with C the state count of f's graph. Throws
/// PreconditionFailed when the relation is not functional.
GrowthReport growth_check(const Presentation& p, const std::string& name, std::size_t samples,
                          std::uint64_t seed = 1, std::size_t max_length = 16,
                          const CompileOptions& options = {});

}  // namespace autostruct
