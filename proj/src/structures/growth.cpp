#include "autostruct/growth.hpp"

#include <algorithm>
#include <limits>

#include "autostruct/error.hpp"

namespace autostruct {

std::vector<Word> sample_words(const Dfa& dfa, std::mt19937_64& rng, std::size_t count, std::size_t max_length) {
  const std::size_t n = dfa.num_states(), m = dfa.num_symbols();
  // ways[len][q]: accepted words of length len from q, as doubles to avoid
  // overflow; only ratios matter.
  std::vector<std::vector<double>> ways(max_length + 1, std::vector<double>(n, 0.0));
  for (State q = 0; q < n; ++q) ways[0][q] = dfa.accepting(q) ? 1.0 : 0.0;
  for (std::size_t len = 1; len <= max_length; ++len)
    for (State q = 0; q < n; ++q) {
      double w = 0;
      for (State r : dfa.row(q)) w += ways[len - 1][r];
      ways[len][q] = w;
    }
  std::vector<std::size_t> lengths;
  for (std::size_t len = 0; len <= max_length; ++len)
    if (ways[len][dfa.initial()] > 0) lengths.push_back(len);
  std::vector<Word> out;
  if (lengths.empty()) return out;
  std::uniform_int_distribution<std::size_t> pick_len(0, lengths.size() - 1);
  std::vector<double> weights(m);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t len = lengths[pick_len(rng)];
    Word w;
    State q = dfa.initial();
    for (; len > 0; --len) {
      for (Symbol a = 0; a < m; ++a) weights[a] = ways[len - 1][dfa.next(q, a)];
      std::discrete_distribution<Symbol> pick(weights.begin(), weights.end());
      const Symbol a = pick(rng);
      w.push_back(a);
      q = dfa.next(q, a);
    }
    out.push_back(std::move(w));
  }
  return out;
}

bool is_functional(const Presentation& p, const std::string& name, const CompileOptions& options) {
  const int k = p.arity(name);
  if (k < 2) throw PreconditionFailed("'" + name + "' is not the graph of a function (arity < 2)", "functionality");
  using namespace fo;
  std::vector<std::string> xs;
  for (int i = 1; i < k; ++i) xs.push_back("x" + std::to_string(i));
  auto with = [&](const std::string& y) {
    auto args = xs;
    args.push_back(y);
    return atom(name, args);
  };
  FormulaPtr f = exists("y", conjunction(with("y"), forall("z", implication(with("z"), equal("z", "y")))));
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) f = forall(*it, f);
  return decide(p, *f, options);
}

GrowthReport growth_check(const Presentation& p, const std::string& name, std::size_t samples, std::uint64_t seed,
                          std::size_t max_length, const CompileOptions& options) {
  if (!is_functional(p, name, options))
    throw PreconditionFailed("'" + name + "' is not functional in its last argument", "functionality");
  const auto& r = p.relation(name);
  const int k = r.arity();
  GrowthReport report;
  report.relation = name;
  report.constant = r.dfa().num_states();
  report.max_excess = std::numeric_limits<long long>::min();
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<Word> args;
    std::size_t longest = 0;
    for (int t = 0; t + 1 < k; ++t) {
      auto w = sample_words(p.domain_dfa(), rng, 1, max_length);
      if (w.empty()) throw PreconditionFailed("the domain has no elements to sample", "nonempty domain");
      longest = std::max(longest, w[0].size());
      args.push_back(std::move(w[0]));
    }
    RegularRelation image = r;
    for (const auto& a : args) image = instantiate(image, 0, a);
    const auto values = enumerate(image.dfa(), 2);
    if (values.size() != 1) throw Error("growth check: '" + name + "' has no unique value at a sampled tuple");
    const Word& y = values[0];
    const long long excess = static_cast<long long>(y.size()) - static_cast<long long>(longest);
    report.max_excess = std::max(report.max_excess, excess);
    ++report.samples;
    if (excess > static_cast<long long>(report.constant)) {
      GrowthSample s;
      for (const auto& a : args) s.arguments.push_back(p.format_element(a));
      s.value = p.format_element(y);
      report.violations.push_back(std::move(s));
    }
  }
  if (report.samples == 0) report.max_excess = 0;
  return report;
}

}  // namespace autostruct
