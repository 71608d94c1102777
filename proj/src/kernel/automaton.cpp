#include "autostruct/automaton.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "autostruct/error.hpp"

namespace autostruct {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::size_t h = v.size() * 0x9e3779b97f4a7c15ULL;
    for (State s : v) h = (h ^ s) * 0x100000001b3ULL + (h >> 29);
    return h;
  }
};

void check_limit(std::size_t states, const Limits& limits) {
  if (states > limits.max_states)
    throw ResourceLimit("automaton exceeds the state cap of " + std::to_string(limits.max_states));
}

// Refinable partition used by the minimizer. `marked` and `touched` are shared
// between the block and cord partitions, as in Valmari and Lehtinen's layout.
struct Partition {
  std::size_t sets = 0;
  std::vector<std::uint32_t> elems, loc, set_of, first, past;

  void init(std::size_t n) {
    sets = n > 0 ? 1 : 0;
    elems.resize(n);
    loc.resize(n);
    set_of.assign(n, 0);
    first.assign(n + 1, 0);
    past.assign(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i) elems[i] = loc[i] = i;
    if (n > 0) past[0] = static_cast<std::uint32_t>(n);
  }

  void mark(std::uint32_t e, std::vector<std::uint32_t>& marked,
            std::vector<std::uint32_t>& touched) {
    const std::uint32_t s = set_of[e];
    const std::uint32_t i = loc[e];
    const std::uint32_t j = first[s] + marked[s];
    elems[i] = elems[j];
    loc[elems[i]] = i;
    elems[j] = e;
    loc[e] = j;
    if (marked[s]++ == 0) touched.push_back(s);
  }

  void split(std::vector<std::uint32_t>& marked, std::vector<std::uint32_t>& touched) {
    while (!touched.empty()) {
      const std::uint32_t s = touched.back();
      touched.pop_back();
      const std::uint32_t j = first[s] + marked[s];
      if (j == past[s]) {
        marked[s] = 0;
        continue;
      }
      const auto z = static_cast<std::uint32_t>(sets);
      if (marked[s] <= past[s] - j) {
        first[z] = first[s];
        past[z] = first[s] = j;
      } else {
        past[z] = past[s];
        first[z] = past[s] = j;
      }
      for (std::uint32_t i = first[z]; i < past[z]; ++i) set_of[elems[i]] = z;
      marked[s] = 0;
      marked[z] = 0;
      ++sets;
    }
  }
};

}  // namespace

// ---------------------------------------------------------------- Nfa

Nfa::Nfa(AlphabetPtr alphabet, std::size_t num_states, State initial)
    : alphabet_(std::move(alphabet)), initial_(initial), accepting_(num_states, 0),
      out_(num_states) {
  if (!alphabet_ || alphabet_->size() == 0) throw InvalidArgument("automaton needs a nonempty alphabet");
  if (num_states == 0 || initial >= num_states) throw InvalidArgument("initial state out of range");
}

State Nfa::add_state() {
  accepting_.push_back(0);
  out_.emplace_back();
  return static_cast<State>(accepting_.size() - 1);
}

void Nfa::add_transition(State from, Symbol symbol, State to) {
  if (from >= num_states() || to >= num_states()) throw InvalidArgument("transition state out of range");
  if (symbol >= alphabet_->size()) throw InvalidArgument("transition symbol out of range");
  out_[from].emplace_back(symbol, to);
}

void Nfa::set_accepting(State s, bool accepting) {
  if (s >= num_states()) throw InvalidArgument("accepting state out of range");
  accepting_[s] = accepting ? 1 : 0;
}

bool Nfa::is_deterministic() const {
  std::vector<char> seen(alphabet_->size());
  for (const auto& edges : out_) {
    if (edges.size() != alphabet_->size()) return false;
    std::fill(seen.begin(), seen.end(), 0);
    for (auto [a, _] : edges) {
      if (seen[a]) return false;
      seen[a] = 1;
    }
  }
  return true;
}

bool Nfa::accepts(std::span<const Symbol> word) const {
  std::vector<char> cur(num_states(), 0), nxt(num_states(), 0);
  cur[initial_] = 1;
  for (Symbol a : word) {
    std::fill(nxt.begin(), nxt.end(), 0);
    for (State q = 0; q < num_states(); ++q) {
      if (!cur[q]) continue;
      for (auto [b, r] : out_[q])
        if (b == a) nxt[r] = 1;
    }
    cur.swap(nxt);
  }
  for (State q = 0; q < num_states(); ++q)
    if (cur[q] && accepting_[q]) return true;
  return false;
}

// ---------------------------------------------------------------- Dfa

Dfa::Dfa(AlphabetPtr alphabet, std::size_t num_states, State initial, std::vector<State> delta,
         std::vector<char> accepting)
    : alphabet_(std::move(alphabet)), initial_(initial), delta_(std::move(delta)),
      accepting_(std::move(accepting)) {
  if (!alphabet_ || alphabet_->size() == 0) throw InvalidArgument("automaton needs a nonempty alphabet");
  num_symbols_ = alphabet_->size();
  if (num_states == 0 || initial >= num_states) throw InvalidArgument("initial state out of range");
  if (accepting_.size() != num_states || delta_.size() != num_states * num_symbols_)
    throw InvalidArgument("transition table has the wrong size");
  for (State t : delta_)
    if (t >= num_states) throw InvalidArgument("transition target out of range");
}

Dfa Dfa::empty_language(AlphabetPtr alphabet) {
  const std::size_t m = alphabet->size();
  return Dfa(std::move(alphabet), 1, 0, std::vector<State>(m, 0), {0});
}

Dfa Dfa::universal(AlphabetPtr alphabet) {
  const std::size_t m = alphabet->size();
  return Dfa(std::move(alphabet), 1, 0, std::vector<State>(m, 0), {1});
}

Dfa Dfa::single_word(AlphabetPtr alphabet, std::span<const Symbol> word) {
  const std::size_t m = alphabet->size();
  const std::size_t n = word.size() + 2;
  const auto sink = static_cast<State>(n - 1);
  std::vector<State> delta(n * m, sink);
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] >= m) throw InvalidArgument("word symbol out of range");
    delta[i * m + word[i]] = static_cast<State>(i + 1);
  }
  std::vector<char> acc(n, 0);
  acc[word.size()] = 1;
  return Dfa(std::move(alphabet), n, 0, std::move(delta), std::move(acc));
}

State Dfa::run(std::span<const Symbol> word) const {
  State q = initial_;
  for (Symbol a : word) {
    if (a >= num_symbols_) throw InvalidArgument("word symbol out of range");
    q = next(q, a);
  }
  return q;
}

Nfa Dfa::to_nfa() const {
  Nfa n(alphabet_, num_states(), initial_);
  for (State q = 0; q < num_states(); ++q) {
    n.set_accepting(q, accepting(q));
    for (Symbol a = 0; a < num_symbols_; ++a) n.add_transition(q, a, next(q, a));
  }
  return n;
}

bool Dfa::structurally_equal(const Dfa& other) const {
  return same_alphabet(alphabet_, other.alphabet_) && initial_ == other.initial_ &&
         delta_ == other.delta_ && accepting_ == other.accepting_;
}

// ---------------------------------------------------------------- algorithms

Dfa determinize(const Nfa& nfa, const Limits& limits) {
  const std::size_t m = nfa.alphabet()->size();
  std::unordered_map<std::vector<State>, State, VectorHash> index;
  std::vector<std::vector<State>> subsets;
  std::vector<State> delta;
  std::vector<char> acc;

  auto intern = [&](std::vector<State>&& s) -> State {
    auto [it, inserted] = index.try_emplace(s, static_cast<State>(subsets.size()));
    if (inserted) {
      check_limit(subsets.size() + 1, limits);
      subsets.push_back(std::move(s));
    }
    return it->second;
  };

  intern({nfa.initial()});
  std::vector<std::vector<State>> targets(m);
  for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
    for (auto& t : targets) t.clear();
    bool accepting = false;
    for (State q : subsets[cur]) {
      accepting = accepting || nfa.accepting(q);
      for (auto [a, r] : nfa.transitions(q)) targets[a].push_back(r);
    }
    acc.push_back(accepting ? 1 : 0);
    for (Symbol a = 0; a < m; ++a) {
      auto t = targets[a];
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      delta.push_back(intern(std::move(t)));
    }
  }
  return Dfa(nfa.alphabet(), subsets.size(), 0, std::move(delta), std::move(acc));
}

Dfa reachable_part(const Dfa& dfa) {
  const std::size_t n = dfa.num_states();
  const std::size_t m = dfa.num_symbols();
  std::vector<char> seen(n, 0);
  std::vector<State> stack{dfa.initial()};
  seen[dfa.initial()] = 1;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State r : dfa.row(q))
      if (!seen[r]) {
        seen[r] = 1;
        stack.push_back(r);
      }
  }
  std::vector<State> id(n, 0);
  std::size_t k = 0;
  for (State q = 0; q < n; ++q)
    if (seen[q]) id[q] = static_cast<State>(k++);
  if (k == n) return dfa;
  std::vector<State> delta;
  delta.reserve(k * m);
  std::vector<char> acc;
  acc.reserve(k);
  for (State q = 0; q < n; ++q) {
    if (!seen[q]) continue;
    acc.push_back(dfa.accepting(q) ? 1 : 0);
    for (State r : dfa.row(q)) delta.push_back(id[r]);
  }
  return Dfa(dfa.alphabet(), k, id[dfa.initial()], std::move(delta), std::move(acc));
}

Dfa minimize(const Dfa& input) {
  const Dfa dfa = reachable_part(input);
  const std::size_t m = dfa.num_symbols();
  constexpr State kUnset = std::numeric_limits<State>::max();

  // Work on the trimmed automaton: transitions into dead states are dropped
  // and the dead states come back as one sink when the table is rebuilt.
  const auto co = coreachable(dfa);
  std::vector<State> live, id(dfa.num_states(), kUnset);
  for (State q = 0; q < dfa.num_states(); ++q)
    if (co[q]) {
      id[q] = static_cast<State>(live.size());
      live.push_back(q);
    }
  if (id[dfa.initial()] == kUnset) return Dfa(dfa.alphabet(), 1, 0, std::vector<State>(m, 0), {0});
  const std::size_t n = live.size();

  std::vector<std::uint32_t> tail, head, label_first(m + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (Symbol a = 0; a < m; ++a)
      if (co[dfa.next(live[i], a)]) ++label_first[a + 1];
  for (std::size_t a = 0; a < m; ++a) label_first[a + 1] += label_first[a];
  const std::size_t mm = label_first[m];
  tail.resize(mm);
  head.resize(mm);

  std::vector<std::uint32_t> marked(std::max(n, mm) + 1, 0);
  std::vector<std::uint32_t> touched;

  Partition blocks;
  blocks.init(n);
  for (std::size_t i = 0; i < n; ++i)
    if (dfa.accepting(live[i])) blocks.mark(static_cast<std::uint32_t>(i), marked, touched);
  blocks.split(marked, touched);

  // Cords start grouped by label.
  Partition cords;
  cords.init(mm);
  cords.sets = 0;
  {
    std::vector<std::uint32_t> fill(label_first.begin(), label_first.end() - 1);
    for (std::size_t i = 0; i < n; ++i)
      for (Symbol a = 0; a < m; ++a) {
        const State r = dfa.next(live[i], a);
        if (!co[r]) continue;
        const std::uint32_t t = fill[a]++;
        tail[t] = static_cast<std::uint32_t>(i);
        head[t] = id[r];
      }
    for (Symbol a = 0; a < m; ++a) {
      if (label_first[a] == label_first[a + 1]) continue;
      const auto c = static_cast<std::uint32_t>(cords.sets++);
      cords.first[c] = label_first[a];
      cords.past[c] = label_first[a + 1];
      for (std::uint32_t t = label_first[a]; t < label_first[a + 1]; ++t) cords.set_of[t] = c;
    }
  }

  // Incoming transitions per state.
  std::vector<std::uint32_t> in_first(n + 1, 0), in_trans(mm);
  for (std::size_t t = 0; t < mm; ++t) ++in_first[head[t] + 1];
  for (std::size_t q = 0; q < n; ++q) in_first[q + 1] += in_first[q];
  {
    std::vector<std::uint32_t> fill(in_first.begin(), in_first.end() - 1);
    for (std::size_t t = 0; t < mm; ++t) in_trans[fill[head[t]]++] = static_cast<std::uint32_t>(t);
  }

  std::size_t b = 1, c = 0;
  while (c < cords.sets) {
    for (std::uint32_t i = cords.first[c]; i < cords.past[c]; ++i) blocks.mark(tail[cords.elems[i]], marked, touched);
    blocks.split(marked, touched);
    ++c;
    while (b < blocks.sets) {
      for (std::uint32_t i = blocks.first[b]; i < blocks.past[b]; ++i) {
        const std::uint32_t q = blocks.elems[i];
        for (std::uint32_t j = in_first[q]; j < in_first[q + 1]; ++j) cords.mark(in_trans[j], marked, touched);
      }
      cords.split(marked, touched);
      ++b;
    }
  }

  // Canonical numbering: breadth-first from the initial block, with the sink
  // as block k.
  const std::size_t k = blocks.sets;
  std::vector<State> rep(k);
  for (std::size_t s = 0; s < k; ++s) rep[s] = live[blocks.elems[blocks.first[s]]];
  std::vector<State> order_id(k + 1, kUnset);
  std::vector<std::uint32_t> queue;
  queue.reserve(k + 1);
  const std::uint32_t b0 = blocks.set_of[id[dfa.initial()]];
  order_id[b0] = 0;
  queue.push_back(b0);
  std::vector<State> delta;
  delta.reserve((k + 1) * m);
  std::vector<char> acc;
  acc.reserve(k + 1);
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const std::uint32_t blk = queue[h];
    const bool sink = blk == k;
    acc.push_back(!sink && dfa.accepting(rep[blk]) ? 1 : 0);
    for (Symbol a = 0; a < m; ++a) {
      std::uint32_t tb = static_cast<std::uint32_t>(k);
      if (!sink) {
        const State r = dfa.next(rep[blk], a);
        if (co[r]) tb = blocks.set_of[id[r]];
      }
      if (order_id[tb] == kUnset) {
        order_id[tb] = static_cast<State>(queue.size());
        queue.push_back(tb);
      }
      delta.push_back(order_id[tb]);
    }
  }
  return Dfa(dfa.alphabet(), queue.size(), 0, std::move(delta), std::move(acc));
}

Dfa product(const Dfa& a, const Dfa& b, BoolOp op, const Limits& limits) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "product");
  const std::size_t m = a.num_symbols();
  const std::uint64_t nb = b.num_states();
  std::unordered_map<std::uint64_t, State> index;
  std::vector<std::uint64_t> pairs;
  auto intern = [&](State p, State q) -> State {
    const std::uint64_t key = std::uint64_t{p} * nb + q;
    auto [it, inserted] = index.try_emplace(key, static_cast<State>(pairs.size()));
    if (inserted) {
      check_limit(pairs.size() + 1, limits);
      pairs.push_back(key);
    }
    return it->second;
  };
  intern(a.initial(), b.initial());
  std::vector<State> delta;
  std::vector<char> acc;
  for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
    const auto p = static_cast<State>(pairs[cur] / nb);
    const auto q = static_cast<State>(pairs[cur] % nb);
    const bool x = a.accepting(p), y = b.accepting(q);
    bool v = false;
    switch (op) {
      case BoolOp::conjunction: v = x && y; break;
      case BoolOp::disjunction: v = x || y; break;
      case BoolOp::difference: v = x && !y; break;
      case BoolOp::symmetric_difference: v = x != y; break;
    }
    acc.push_back(v ? 1 : 0);
    for (Symbol s = 0; s < m; ++s) delta.push_back(intern(a.next(p, s), b.next(q, s)));
  }
  return Dfa(a.alphabet(), pairs.size(), 0, std::move(delta), std::move(acc));
}

Dfa complement(const Dfa& a, const Dfa& universe) {
  require_same_alphabet(a.alphabet(), universe.alphabet(), "complement");
  return minimize(product(universe, a, BoolOp::difference));
}

Emptiness check_emptiness(const Dfa& dfa) {
  const std::size_t n = dfa.num_states();
  constexpr State kNone = std::numeric_limits<State>::max();
  std::vector<State> parent(n, kNone);
  std::vector<Symbol> via(n, 0);
  std::vector<char> seen(n, 0);
  std::deque<State> queue{dfa.initial()};
  seen[dfa.initial()] = 1;
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    if (dfa.accepting(q)) {
      Word w;
      for (State s = q; parent[s] != kNone; s = parent[s]) w.push_back(via[s]);
      std::reverse(w.begin(), w.end());
      return {false, std::move(w)};
    }
    for (Symbol a = 0; a < dfa.num_symbols(); ++a) {
      const State r = dfa.next(q, a);
      if (!seen[r]) {
        seen[r] = 1;
        parent[r] = q;
        via[r] = a;
        queue.push_back(r);
      }
    }
  }
  return {true, std::nullopt};
}

bool is_empty(const Dfa& dfa) { return check_emptiness(dfa).empty; }

std::vector<char> coreachable(const Dfa& dfa) {
  const std::size_t n = dfa.num_states();
  const std::size_t m = dfa.num_symbols();
  std::vector<std::uint32_t> in_first(n + 1, 0), in_src(n * m);
  for (State q = 0; q < n; ++q)
    for (State r : dfa.row(q)) ++in_first[r + 1];
  for (std::size_t q = 0; q < n; ++q) in_first[q + 1] += in_first[q];
  {
    std::vector<std::uint32_t> fill(in_first.begin(), in_first.end() - 1);
    for (State q = 0; q < n; ++q)
      for (State r : dfa.row(q)) in_src[fill[r]++] = q;
  }
  std::vector<char> co(n, 0);
  std::vector<State> stack;
  for (State q = 0; q < n; ++q)
    if (dfa.accepting(q)) {
      co[q] = 1;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (std::uint32_t j = in_first[q]; j < in_first[q + 1]; ++j)
      if (!co[in_src[j]]) {
        co[in_src[j]] = 1;
        stack.push_back(in_src[j]);
      }
  }
  return co;
}

namespace {

// Useful states: reachable and co-reachable.
std::vector<char> useful_states(const Dfa& dfa) {
  const std::size_t n = dfa.num_states();
  std::vector<char> co = coreachable(dfa);
  std::vector<char> reach(n, 0);
  std::vector<State> stack{dfa.initial()};
  reach[dfa.initial()] = 1;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State r : dfa.row(q))
      if (!reach[r]) {
        reach[r] = 1;
        stack.push_back(r);
      }
  }
  for (std::size_t q = 0; q < n; ++q) co[q] = co[q] && reach[q];
  return co;
}

// Topological order of the useful subgraph, or nullopt when it has a cycle.
std::optional<std::vector<State>> useful_topological_order(const Dfa& dfa,
                                                           const std::vector<char>& useful) {
  const std::size_t n = dfa.num_states();
  std::vector<std::uint32_t> indeg(n, 0);
  std::size_t count = 0;
  for (State q = 0; q < n; ++q) {
    if (!useful[q]) continue;
    ++count;
    for (State r : dfa.row(q))
      if (useful[r]) ++indeg[r];
  }
  std::vector<State> order;
  order.reserve(count);
  for (State q = 0; q < n; ++q)
    if (useful[q] && indeg[q] == 0) order.push_back(q);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (State r : dfa.row(order[i]))
      if (useful[r] && --indeg[r] == 0) order.push_back(r);
  if (order.size() != count) return std::nullopt;
  return order;
}

}  // namespace

bool is_infinite(const Dfa& dfa) {
  return !useful_topological_order(dfa, useful_states(dfa)).has_value();
}

bool equivalent(const Dfa& a, const Dfa& b) {
  return is_empty(product(a, b, BoolOp::symmetric_difference));
}

std::optional<std::uint64_t> language_size(const Dfa& dfa) {
  const auto useful = useful_states(dfa);
  const auto order = useful_topological_order(dfa, useful);
  if (!order) return std::nullopt;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> count(dfa.num_states(), 0);
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    const State q = *it;
    std::uint64_t c = dfa.accepting(q) ? 1 : 0;
    for (State r : dfa.row(q)) {
      if (!useful[r]) continue;
      c = count[r] > kMax - c ? kMax : c + count[r];
    }
    count[q] = c;
  }
  return useful[dfa.initial()] ? count[dfa.initial()] : 0;
}

namespace {

// can[r][q]: some accepted word of exactly r more symbols exists from q.
class ExactLengthTable {
 public:
  explicit ExactLengthTable(const Dfa& dfa) : dfa_(dfa) {
    std::vector<char> row(dfa.num_states());
    for (State q = 0; q < dfa.num_states(); ++q) row[q] = dfa.accepting(q) ? 1 : 0;
    can_.push_back(std::move(row));
  }

  const std::vector<char>& at(std::size_t r) {
    while (can_.size() <= r) {
      const auto& prev = can_.back();
      std::vector<char> row(dfa_.num_states(), 0);
      for (State q = 0; q < dfa_.num_states(); ++q)
        for (State t : dfa_.row(q))
          if (prev[t]) {
            row[q] = 1;
            break;
          }
      can_.push_back(std::move(row));
    }
    return can_[r];
  }

  void collect(std::size_t length, std::size_t max_count, std::vector<Word>& out) {
    if (max_count == 0 || !at(length)[dfa_.initial()]) return;
    for (std::size_t r = 0; r <= length; ++r) at(r);
    Word w;
    std::size_t added = 0;
    walk(dfa_.initial(), length, w, max_count, added, out);
  }

 private:
  void walk(State q, std::size_t remaining, Word& w, std::size_t max_count, std::size_t& added,
            std::vector<Word>& out) {
    if (remaining == 0) {
      out.push_back(w);
      ++added;
      return;
    }
    for (Symbol a = 0; a < dfa_.num_symbols() && added < max_count; ++a) {
      const State r = dfa_.next(q, a);
      if (!can_[remaining - 1][r]) continue;
      w.push_back(a);
      walk(r, remaining - 1, w, max_count, added, out);
      w.pop_back();
    }
  }

  const Dfa& dfa_;
  std::vector<std::vector<char>> can_;
};

}  // namespace

std::vector<Word> enumerate(const Dfa& dfa, std::size_t max_count) {
  std::vector<Word> out;
  if (max_count == 0) return out;
  const auto useful = useful_states(dfa);
  if (!useful[dfa.initial()]) return out;
  const bool infinite = !useful_topological_order(dfa, useful).has_value();
  std::size_t max_len = 0;
  if (!infinite)
    max_len = static_cast<std::size_t>(std::count(useful.begin(), useful.end(), 1));
  ExactLengthTable table(dfa);
  for (std::size_t len = 0; out.size() < max_count && (infinite || len < max_len); ++len)
    table.collect(len, max_count - out.size(), out);
  return out;
}

std::vector<Word> enumerate_length(const Dfa& dfa, std::size_t length, std::size_t max_count) {
  std::vector<Word> out;
  ExactLengthTable table(dfa);
  table.collect(length, max_count, out);
  return out;
}

}  // namespace autostruct
