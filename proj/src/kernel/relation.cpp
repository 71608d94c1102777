#include "autostruct/relation.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "autostruct/error.hpp"

namespace autostruct {

namespace {

constexpr std::uint32_t kDone = 0xffffffffu;
constexpr int kMaxArity = 31;

struct KeyHash {
  std::size_t operator()(const StateKey& v) const noexcept {
    std::size_t h = v.size() * 0x9e3779b97f4a7c15ULL;
    for (std::uint32_t s : v) h = (h ^ s) * 0x100000001b3ULL + (h >> 29);
    return h;
  }
};

void require_arity(int arity) {
  if (arity < 1 || arity > kMaxArity)
    throw InvalidArgument("relation arity " + std::to_string(arity) + " out of range");
}

void require_track(const RegularRelation& r, int track) {
  if (track < 0 || track >= r.arity())
    throw InvalidArgument("track index " + std::to_string(track) + " out of range for arity " +
                          std::to_string(r.arity()));
}

void require_compatible(const RegularRelation& a, const RegularRelation& b, std::string_view what) {
  require_same_alphabet(a.base(), b.base(), what);
  if (a.arity() != b.arity()) throw InvalidArgument(std::string(what) + ": arities differ");
}

// Column digits for every symbol of the k-track alphabet, row-major.
std::vector<std::uint32_t> column_table(const Alphabet& base, int arity) {
  const std::size_t m = Alphabet::tracks(base.base(), arity)->size();
  std::vector<std::uint32_t> table(m * arity);
  for (Symbol s = 0; s < m; ++s)
    decode_column(base, s, std::span<std::uint32_t>(table.data() + std::size_t{s} * arity, arity));
  return table;
}

// Tail symbols of a k-track alphabet: non-pad on `track`, pad elsewhere.
std::vector<Symbol> tail_symbols(const Alphabet& base, int arity, int track) {
  std::vector<Symbol> out;
  std::vector<std::uint32_t> col(arity, pad_digit(base));
  for (std::uint32_t d = 0; d < base.size(); ++d) {
    col[track] = d;
    out.push_back(encode_column(base, col));
  }
  return out;
}

// States from which an accepting state is reachable using tail symbols only.
std::vector<char> tail_coreachable(const Dfa& dfa, const std::vector<Symbol>& tail) {
  const std::size_t n = dfa.num_states();
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q)
    for (Symbol a : tail) rev[dfa.next(q, a)].push_back(q);
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
    for (State p : rev[q])
      if (!co[p]) {
        co[p] = 1;
        stack.push_back(p);
      }
  }
  return co;
}

// inf[q]: infinitely many tail words are accepted from q.
std::vector<char> tail_infinite(const Dfa& dfa, const std::vector<Symbol>& tail,
                                const std::vector<char>& tco) {
  const std::size_t n = dfa.num_states();
  std::vector<std::uint32_t> outdeg(n, 0);
  std::vector<std::vector<State>> rev(n);
  for (State q = 0; q < n; ++q) {
    if (!tco[q]) continue;
    for (Symbol a : tail) {
      const State r = dfa.next(q, a);
      if (!tco[r]) continue;
      ++outdeg[q];
      rev[r].push_back(q);
    }
  }
  // Repeatedly remove states with no remaining tco-successors; what is left
  // are exactly the states that can reach a cycle.
  std::vector<char> removed(n, 0);
  std::vector<State> stack;
  for (State q = 0; q < n; ++q)
    if (tco[q] && outdeg[q] == 0) stack.push_back(q);
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    removed[q] = 1;
    for (State p : rev[q])
      if (--outdeg[p] == 0) stack.push_back(p);
  }
  std::vector<char> inf(n, 0);
  for (State q = 0; q < n; ++q) inf[q] = tco[q] && !removed[q];
  return inf;
}

// Number of accepted tail words from each finite-tail state, modulo `modulus`.
std::vector<std::uint32_t> tail_counts(const Dfa& dfa, const std::vector<Symbol>& tail,
                                       const std::vector<char>& tco, const std::vector<char>& inf,
                                       std::uint32_t modulus) {
  const std::size_t n = dfa.num_states();
  std::vector<std::uint32_t> count(n, 0);
  std::vector<char> done(n, 0);
  for (State root = 0; root < n; ++root) {
    if (!tco[root] || inf[root] || done[root]) continue;
    std::vector<std::pair<State, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [q, i] = stack.back();
      if (i < tail.size()) {
        const State r = dfa.next(q, tail[i++]);
        if (tco[r] && !done[r]) stack.emplace_back(r, 0);
        continue;
      }
      std::uint64_t c = dfa.accepting(q) ? 1 : 0;
      for (Symbol a : tail) {
        const State r = dfa.next(q, a);
        if (tco[r]) c += count[r];
      }
      count[q] = static_cast<std::uint32_t>(c % modulus);
      done[q] = 1;
      stack.pop_back();
    }
  }
  return count;
}

// Subset construction that deletes `track`; `witness_digits` lists the digits
// guessed on the deleted track while the remaining tracks are being read.
RegularRelation subset_projection(const RegularRelation& r, int track,
                                  std::uint32_t witness_digits,
                                  const std::function<bool(const StateKey&)>& accept_subset,
                                  const Limits& limits) {
  const Dfa& d = r.dfa();
  const Alphabet& base = *r.base();
  const int k = r.arity();
  const auto co = coreachable(d);
  std::vector<std::uint32_t> full(k);
  auto step = [&](const StateKey& from, std::span<const std::uint32_t> col, StateKey& to) {
    to.clear();
    for (int t = 0, j = 0; t < k; ++t)
      if (t != track) full[t] = col[j++];
    for (State q : from) {
      for (std::uint32_t digit = 0; digit < witness_digits; ++digit) {
        full[track] = digit;
        const State s = d.next(q, encode_column(base, full));
        if (co[s]) to.push_back(s);
      }
    }
    std::sort(to.begin(), to.end());
    to.erase(std::unique(to.begin(), to.end()), to.end());
    return !to.empty();
  };
  StateKey init;
  if (co[d.initial()]) init.push_back(d.initial());
  return build_relation(r.base(), k - 1, init, step, accept_subset, limits);
}

}  // namespace

// ---------------------------------------------------------------- columns

Symbol encode_column(const Alphabet& base, std::span<const std::uint32_t> digits) {
  const std::uint64_t radix = base.size() + 1;
  if (digits.size() == 1) {
    if (digits[0] >= base.size()) throw InvalidArgument("pad column in a 1-track word");
    return digits[0];
  }
  std::uint64_t id = 0;
  for (std::uint32_t d : digits) id = id * radix + d;
  return static_cast<Symbol>(id);
}

void decode_column(const Alphabet& base, Symbol symbol, std::span<std::uint32_t> digits) {
  const std::uint32_t radix = static_cast<std::uint32_t>(base.size() + 1);
  if (digits.size() == 1) {
    digits[0] = symbol;
    return;
  }
  for (std::size_t t = digits.size(); t-- > 0;) {
    digits[t] = symbol % radix;
    symbol /= radix;
  }
}

Word convolve(const Alphabet& base, const std::vector<Word>& strings) {
  const int k = static_cast<int>(strings.size());
  require_arity(k);
  std::size_t len = 0;
  for (const auto& s : strings) {
    len = std::max(len, s.size());
    for (Symbol a : s)
      if (a >= base.size()) throw InvalidArgument("symbol outside the base alphabet");
  }
  if (k == 1) return strings[0];
  Word out(len);
  std::vector<std::uint32_t> col(k);
  for (std::size_t i = 0; i < len; ++i) {
    for (int t = 0; t < k; ++t) col[t] = i < strings[t].size() ? strings[t][i] : pad_digit(base);
    out[i] = encode_column(base, col);
  }
  return out;
}

std::vector<Word> deconvolve(const Alphabet& base, int arity, std::span<const Symbol> word) {
  require_arity(arity);
  std::vector<Word> out(arity);
  if (arity == 1) {
    out[0].assign(word.begin(), word.end());
    return out;
  }
  std::vector<std::uint32_t> col(arity);
  for (Symbol s : word) {
    decode_column(base, s, col);
    for (int t = 0; t < arity; ++t)
      if (col[t] != pad_digit(base)) out[t].push_back(col[t]);
  }
  return out;
}

Dfa valid_convolutions(const AlphabetPtr& base, int arity) {
  require_arity(arity);
  auto alpha = Alphabet::tracks(base, arity);
  if (arity == 1) return Dfa::universal(alpha);
  const auto cols = column_table(*base, arity);
  const std::size_t m = alpha->size();
  // State 0 is the sink; others are pad masks.
  std::map<std::uint32_t, State> index{{0u, 1}};
  std::vector<std::uint32_t> masks{0u};
  std::vector<State> delta;
  for (std::size_t cur = 0; cur < masks.size(); ++cur) {
    for (Symbol s = 0; s < m; ++s) {
      std::uint32_t mask = masks[cur];
      bool ok = true;
      for (int t = 0; t < arity; ++t) {
        const bool pad = cols[std::size_t{s} * arity + t] == pad_digit(*base);
        if (!pad && (mask >> t & 1u)) ok = false;
        if (pad) mask |= 1u << t;
      }
      if (!ok) {
        delta.push_back(0);
        continue;
      }
      auto [it, inserted] = index.try_emplace(mask, static_cast<State>(masks.size() + 1));
      if (inserted) masks.push_back(mask);
      delta.push_back(it->second);
    }
  }
  const std::size_t n = masks.size() + 1;
  std::vector<State> table(n * m, 0);
  std::copy(delta.begin(), delta.end(), table.begin() + m);
  std::vector<char> acc(n, 1);
  acc[0] = 0;
  return minimize(Dfa(alpha, n, 1, std::move(table), std::move(acc)));
}

// ---------------------------------------------------------------- RegularRelation

RegularRelation::RegularRelation(AlphabetPtr base, int arity, Dfa minimal, Canonical)
    : base_(std::move(base)), arity_(arity), dfa_(std::move(minimal)) {}

RegularRelation::RegularRelation(AlphabetPtr base, int arity, const Dfa& acceptor)
    : base_(std::move(base)), arity_(arity), dfa_(Dfa::empty_language(base_)) {
  require_arity(arity);
  if (base_->is_track()) throw InvalidArgument("relation base must be a plain alphabet");
  auto alpha = Alphabet::tracks(base_, arity);
  require_same_alphabet(alpha, acceptor.alphabet(), "relation acceptor");
  if (arity == 1)
    dfa_ = minimize(acceptor);
  else
    dfa_ = minimize(product(acceptor, valid_convolutions(base_, arity), BoolOp::conjunction));
}

RegularRelation RegularRelation::from_valid(AlphabetPtr base, int arity, const Dfa& acceptor) {
  require_arity(arity);
  require_same_alphabet(Alphabet::tracks(base, arity), acceptor.alphabet(), "relation acceptor");
  return RegularRelation(std::move(base), arity, minimize(acceptor), Canonical{});
}

RegularRelation RegularRelation::empty(AlphabetPtr base, int arity) {
  auto alpha = Alphabet::tracks(base, arity);
  return RegularRelation(std::move(base), arity, Dfa::empty_language(alpha), Canonical{});
}

RegularRelation RegularRelation::full(AlphabetPtr base, int arity) {
  auto valid = valid_convolutions(base, arity);
  return RegularRelation(std::move(base), arity, std::move(valid), Canonical{});
}

RegularRelation RegularRelation::from_language(const Dfa& language) {
  auto base = language.alphabet();
  if (base->is_track()) throw InvalidArgument("language must be over a plain alphabet");
  return RegularRelation(base, 1, minimize(language), Canonical{});
}

bool RegularRelation::contains(const std::vector<Word>& tuple) const {
  if (static_cast<int>(tuple.size()) != arity_)
    throw InvalidArgument("tuple size does not match relation arity");
  return dfa_.accepts(convolve(*base_, tuple));
}

bool RegularRelation::operator==(const RegularRelation& other) const {
  return arity_ == other.arity_ && same_alphabet(base_, other.base_) &&
         dfa_.structurally_equal(other.dfa_);
}

// ---------------------------------------------------------------- constructions

RegularRelation build_relation(const AlphabetPtr& base, int arity, const StateKey& init,
                               const StepFn& step, const AcceptFn& accept, const Limits& limits) {
  require_arity(arity);
  auto alpha = Alphabet::tracks(base, arity);
  const std::size_t m = alpha->size();
  const auto cols = column_table(*base, arity);
  const std::uint32_t pad = pad_digit(*base);

  // State 0 is the dead sink. The pad mask rides along as the last key word.
  std::unordered_map<StateKey, State, KeyHash> index;
  std::vector<StateKey> keys;
  std::vector<std::uint32_t> masks;
  StateKey probe;
  auto intern = [&](const StateKey& user, std::uint32_t mask) -> State {
    probe.assign(user.begin(), user.end());
    probe.push_back(mask);
    if (auto it = index.find(probe); it != index.end()) return it->second;
    if (keys.size() + 2 > limits.max_states)
      throw ResourceLimit("automaton exceeds the state cap of " + std::to_string(limits.max_states));
    const auto id = static_cast<State>(keys.size() + 1);
    index.emplace(probe, id);
    keys.push_back(user);
    masks.push_back(mask);
    return id;
  };

  intern(init, 0);
  std::vector<State> delta(m, 0);  // sink row
  std::vector<char> acc{0};
  StateKey next;
  for (std::size_t cur = 0; cur < keys.size(); ++cur) {
    acc.push_back(accept(keys[cur]) ? 1 : 0);
    for (Symbol s = 0; s < m; ++s) {
      std::span<const std::uint32_t> col(cols.data() + std::size_t{s} * arity, arity);
      std::uint32_t mask = masks[cur];
      bool ok = true;
      for (int t = 0; t < arity; ++t) {
        if (col[t] == pad)
          mask |= 1u << t;
        else if (mask >> t & 1u)
          ok = false;
      }
      if (!ok || !step(keys[cur], col, next)) {
        delta.push_back(0);
        continue;
      }
      delta.push_back(intern(next, mask));
    }
  }
  const std::size_t n = keys.size() + 1;
  return RegularRelation::from_valid(base, arity, Dfa(alpha, n, 1, std::move(delta), std::move(acc)));
}

RegularRelation synchronize(const AlphabetPtr& base, int arity,
                            const std::vector<TrackBinding>& parts, const Limits& limits) {
  require_arity(arity);
  struct Part {
    const Dfa* dfa;
    std::vector<int> tracks;
    std::vector<char> co;
  };
  std::vector<Part> ps;
  for (const auto& b : parts) {
    require_same_alphabet(base, b.relation->base(), "synchronize");
    if (static_cast<int>(b.tracks.size()) != b.relation->arity())
      throw InvalidArgument("synchronize: track map size differs from relation arity");
    for (int t : b.tracks)
      if (t < 0 || t >= arity) throw InvalidArgument("synchronize: track out of range");
    ps.push_back({&b.relation->dfa(), b.tracks, coreachable(b.relation->dfa())});
  }
  const std::uint32_t pad = pad_digit(*base);
  StateKey init;
  for (const auto& p : ps) {
    if (!p.co[p.dfa->initial()]) return RegularRelation::empty(base, arity);
    init.push_back(p.dfa->initial());
  }
  std::vector<std::uint32_t> sub;
  auto step = [&](const StateKey& from, std::span<const std::uint32_t> col, StateKey& to) {
    to = from;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const auto& p = ps[i];
      sub.resize(p.tracks.size());
      bool all_pad = true;
      for (std::size_t j = 0; j < p.tracks.size(); ++j) {
        sub[j] = col[p.tracks[j]];
        all_pad = all_pad && sub[j] == pad;
      }
      if (all_pad) {
        if (from[i] == kDone) continue;
        if (!p.dfa->accepting(from[i])) return false;
        to[i] = kDone;
        continue;
      }
      if (from[i] == kDone) return false;
      const State s = p.dfa->next(from[i], encode_column(*base, sub));
      if (!p.co[s]) return false;
      to[i] = s;
    }
    return true;
  };
  auto accept = [&](const StateKey& key) {
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (key[i] != kDone && !ps[i].dfa->accepting(key[i])) return false;
    return true;
  };
  return build_relation(base, arity, init, step, accept, limits);
}

RegularRelation intersect(const RegularRelation& a, const RegularRelation& b) {
  require_compatible(a, b, "intersect");
  return RegularRelation::from_valid(a.base(), a.arity(),
                                     product(a.dfa(), b.dfa(), BoolOp::conjunction));
}

RegularRelation unite(const RegularRelation& a, const RegularRelation& b) {
  require_compatible(a, b, "unite");
  return RegularRelation::from_valid(a.base(), a.arity(),
                                     product(a.dfa(), b.dfa(), BoolOp::disjunction));
}

RegularRelation subtract(const RegularRelation& a, const RegularRelation& b) {
  require_compatible(a, b, "subtract");
  return RegularRelation::from_valid(a.base(), a.arity(),
                                     product(a.dfa(), b.dfa(), BoolOp::difference));
}

RegularRelation cylindrify(const RegularRelation& r, const Dfa& a, const Limits& limits) {
  const auto lang = RegularRelation::from_language(a);
  std::vector<int> tracks(r.arity());
  for (int t = 0; t < r.arity(); ++t) tracks[t] = t;
  return synchronize(r.base(), r.arity() + 1, {{&r, tracks}, {&lang, {r.arity()}}}, limits);
}

namespace {

// r restricted so that track `track` lies in L(a); skipped when a is universal.
RegularRelation restrict_track(const RegularRelation& r, int track, const Dfa& a,
                               const Limits& limits) {
  require_same_alphabet(r.base(), a.alphabet(), "projection witness set");
  const auto lang = RegularRelation::from_language(a);
  if (lang == RegularRelation::full(r.base(), 1)) return r;
  std::vector<int> tracks(r.arity());
  for (int t = 0; t < r.arity(); ++t) tracks[t] = t;
  return synchronize(r.base(), r.arity(), {{&r, tracks}, {&lang, {track}}}, limits);
}

}  // namespace

RegularRelation project_exists(const RegularRelation& r, int track, const Dfa& a,
                               const Limits& limits) {
  require_track(r, track);
  if (r.arity() < 2) throw InvalidArgument("project_exists needs arity at least 2; use exists_any");
  const auto rr = restrict_track(r, track, a, limits);
  const auto tail = tail_symbols(*r.base(), r.arity(), track);
  const auto tco = tail_coreachable(rr.dfa(), tail);
  return subset_projection(
      rr, track, pad_digit(*r.base()) + 1,
      [&](const StateKey& s) {
        return std::any_of(s.begin(), s.end(), [&](std::uint32_t q) { return tco[q] != 0; });
      },
      limits);
}

RegularRelation project_forall(const RegularRelation& r, int track, const Dfa& a,
                               const Limits& limits) {
  require_track(r, track);
  if (r.arity() < 2) throw InvalidArgument("project_forall needs arity at least 2; use forall_any");
  const auto counter = subtract(RegularRelation::full(r.base(), r.arity()), r);
  const auto some = project_exists(counter, track, a, limits);
  return subtract(RegularRelation::full(r.base(), r.arity() - 1), some);
}

bool exists_any(const RegularRelation& r, const Dfa& a) {
  if (r.arity() != 1) throw InvalidArgument("exists_any needs a unary relation");
  return !is_empty(product(r.dfa(), a, BoolOp::conjunction));
}

bool forall_any(const RegularRelation& r, const Dfa& a) {
  if (r.arity() != 1) throw InvalidArgument("forall_any needs a unary relation");
  return is_empty(product(a, r.dfa(), BoolOp::difference));
}

RegularRelation instantiate(const RegularRelation& r, int track, std::span<const Symbol> c,
                            const Limits& limits) {
  require_track(r, track);
  if (r.arity() < 2) throw InvalidArgument("instantiate needs arity at least 2; use contains");
  for (Symbol s : c)
    if (s >= r.base()->size()) throw InvalidArgument("constant has a symbol outside the alphabet");
  return project_exists(r, track, Dfa::single_word(r.base(), c), limits);
}

RegularRelation rearrange(const RegularRelation& r, const std::vector<int>& perm,
                          const Limits& limits) {
  const int k = r.arity();
  if (static_cast<int>(perm.size()) != k) throw InvalidArgument("rearrange: not a permutation");
  std::vector<int> inverse(k, -1);
  for (int j = 0; j < k; ++j) {
    if (perm[j] < 0 || perm[j] >= k || inverse[perm[j]] != -1)
      throw InvalidArgument("rearrange: not a permutation");
    inverse[perm[j]] = j;
  }
  bool identity = true;
  for (int j = 0; j < k; ++j) identity = identity && perm[j] == j;
  if (identity) return r;
  return synchronize(r.base(), k, {{&r, inverse}}, limits);
}

RegularRelation link(const RegularRelation& r, const RegularRelation& s, int offset,
                     const Limits& limits) {
  require_same_alphabet(r.base(), s.base(), "link");
  const int m1 = r.arity(), m2 = s.arity();
  if (offset < 0 || offset + 1 >= m1 || offset + m2 < m1)
    throw InvalidArgument("link: offset " + std::to_string(offset) + " invalid for arities " +
                          std::to_string(m1) + " and " + std::to_string(m2));
  std::vector<int> rt(m1), st(m2);
  for (int t = 0; t < m1; ++t) rt[t] = t;
  for (int t = 0; t < m2; ++t) st[t] = offset + t;
  return synchronize(r.base(), offset + m2, {{&r, rt}, {&s, st}}, limits);
}

RegularRelation equality_relation(const AlphabetPtr& base) {
  const std::uint32_t pad = pad_digit(*base);
  return build_relation(
      base, 2, {},
      [pad](const StateKey&, std::span<const std::uint32_t> col, StateKey& to) {
        to.clear();
        return col[0] == col[1] && col[0] != pad;
      },
      [](const StateKey&) { return true; });
}

RegularRelation llex_relation(const AlphabetPtr& base) {
  // 0: equal so far, 1: x lexicographically below, 2: x above, 3: x shorter.
  const std::uint32_t pad = pad_digit(*base);
  return build_relation(
      base, 2, {0},
      [pad](const StateKey& from, std::span<const std::uint32_t> col, StateKey& to) {
        if (col[1] == pad) return false;
        if (col[0] == pad) {
          to = {3};
          return true;
        }
        if (from[0] != 0) {
          to = from;
          return true;
        }
        to = {col[0] < col[1] ? 1u : col[0] > col[1] ? 2u : 0u};
        return true;
      },
      [](const StateKey& key) { return key[0] != 2; });
}

RegularRelation exists_infinitely(const RegularRelation& r, int track, const Limits& limits) {
  require_track(r, track);
  if (r.arity() < 2) throw InvalidArgument("exists_infinitely needs arity at least 2");
  const auto tail = tail_symbols(*r.base(), r.arity(), track);
  const auto tco = tail_coreachable(r.dfa(), tail);
  const auto inf = tail_infinite(r.dfa(), tail, tco);
  // Witnesses no longer than the other tracks are finitely many, so only
  // witnesses running past them count: guess non-pad digits throughout.
  return subset_projection(
      r, track, pad_digit(*r.base()),
      [&](const StateKey& s) {
        return std::any_of(s.begin(), s.end(), [&](std::uint32_t q) { return inf[q] != 0; });
      },
      limits);
}

RegularRelation exists_mod(const RegularRelation& r, int track, std::uint32_t modulus,
                           std::uint32_t residue, const Limits& limits) {
  require_track(r, track);
  if (r.arity() < 2) throw InvalidArgument("exists_mod needs arity at least 2");
  if (modulus == 0 || residue >= modulus)
    throw InvalidArgument("counting quantifier needs 0 <= m < n");
  const Dfa& d = r.dfa();
  const Alphabet& base = *r.base();
  const int k = r.arity();
  const std::uint32_t pad = pad_digit(base);
  const auto co = coreachable(d);
  const auto tail = tail_symbols(base, k, track);
  const auto tco = tail_coreachable(d, tail);
  const auto inf = tail_infinite(d, tail, tco);
  const auto cnt = tail_counts(d, tail, tco, inf, modulus);

  // Key: sorted entries (q, running mod n, running nonzero, ended mod n).
  // Running witnesses are still reading non-pad digits; ended ones have
  // switched to pads on the witness track.
  struct Entry {
    std::uint32_t running = 0, nonzero = 0, ended = 0;
  };
  std::map<State, Entry> acc_map;
  std::vector<std::uint32_t> full(k);
  auto step = [&](const StateKey& from, std::span<const std::uint32_t> col, StateKey& to) {
    acc_map.clear();
    for (int t = 0, j = 0; t < k; ++t)
      if (t != track) full[t] = col[j++];
    for (std::size_t i = 0; i < from.size(); i += 4) {
      const State q = from[i];
      const std::uint32_t run = from[i + 1], nz = from[i + 2], ended = from[i + 3];
      if (nz) {
        for (std::uint32_t digit = 0; digit < pad; ++digit) {
          full[track] = digit;
          const State s = d.next(q, encode_column(base, full));
          if (!co[s]) continue;
          auto& e = acc_map[s];
          e.running = (e.running + run) % modulus;
          e.nonzero = 1;
        }
      }
      full[track] = pad;
      const State s = d.next(q, encode_column(base, full));
      const std::uint32_t add = (run + ended) % modulus;
      if (co[s] && add != 0) {
        auto& e = acc_map[s];
        e.ended = (e.ended + add) % modulus;
      }
    }
    to.clear();
    for (const auto& [q, e] : acc_map) {
      if (!e.nonzero && e.ended == 0) continue;
      to.insert(to.end(), {q, e.running, e.nonzero, e.ended});
    }
    return true;
  };
  auto accept = [&](const StateKey& key) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < key.size(); i += 4) {
      const State q = key[i];
      if (key[i + 2] && inf[q]) return false;
      if (d.accepting(q)) total += key[i + 3];
      total += std::uint64_t{key[i + 1]} * cnt[q];
      total %= modulus;
    }
    return total == residue;
  };
  StateKey init;
  if (co[d.initial()]) init = {d.initial(), 1u % modulus, 1u, 0u};
  return build_relation(r.base(), k - 1, init, step, accept, limits);
}

std::optional<std::uint32_t> language_size_mod(const Dfa& dfa, std::uint32_t modulus) {
  if (modulus == 0) throw InvalidArgument("modulus must be positive");
  std::vector<Symbol> all(dfa.num_symbols());
  for (Symbol a = 0; a < all.size(); ++a) all[a] = a;
  const auto co = coreachable(dfa);
  const auto inf = tail_infinite(dfa, all, co);
  if (inf[dfa.initial()]) return std::nullopt;
  if (!co[dfa.initial()]) return 0u;
  return tail_counts(dfa, all, co, inf, modulus)[dfa.initial()];
}

}  // namespace autostruct
