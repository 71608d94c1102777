#include "autostruct/presentation.hpp"

#include "autostruct/error.hpp"

namespace autostruct {

Presentation::Presentation(AlphabetPtr base, const Dfa& domain)
    : base_(std::move(base)), cache_(std::make_shared<Cache>()) {
  if (base_->is_track()) throw InvalidArgument("presentation base must be a plain alphabet");
  require_same_alphabet(base_, domain.alphabet(), "presentation domain");
  domain_ = std::make_shared<const RegularRelation>(RegularRelation::from_language(domain));
}

const RegularRelation& Presentation::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw CompileError("unknown relation '" + name + "'");
  return *it->second;
}

void Presentation::add_relation(const std::string& name, const RegularRelation& r) {
  if (name.empty()) throw InvalidArgument("relation name must be nonempty");
  if (has_relation(name)) throw InvalidArgument("relation '" + name + "' already defined");
  require_same_alphabet(base_, r.base(), "relation '" + name + "'");
  // Bind the domain to each track instead of building the full domain power.
  std::vector<int> all(r.arity());
  std::vector<TrackBinding> parts{{&r, {}}};
  for (int t = 0; t < r.arity(); ++t) {
    all[t] = t;
    parts.push_back({domain_.get(), {t}});
  }
  parts[0].tracks = all;
  auto restricted = std::make_shared<const RegularRelation>(synchronize(base_, r.arity(), parts));
  relations_.emplace(name, std::move(restricted));
  signature_.push_back({name, r.arity()});
}

Presentation Presentation::with_relation(const std::string& name, const RegularRelation& r) const {
  Presentation p = *this;
  p.add_relation(name, r);
  return p;
}

const RegularRelation& Presentation::domain_power(int k) const {
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->powers[k];
  if (!slot) {
    if (k == 1) {
      slot = domain_;
    } else {
      std::vector<TrackBinding> parts;
      for (int t = 0; t < k; ++t) parts.push_back({domain_.get(), {t}});
      slot = std::make_shared<const RegularRelation>(synchronize(base_, k, parts));
    }
  }
  return *slot;
}

bool Presentation::holds(const std::string& name, const std::vector<std::string>& args) const {
  const auto& r = relation(name);
  if (static_cast<int>(args.size()) != r.arity())
    throw InvalidArgument("relation '" + name + "' expects " + std::to_string(r.arity()) + " arguments");
  std::vector<Word> tuple;
  for (const auto& a : args) tuple.push_back(parse_element(a));
  return r.contains(tuple);
}

}  // namespace autostruct
