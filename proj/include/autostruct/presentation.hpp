#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "autostruct/automaton.hpp"
#include "autostruct/relation.hpp"

namespace autostruct {

struct RelationSymbol {
  std::string name;
  int arity;
  bool operator==(const RelationSymbol&) const = default;
};

using Signature = std::vector<RelationSymbol>;

/// An automatic presentation: a regular domain over a base alphabet and one
/// regular relation per signature symbol. Relations are kept inside the
/// domain tuples. Copies share their relations.
class Presentation {
 public:
  Presentation(AlphabetPtr base, const Dfa& domain);

  const AlphabetPtr& base() const { return base_; }
  const RegularRelation& domain() const { return *domain_; }
  const Dfa& domain_dfa() const { return domain_->dfa(); }
  const Signature& signature() const { return signature_; }

  bool has_relation(const std::string& name) const { return relations_.count(name) != 0; }
  /// Throws CompileError for unknown names.
  const RegularRelation& relation(const std::string& name) const;
  int arity(const std::string& name) const { return relation(name).arity(); }

  /// Adds a relation, intersected with the domain tuples. Throws
  /// InvalidArgument on a name clash or alphabet mismatch.
  void add_relation(const std::string& name, const RegularRelation& r);
  Presentation with_relation(const std::string& name, const RegularRelation& r) const;

  /// All k-tuples of domain elements.
  const RegularRelation& domain_power(int k) const;

  /// Membership test on domain strings given as text.
  bool holds(const std::string& name, const std::vector<std::string>& args) const;
  Word parse_element(const std::string& text) const { return base_->parse_word(text); }
  std::string format_element(const Word& w) const { return base_->format_word(w); }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<int, std::shared_ptr<const RegularRelation>> powers;
  };

  AlphabetPtr base_;
  std::shared_ptr<const RegularRelation> domain_;
  Signature signature_;
  std::map<std::string, std::shared_ptr<const RegularRelation>> relations_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace autostruct
