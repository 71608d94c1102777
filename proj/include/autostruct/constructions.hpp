#pragma once

#include <string>

#include "autostruct/compiler.hpp"
#include "autostruct/presentation.hpp"

namespace autostruct {

/// Cartesian product. A pair (u, v) is written by interleaving u and v
/// symbol by symbol, with a filler symbol standing in for the shorter word.
/// The base alphabet is the union of both bases plus the filler. Every
/// relation symbol is interpreted componentwise, so the signatures must agree.
Presentation product_presentation(const Presentation& p, const Presentation& q);

/// Disjoint union: elements of p and q are prefixed with two fresh tag
/// symbols. Relations hold only among elements of the same side.
Presentation disjoint_union(const Presentation& p, const Presentation& q);

/// Ordered sum p + q of two presentations whose binary `order` relation is a
/// linear order: the disjoint union with every element of p below every
/// element of q.
Presentation ordered_sum(const Presentation& p, const Presentation& q, const std::string& order = "Le");

/// Lexicographic product of linear orders: pairs (a, b) with a from `major`
/// and b from `minor`, compared on a first. `major` copies of `minor`, so
/// lexicographic_product(ω, ω) is ω².
Presentation lexicographic_product(const Presentation& major, const Presentation& minor,
                                   const std::string& order = "Le");

/// The same domain with `order` replaced by its converse.
Presentation reverse_order(const Presentation& p, const std::string& order = "Le");

/// Interleaved encoding of a pair of words over the product base alphabet.
Word interleave(const Presentation& product, const Presentation& p, const Presentation& q, const Word& u,
                const Word& v);

enum class QuotientMode {
  /// Relations restricted to representatives; meaningful for congruences.
  restrict,
  /// R holds of representatives when it holds of some equivalent tuple.
  lift,
};

struct QuotientOptions {
  QuotientMode mode = QuotientMode::restrict;
  /// Decide that every relation respects e (restrict mode only).
  bool require_congruence = false;
  CompileOptions compile;
};

/// Quotient by an equivalence relation e on the domain. Elements are the
/// length-lexicographically least member of each class. Throws
/// PreconditionFailed naming the failed axiom when e is not an equivalence
/// (or not a congruence when required).
Presentation quotient(const Presentation& p, const RegularRelation& e, const QuotientOptions& options = {});

/// Representatives only: {x : no y <_llex x with e(x, y)}.
RegularRelation representatives(const Presentation& p, const RegularRelation& e,
                                const CompileOptions& options = {});

}  // namespace autostruct
