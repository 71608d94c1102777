#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autostruct/compiler.hpp"
#include "autostruct/presentation.hpp"

namespace autostruct {

struct OrderOptions {
  /// Binary relation holding the (non-strict) order.
  std::string order = "Le";
  /// Cap on ≡_F quotient iterations and CNF recursion depth.
  std::size_t iteration_cap = 64;
  CompileOptions compile;
};

/// Reflexive, antisymmetric, transitive and total on the domain.
bool is_linear(const Presentation& p, const OrderOptions& options = {});
/// Like is_linear but throws PreconditionFailed naming the failed axiom.
void check_linear(const Presentation& p, const OrderOptions& options = {});

/// At most one element, or strictly between any x < y lies some z.
bool is_dense(const Presentation& p, const OrderOptions& options = {});

/// x ≡_F y: finitely many elements lie between x and y.
RegularRelation finite_distance(const Presentation& p, const OrderOptions& options = {});

/// L/≡_F on the length-lexicographically least member of each class, with
/// only the order relation kept.
Presentation quotient_by_eqF(const Presentation& p, const OrderOptions& options = {});

/// Number of ≡_F quotients taken until the order is dense.
std::size_t cb_rank(const Presentation& p, const OrderOptions& options = {});
/// The CB iteration ends in an order with at most one element.
bool is_scattered(const Presentation& p, const OrderOptions& options = {});
/// Domain of the final dense quotient: a subset of the original domain that
/// is a dense suborder (at most one element when scattered).
RegularRelation dense_suborder(const Presentation& p, const OrderOptions& options = {});

/// Well-ordered: every ≡_F class is finite or of type ω at each level, and
/// the iteration ends in at most one element.
bool is_ordinal(const Presentation& p, const OrderOptions& options = {});

/// [a0, a1, ..., am] with α = ω^m·am + ... + ω·a1 + a0. Throws
/// PreconditionFailed unless is_ordinal holds.
std::vector<std::uint64_t> cantor_normal_form(const Presentation& p, const OrderOptions& options = {});

/// Equal Cantor normal forms; both must be ordinals.
bool ordinals_isomorphic(const Presentation& a, const Presentation& b, const OrderOptions& options = {});

struct OrderReport {
  bool linear = false;
  bool dense = false;
  std::size_t cb_rank = 0;
  bool scattered = false;
  bool ordinal = false;
  /// Present when ordinal.
  std::vector<std::uint64_t> cnf;
};

/// Runs every analysis; throws PreconditionFailed when the order is not
/// linear.
OrderReport analyze_order(const Presentation& p, const OrderOptions& options = {});

/// `linear: true` lines in a fixed key order.
std::string format_report(const OrderReport& r);

}  // namespace autostruct
