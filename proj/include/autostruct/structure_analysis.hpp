#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "autostruct/compiler.hpp"
#include "autostruct/presentation.hpp"

namespace autostruct {

// Partial-order trees: a binary relation Le that is a partial order with a
// least element in which the predecessors of every node form a finite chain.

struct TreeOptions {
  std::string order = "Le";
  CompileOptions compile;
};

bool is_po_tree(const Presentation& p, const TreeOptions& options = {});
/// Throws PreconditionFailed naming the failed tree axiom.
void check_po_tree(const Presentation& p, const TreeOptions& options = {});

/// S(x, y): y is a child of x.
RegularRelation children(const Presentation& p, const TreeOptions& options = {});

/// Every node has finitely many children. Requires a tree.
bool is_finitely_branching(const Presentation& p, const TreeOptions& options = {});

/// The leftmost infinite path: from the root, always step to the
/// length-lexicographically least child that has infinitely many
/// descendants. Requires an infinite finitely branching tree; the path is
/// then infinite by König's lemma.
RegularRelation koenig_path(const Presentation& p, const TreeOptions& options = {});

struct TreeReport {
  bool finitely_branching = false;
  bool infinite = false;
  /// Set when the tree is infinite and finitely branching.
  std::optional<RegularRelation> path;
};

TreeReport analyze_tree(const Presentation& p, const TreeOptions& options = {});

// Boolean algebras over the signature Join(x, y, z), Meet(x, y, z),
// Compl(x, y), Zero(x), One(x).

struct BooleanOptions {
  /// Largest n tried when computing the B_ω^n index.
  unsigned index_cap = 8;
  /// ba_isomorphic decides the axioms for both arguments first. Callers that
  /// already checked them can turn this off.
  bool check_axioms = true;
  CompileOptions compile;
};

/// Decides the Boolean algebra axioms; throws PreconditionFailed naming the
/// first one that fails.
void check_boolean_algebra(const Presentation& p, const BooleanOptions& options = {});
bool is_boolean_algebra(const Presentation& p, const BooleanOptions& options = {});

/// Number of atoms of a finite algebra, nullopt when infinite.
std::optional<std::uint64_t> atom_count(const Presentation& p, const BooleanOptions& options = {});

/// The n with p ≅ B_ω^n, read off as 2^n = the size of p modulo the ideal of
/// elements lying above finitely many atoms. 0 for finite algebras. Assumes p
/// is a Boolean algebra; throws PreconditionFailed (axiom "B_ω^n") when the
/// quotient is infinite or not a power of two, ResourceLimit past index_cap.
unsigned bomega_index(const Presentation& p, const BooleanOptions& options = {});

/// Equal index, and equal atom counts when both are finite.
bool ba_isomorphic(const Presentation& a, const Presentation& b, const BooleanOptions& options = {});

}  // namespace autostruct
