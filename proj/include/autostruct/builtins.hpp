#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "autostruct/presentation.hpp"

namespace autostruct {

/// Natural numbers in binary, least significant bit first: domain
/// {"0"} ∪ {0,1}*1, relations Add(x,y,z) for x + y = z and Le.
Presentation presburger();

/// Same domain as presburger, with Add and Div(w,v): w is a power of two
/// dividing v.
Presentation weak_div();

/// ({0,1}*; Le, Left, Right, EqL) with Le the prefix order, Left(x,y) for
/// y = x0, Right(x,y) for y = x1 and EqL for equal length.
Presentation word_tree();

/// ({0,1}*1; Le) with Le the lexicographic order, a copy of (Q; <=).
Presentation rationals();

/// (1*; Le, S): the naturals in unary with the successor graph S.
Presentation unary_order();

/// unary_order plus Cong(x,y): |x| = |y| mod n.
Presentation unary_mod(unsigned n);

/// Finite and cofinite subsets of the naturals over {0,1,F,C,W}. Position i
/// carries membership of i; the last symbol also fixes the rest: F is a
/// member followed by no more members, C a non-member followed only by
/// members. "" is the empty set and "W" the full set. Relations Join, Meet
/// (arity 3), Compl (arity 2), Zero and One (arity 1).
Presentation bomega();

/// The ordinal ω^m·a_m + ... + ω·a_1 + a_0 for cnf = [a_0, ..., a_m], with
/// relation Le. Blocks ω^j (one per unit of a_j) are numbered in order; an
/// element of block b with exponent j is written "+"^b "." 1^{n_1} ... j^{n_j}
/// and the tuple (n_1, ..., n_j) is compared lexicographically. Requires
/// a_m > 0 unless cnf has one entry, and m <= 9.
Presentation ordinal(const std::vector<unsigned>& cnf);

/// Looks a builtin up by name: presburger, weak_div, word_tree, rationals,
/// unary_order, bomega, bomega(n) (the n-fold product), unary_mod(n) and
/// ordinal(a0,a1,...). The forms `unary_mod:3` and `ordinal:0,1` are
/// accepted too. Throws InvalidArgument.
Presentation builtin(std::string_view name);

std::vector<std::string> builtin_names();

}  // namespace autostruct
