#pragma once

#include <span>
#include <variant>
#include <vector>

#include "latpoly/polynomial.hpp"

namespace latpoly {

// p(x) = a_empty join (a_1 meet x_1) join ... join (a_n meet x_n).
struct WeightedDisjunction {
  ElemId empty_coefficient = 0;
  std::vector<ElemId> unary;  // a_1 .. a_n
  friend bool operator==(const WeightedDisjunction&,
                         const WeightedDisjunction&) = default;
};

struct ChainLink {
  Subset subset;
  ElemId coefficient;
  friend bool operator==(const ChainLink&, const ChainLink&) = default;
};

// A weighted disjunction plus terms over a strictly increasing chain of
// subsets S_1 < ... < S_r, |S_1| >= 2, coefficients nondecreasing along the
// chain, every variable outside S_1 dominated by some variable inside it.
struct ChainForm {
  ElemId empty_coefficient = 0;
  std::vector<ElemId> unary;
  std::vector<ChainLink> chain;
  friend bool operator==(const ChainForm&, const ChainForm&) = default;
};

struct NotChainStructured {
  enum class Reason { IncomparableEssentialTerms, UndominatedVariable };
  Reason reason = Reason::IncomparableEssentialTerms;
  // IncomparableEssentialTerms: the first incomparable pair, ordered by
  // ascending (first, second) masks.
  Subset first = 0;
  Subset second = 0;
  // UndominatedVariable: the smallest variable outside S_1 whose unary
  // coefficient is below no unary coefficient inside S_1.
  int variable = 0;
  Subset s1 = 0;
  friend bool operator==(const NotChainStructured&,
                         const NotChainStructured&) = default;
};

using Classification =
    std::variant<WeightedDisjunction, ChainForm, NotChainStructured>;

// Canonicalize, collect essential terms of size >= 2, and decide: no such
// terms is a weighted disjunction; a chain of them with every outside
// variable dominated is chain form; anything else reports the first
// obstruction. The reported coefficients always reproduce the function.
Classification classify(const DnfPolynomial& p);

struct FastDecision {
  bool self_commuting = false;
  Classification classification;
};

// Structural decision of self-commutation over a chain: true exactly when
// classify is WeightedDisjunction or ChainForm. Refuses non-chain lattices
// (use the commutation oracle there).
FastDecision is_self_commuting_fast(const DnfPolynomial& p);

// Both sides of the nested-composition identity for a classified polynomial:
// the left side evaluates p(p(row_1), ..., p(row_n)) on an n x n matrix
// (row-major), the right side the closed form
//   a_empty join (a_i a_j x_ij over all i,j)
//        join (a_S meet all x_ij with i,j in S, per chain link S).
// Always true; exists to exercise the identity.
bool sufficiency_expansion_check(const DnfPolynomial& p,
                                 std::span<const ElemId> matrix);

// For every ordered triple of distinct variables i,j,k on canonical
// coefficients: a_ij meet a_jk is below a_i join a_j, which is below a_ij.
// Holds for every self-commuting polynomial over a chain. Requires arity
// at least 3.
bool necessity_inequality_check(const DnfPolynomial& p);

}  // namespace latpoly
