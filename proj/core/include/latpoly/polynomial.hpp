#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "latpoly/lattice.hpp"

namespace latpoly {

// Bitmask over variable positions: variable i (1-based) is bit i-1.
using Subset = std::uint32_t;

inline constexpr int kMaxArity = 16;

inline Subset subset_bit(int var) { return Subset{1} << (var - 1); }

// "{1,3}"; the empty set renders as "{}".
std::string subset_to_string(Subset set);

struct Term {
  Subset subset;
  ElemId coefficient;
  int size;
  friend bool operator==(const Term&, const Term&) = default;
};

// A map sigma from source variable positions to target positions:
// image[t-1] is sigma(t), 1-based, in 1..target_arity.
struct VariableMap {
  int source_arity = 0;
  int target_arity = 0;
  std::vector<int> image;

  static VariableMap identity(int arity);
  void check() const;
};

// compose(outer, inner)(t) = outer(inner(t)).
VariableMap compose(const VariableMap& outer, const VariableMap& inner);

// Raised when a boolean restriction is not nondecreasing; carries the first
// witness pair lower < upper (as subsets) with g(lower) not below g(upper).
class MonotonicityError : public std::invalid_argument {
public:
  MonotonicityError(Subset lower, Subset upper);
  Subset lower() const { return lower_; }
  Subset upper() const { return upper_; }

private:
  Subset lower_;
  Subset upper_;
};

/**
 * A lattice polynomial function in disjunctive normal form,
 *
 *   p(x) = join over I of ( a_I meet (meet of x_i for i in I) ),
 *
 * with one coefficient per subset of variable positions (the empty meet is
 * top, so the empty-set coefficient contributes as a constant). Coefficients
 * are stored densely, indexed by subset bitmask.
 *
 * A polynomial is flagged canonical when its coefficient map is the
 * restriction of the function to characteristic vectors, a_I = p(e_I);
 * equivalently, when the map is nondecreasing in subset inclusion. The flag
 * is verified at construction.
 *
 * Polynomials are value types over an immutable shared lattice. Construction
 * over a table lattice that failed its axiom sweep is refused.
 */
class DnfPolynomial {
public:
  DnfPolynomial(LatticePtr lattice, int arity, std::vector<ElemId> coefficients,
                bool canonical = false);

  static DnfPolynomial constant(LatticePtr lattice, int arity, ElemId value);
  static DnfPolynomial projection(LatticePtr lattice, int arity, int var);

  int arity() const { return arity_; }
  const BoundedLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const std::vector<ElemId>& coefficients() const { return coefficients_; }
  ElemId coefficient(Subset set) const { return coefficients_[set]; }
  bool is_canonical() const { return canonical_; }

  ElemId eval(std::span<const ElemId> point) const;

  // The unique canonical representation of the same function. Identity on
  // polynomials already flagged canonical.
  DnfPolynomial canonicalized() const;

private:
  LatticePtr lattice_;
  int arity_;
  std::vector<ElemId> coefficients_;
  bool canonical_;
};

// e_I: top on positions in I, bottom elsewhere.
std::vector<ElemId> characteristic_vector(Subset set, int arity,
                                          const BoundedLattice& lattice);

// First pair (I, I + {j}) with g(I) not below g(I + {j}), scanning subsets in
// ascending mask order and j ascending; nullopt when g is nondecreasing.
std::optional<std::pair<Subset, Subset>> find_monotonicity_violation(
    std::span<const ElemId> g, int arity, const BoundedLattice& lattice);

// The unique polynomial function over the given lattice whose restriction to
// characteristic vectors is g (indexed by subset mask). Throws
// MonotonicityError when g is not nondecreasing.
DnfPolynomial from_boolean_restriction(LatticePtr lattice, int arity,
                                       std::vector<ElemId> g);

// True iff some subset J avoiding var has p(e_J) < p(e_{J + {var}}).
bool essential_variable(const DnfPolynomial& p, int var);

// Nonempty subsets I whose canonical coefficient lies strictly above the join
// of all proper-subset coefficients, in ascending mask order. The empty set
// is never listed; its coefficient stands on its own as the constant part.
std::vector<Term> essential_terms(const DnfPolynomial& p);

// r(x_1..x_nu) = p(x_{sigma(1)}, ..., x_{sigma(m)}), canonical.
DnfPolynomial simple_minor(const DnfPolynomial& p, const VariableMap& sigma);

// The minor identifying variable i with j: position i reads x_j.
DnfPolynomial identify_variables(const DnfPolynomial& p, int i, int j);

// Pin x_position to the constant c; arity drops by one, result canonical.
DnfPolynomial substitute_constant(const DnfPolynomial& p, int position,
                                  ElemId c);

// Same function: same lattice structure, same arity, equal canonical maps.
bool equal(const DnfPolynomial& p, const DnfPolynomial& q);

}  // namespace latpoly
