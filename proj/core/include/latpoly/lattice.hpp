#pragma once

#include <array>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace latpoly {

// Dense element id, 0 .. size()-1.
using ElemId = int;

inline constexpr int kDefaultLatticeSizeCap = 64;

// Thrown when a configured resource cap (lattice size, evaluation budget,
// enumeration budget) would be exceeded. Distinct from domain errors so
// callers can report "too big" separately from "malformed".
class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class LatticeKind { Chain, Product, Table };

// One violated axiom with the first witness found by the scan.
// Unused witness slots are -1 (the bounds axioms have no witness triple).
struct AxiomViolation {
  std::string axiom;
  std::array<ElemId, 3> witness{-1, -1, -1};
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

class BoundedLattice;
using LatticePtr = std::shared_ptr<const BoundedLattice>;

/**
 * A bounded distributive lattice on dense integer ids.
 *
 * Three kinds: a chain 0 < 1 < ... < k-1, a finite product of chains
 * (ids encode coordinate tuples in mixed radix, coordinate 0 least
 * significant), and an explicit meet/join table pair.
 *
 * Chains and products are distributive by construction and compute meet and
 * join on the fly. Tables are stored verbatim and swept for the lattice and
 * distributivity axioms once at construction; validate() re-runs the sweep
 * and reports every violated axiom with a witness. Polynomials refuse to be
 * built over a table that failed the sweep.
 */
class BoundedLattice {
public:
  static LatticePtr chain(int size, int size_cap = kDefaultLatticeSizeCap);
  static LatticePtr product(std::vector<int> factors,
                            int size_cap = kDefaultLatticeSizeCap);
  static LatticePtr from_tables(int size, std::vector<std::vector<ElemId>> meet,
                                std::vector<std::vector<ElemId>> join,
                                int size_cap = kDefaultLatticeSizeCap);

  int size() const { return size_; }
  LatticeKind kind() const { return kind_; }

  ElemId meet(ElemId a, ElemId b) const;
  ElemId join(ElemId a, ElemId b) const;
  bool leq(ElemId a, ElemId b) const { return meet(a, b) == a; }

  ElemId bottom() const;
  ElemId top() const;

  // True iff leq is total on all pairs; computed by a full pair scan at
  // construction.
  bool is_chain() const { return is_chain_; }

  // True for chains and products; for tables, the result of the
  // construction-time axiom sweep.
  bool passes_validation() const { return passes_validation_; }

  // Full scan of every axiom: idempotence, commutativity, associativity,
  // absorption, both distributive laws, and existence of bottom and top.
  // Each violated axiom is listed once with the first witness encountered.
  ValidationReport validate() const;

  // Product coordinates. coordinates/element_at are only meaningful for the
  // Product kind and throw std::logic_error otherwise.
  const std::vector<int>& factors() const;
  std::vector<int> coordinates(ElemId id) const;
  ElemId element_at(std::span<const int> coords) const;

  // "chain(3)", "product(3x2)", "table(5)"
  std::string describe() const;

  // Extensional equality: same carrier size and identical meet/join behavior.
  // product({2}) is the same lattice as chain(2) under this comparison.
  bool same_structure(const BoundedLattice& other) const;

  void check_element(ElemId id) const;

private:
  BoundedLattice() = default;

  void compute_cached_properties();

  LatticeKind kind_ = LatticeKind::Chain;
  int size_ = 0;
  std::vector<int> factors_;               // Product only
  std::vector<ElemId> meet_table_;         // Table only, row-major size*size
  std::vector<ElemId> join_table_;         // Table only
  ElemId bottom_ = -1;
  ElemId top_ = -1;
  bool is_chain_ = false;
  bool passes_validation_ = false;
};

// a < b in lattice order.
inline bool strictly_less(const BoundedLattice& lat, ElemId a, ElemId b) {
  return a != b && lat.leq(a, b);
}

}  // namespace latpoly
