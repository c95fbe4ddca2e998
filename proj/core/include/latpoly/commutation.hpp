#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "latpoly/polynomial.hpp"

namespace latpoly {

// Evaluation budget for one exhaustive matrix scan and for one operation
// tabulation (domain^(n*m) or domain^n entries).
inline constexpr std::uint64_t kDefaultEvaluationCap = std::uint64_t{1} << 24;

/**
 * An extensional finite operation: every value of f on domain {0..s-1}^m,
 * stored densely. The index of a tuple is its base-s numeral with the first
 * argument most significant. Tables carry no lattice; the oracle below works
 * on arbitrary operations.
 */
class OperationTable {
public:
  OperationTable(int domain_size, int arity, std::vector<ElemId> values);

  int domain_size() const { return domain_size_; }
  int arity() const { return arity_; }
  const std::vector<ElemId>& values() const { return values_; }

  std::size_t index_of(std::span<const ElemId> args) const;
  ElemId operator()(std::span<const ElemId> args) const {
    return values_[index_of(args)];
  }

private:
  int domain_size_;
  int arity_;
  std::vector<ElemId> values_;
};

// Tabulate a polynomial over its whole domain, in lexicographic point order.
OperationTable table_of(const DnfPolynomial& p,
                        std::uint64_t evaluation_cap = kDefaultEvaluationCap);

// The lexicographically first n x m matrix (row-major, first entry most
// significant) on which f after g-on-rows differs from g after f-on-columns,
// together with the two values.
struct CommutationWitness {
  int rows = 0;
  int cols = 0;
  std::vector<ElemId> entries;  // row-major, rows*cols
  ElemId row_first = 0;         // f applied to the g-images of the rows
  ElemId column_first = 0;      // g applied to the f-images of the columns
};

// Exhaustive scan of all domain^(n*m) matrices in lexicographic order.
// nullopt means f and g commute. Throws ResourceLimitError when the scan
// would exceed the evaluation cap and std::invalid_argument on mismatched
// domains.
std::optional<CommutationWitness> commute(
    const OperationTable& f, const OperationTable& g,
    std::uint64_t evaluation_cap = kDefaultEvaluationCap);

inline std::optional<CommutationWitness> self_commuting(
    const OperationTable& f, std::uint64_t evaluation_cap = kDefaultEvaluationCap) {
  return commute(f, f, evaluation_cap);
}

// Recompute both sides of the commutation identity on a recorded matrix.
// Returns (row_first, column_first).
std::pair<ElemId, ElemId> replay_witness(const OperationTable& f,
                                         const OperationTable& g,
                                         const CommutationWitness& witness);

struct FamilyFailure {
  std::size_t first_index = 0;   // 1-based positions in the family
  std::size_t second_index = 0;
  CommutationWitness witness;
};

// Pairwise commutation over every ordered pair, (1,1), (1,2), ... row-major;
// the first failing pair is reported. nullopt means the family is strongly
// bisymmetric.
std::optional<FamilyFailure> strongly_bisymmetric(
    std::span<const OperationTable> family,
    std::uint64_t evaluation_cap = kDefaultEvaluationCap);

}  // namespace latpoly
