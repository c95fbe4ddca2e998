#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latpoly/commutation.hpp"
#include "latpoly/structure.hpp"

namespace latpoly {

struct HarnessOptions {
  std::uint64_t evaluation_cap = kDefaultEvaluationCap;  // per oracle call
  std::uint64_t max_polynomials = 1'000'000;
  int jobs = 1;
  bool keep_verdicts = true;  // retain one record per polynomial in reports
};

/**
 * Stream every canonical polynomial of the given arity over the lattice, as
 * monotone maps from subsets to elements, in a fixed order: subset positions
 * by (size, mask), candidate values bottom to top by element id, depth-first.
 * The sink sees each polynomial exactly once, already canonical.
 */
void enumerate_polynomials(const LatticePtr& lattice, int arity,
                           const std::function<void(const DnfPolynomial&)>& sink,
                           const HarnessOptions& options = {});

enum class VerdictClass { WeightedDisjunction, ChainForm, NotChainStructured };

VerdictClass verdict_class(const Classification& cls);

struct PolyVerdict {
  std::vector<ElemId> coefficients;  // canonical, subset-mask order
  VerdictClass classification;
  bool fast = false;    // structural decision (chains only; mirrors oracle on search)
  bool oracle = false;  // exhaustive matrix scan
};

struct MismatchRecord {
  PolyVerdict verdict;
  std::optional<CommutationWitness> witness;  // present when the oracle failed
};

/**
 * Exhaustive check of the equivalence "structurally chain-form or weighted
 * disjunction iff self-commuting" over a chain: every canonical polynomial is
 * run through both the structural decision and the matrix-scan oracle.
 * Deterministic up to elapsed_seconds, for any job count.
 */
struct VerificationReport {
  std::string lattice_description;
  int arity = 0;
  std::uint64_t checked = 0;
  std::uint64_t self_commuting_fast = 0;
  std::uint64_t self_commuting_oracle = 0;
  std::vector<PolyVerdict> verdicts;  // empty unless keep_verdicts
  std::vector<MismatchRecord> mismatches;
  double elapsed_seconds = 0.0;
};

VerificationReport verify_theorem(const LatticePtr& chain_lattice, int arity,
                                  const HarnessOptions& options = {});

struct SearchCandidate {
  std::vector<ElemId> coefficients;
  Classification classification;  // NotChainStructured, with the obstruction
};

/**
 * Over a validated non-chain distributive lattice, split the enumerated
 * polynomials: structurally chain-form/weighted-disjunction ones must
 * self-commute (the sufficiency direction; a violation is an implementation
 * bug), and self-commuting ones that are NOT chain-structured are collected
 * as candidates. Candidates are findings, not failures.
 */
struct SearchReport {
  std::string lattice_description;
  int arity = 0;
  std::uint64_t checked = 0;
  std::uint64_t wd_or_chain = 0;
  std::uint64_t sufficiency_confirmed = 0;
  std::vector<PolyVerdict> verdicts;  // empty unless keep_verdicts
  std::vector<SearchCandidate> candidates;
  std::vector<MismatchRecord> sufficiency_violations;
  double elapsed_seconds = 0.0;
};

SearchReport search_counterexample(const LatticePtr& lattice, int arity,
                                   const HarnessOptions& options = {});

struct MinorClosureFailure {
  std::vector<ElemId> coefficients;
  std::vector<int> map_image;  // sigma as 1-based images
  CommutationWitness witness;
};

/**
 * For self-commuting polynomials (by oracle) and arity-preserving variable
 * maps, check that every simple minor is again self-commuting. sample counts
 * of 0 mean exhaustive; otherwise a seeded sample of that size.
 */
struct MinorClosureReport {
  std::uint64_t polynomials = 0;       // self-commuting polynomials exercised
  std::uint64_t maps_per_polynomial = 0;
  std::uint64_t checks = 0;
  std::vector<MinorClosureFailure> failures;
};

MinorClosureReport minor_closure_suite(const LatticePtr& lattice, int arity,
                                       std::uint64_t sample_polynomials,
                                       std::uint64_t sample_maps,
                                       std::uint32_t seed,
                                       const HarnessOptions& options = {});

}  // namespace latpoly
