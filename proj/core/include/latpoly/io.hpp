#pragma once

#include <filesystem>
#include <string>

#include "latpoly/harness.hpp"

namespace latpoly {

// ===== JSON file formats =====
//
// Lattice descriptors:
//   {"type": "chain", "size": 3}
//   {"type": "product", "factors": [2, 2]}
//   {"type": "table", "size": 5, "meet": [[...], ...], "join": [[...], ...]}
//
// Polynomials:
//   {"lattice": <descriptor>,
//    "arity": 2,
//    "coefficients": {"": 0, "1": 1, "1,2": 2}}
//
// Coefficient keys are the subset's sorted 1-based indices joined by commas,
// "" for the empty set; missing subsets default to bottom. Values are element
// ids, or coordinate arrays over product lattices.

LatticePtr parse_lattice_text(const std::string& json_text);
std::string lattice_to_json_text(const BoundedLattice& lattice);

DnfPolynomial parse_polynomial_text(const std::string& json_text);
DnfPolynomial load_polynomial_file(const std::filesystem::path& path);
LatticePtr load_lattice_file(const std::filesystem::path& path);

// Bottom coefficients are dropped; output reparses to the same function.
std::string polynomial_to_json_text(const DnfPolynomial& p);

// "1,3"; "" for the empty set.
std::string subset_key(Subset set);
Subset parse_subset_key(const std::string& key, int arity);

// ===== Report rendering =====
//
// Machine lines are stable key=value tokens, one concept per line, no
// timing. Human output may add notes and the elapsed time.

enum class OutputFormat { Human, Machine };

std::string render_classification(const Classification& cls, OutputFormat format);

// "[[0,1],[1,0]]", row-major; rows are eval-ready points.
std::string render_matrix(const std::vector<ElemId>& entries, int rows, int cols);
std::string render_witness_line(const CommutationWitness& witness);

std::string render_verification_report(const VerificationReport& report,
                                       OutputFormat format);
std::string render_search_report(const SearchReport& report, OutputFormat format);

}  // namespace latpoly
