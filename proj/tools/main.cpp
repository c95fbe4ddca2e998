#include <bit>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latpoly/latpoly.hpp"

namespace {

using namespace latpoly;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string piece = text.substr(pos, comma - pos);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(piece, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": expected an integer, got \"" +
                                  piece + "\"");
    }
    if (used != piece.size()) {
      throw std::invalid_argument(std::string(what) + ": trailing characters in \"" +
                                  piece + "\"");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

std::vector<ElemId> parse_point(const std::string& text) {
  std::vector<int> raw = parse_int_list(text, "point");
  return std::vector<ElemId>(raw.begin(), raw.end());
}

const char* bool_word(bool v) { return v ? "true" : "false"; }

int run_eval(const std::string& file, const std::string& point_text) {
  const DnfPolynomial p = load_polynomial_file(file);
  const std::vector<ElemId> point = parse_point(point_text);
  std::cout << p.eval(point) << "\n";
  return kExitOk;
}

int run_canon(const std::string& file, OutputFormat format) {
  const DnfPolynomial p = load_polynomial_file(file).canonicalized();
  if (format == OutputFormat::Machine) {
    std::cout << polynomial_to_json_text(p) << "\n";
    return kExitOk;
  }
  std::cout << "lattice: " << p.lattice().describe() << "\n"
            << "arity: " << p.arity() << "\n";
  const Subset full = (Subset{1} << p.arity()) - 1;
  for (int size = 0; size <= p.arity(); ++size) {
    for (Subset set = 0; set <= full; ++set) {
      if (std::popcount(set) != size) continue;
      std::cout << "a_" << subset_to_string(set) << " = " << p.coefficient(set)
                << "\n";
    }
  }
  return kExitOk;
}

int run_classify(const std::string& file, OutputFormat format) {
  const DnfPolynomial p = load_polynomial_file(file);
  std::cout << render_classification(classify(p), format) << "\n";
  return kExitOk;
}

int run_selfcommute(const std::string& file, const std::string& method,
                    std::uint64_t cap, OutputFormat format) {
  const DnfPolynomial p = load_polynomial_file(file);

  std::optional<bool> fast_verdict;
  std::optional<bool> oracle_verdict;
  std::optional<CommutationWitness> witness;

  if (method == "fast" || method == "both") {
    fast_verdict = is_self_commuting_fast(p).self_commuting;
  }
  if (method == "oracle" || method == "both") {
    const OperationTable table = table_of(p, cap);
    witness = self_commuting(table, cap);
    oracle_verdict = !witness.has_value();
  }

  if (method == "both") {
    if (format == OutputFormat::Machine) {
      std::cout << "fast=" << bool_word(*fast_verdict)
                << " oracle=" << bool_word(*oracle_verdict) << "\n";
    } else {
      std::cout << "fast: " << bool_word(*fast_verdict)
                << ", oracle: " << bool_word(*oracle_verdict) << "\n";
    }
  } else {
    const bool verdict = fast_verdict ? *fast_verdict : *oracle_verdict;
    if (format == OutputFormat::Machine) {
      std::cout << "selfcommuting=" << bool_word(verdict) << " method=" << method
                << "\n";
    } else {
      std::cout << bool_word(verdict) << "\n";
    }
  }
  if (witness) std::cout << render_witness_line(*witness) << "\n";

  if (fast_verdict && oracle_verdict && *fast_verdict != *oracle_verdict) {
    return kExitViolation;
  }
  const bool verdict = oracle_verdict ? *oracle_verdict : *fast_verdict;
  return verdict ? kExitOk : kExitViolation;
}

int run_commute(const std::string& file_f, const std::string& file_g,
                std::uint64_t cap, OutputFormat format) {
  const DnfPolynomial f = load_polynomial_file(file_f);
  const DnfPolynomial g = load_polynomial_file(file_g);
  if (!f.lattice().same_structure(g.lattice())) {
    throw std::invalid_argument("the two polynomials live over different lattices (" +
                                f.lattice().describe() + " vs " +
                                g.lattice().describe() + ")");
  }
  const std::optional<CommutationWitness> witness =
      commute(table_of(f, cap), table_of(g, cap), cap);
  const bool ok = !witness.has_value();
  if (format == OutputFormat::Machine) {
    std::cout << "commute=" << bool_word(ok) << "\n";
  } else {
    std::cout << bool_word(ok) << "\n";
  }
  if (witness) std::cout << render_witness_line(*witness) << "\n";
  return ok ? kExitOk : kExitViolation;
}

int run_verify(int arity, int chain_size, int jobs, std::uint64_t cap,
               std::uint64_t limit, OutputFormat format) {
  HarnessOptions options;
  options.evaluation_cap = cap;
  options.max_polynomials = limit;
  options.jobs = jobs;
  options.keep_verdicts = (format == OutputFormat::Machine);
  const VerificationReport report =
      verify_theorem(BoundedLattice::chain(chain_size), arity, options);
  std::cout << render_verification_report(report, format);
  return report.mismatches.empty() ? kExitOk : kExitViolation;
}

int run_search(int arity, const std::string& product_spec,
               const std::string& lattice_file, int jobs, std::uint64_t cap,
               std::uint64_t limit, OutputFormat format) {
  LatticePtr lattice;
  if (!product_spec.empty()) {
    lattice = BoundedLattice::product(parse_int_list(product_spec, "--product"));
  } else {
    lattice = load_lattice_file(lattice_file);
  }
  if (lattice->is_chain()) {
    std::cerr << "error: " << lattice->describe()
              << " is a chain; use verify\n";
    return kExitUsage;
  }
  HarnessOptions options;
  options.evaluation_cap = cap;
  options.max_polynomials = limit;
  options.jobs = jobs;
  options.keep_verdicts = (format == OutputFormat::Machine);
  const SearchReport report = search_counterexample(lattice, arity, options);
  std::cout << render_search_report(report, format);
  return report.sufficiency_violations.empty() ? kExitOk : kExitViolation;
}

int run_family(const std::vector<std::string>& files, std::uint64_t cap,
               OutputFormat format) {
  std::vector<DnfPolynomial> members;
  members.reserve(files.size());
  for (const std::string& file : files) {
    members.push_back(load_polynomial_file(file));
    if (!members.front().lattice().same_structure(members.back().lattice())) {
      throw std::invalid_argument("family members live over different lattices (" +
                                  files.front() + " vs " + file + ")");
    }
  }
  std::vector<OperationTable> tables;
  tables.reserve(members.size());
  for (const DnfPolynomial& p : members) tables.push_back(table_of(p, cap));

  const std::optional<FamilyFailure> failure = strongly_bisymmetric(tables, cap);
  const bool ok = !failure.has_value();
  if (format == OutputFormat::Machine) {
    std::cout << "bisymmetric=" << bool_word(ok);
    if (failure) {
      std::cout << " pair=" << failure->first_index << ","
                << failure->second_index;
    }
    std::cout << "\n";
  } else {
    std::cout << bool_word(ok) << "\n";
    if (failure) {
      std::cout << "pair (" << failure->first_index << ","
                << failure->second_index << ")\n";
    }
  }
  if (failure) std::cout << render_witness_line(failure->witness) << "\n";
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice polynomial toolkit: evaluation, canonical forms, "
               "commutation checks, and exhaustive verification"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "human";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();

  std::string eval_file, eval_point;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate a polynomial at a point");
  eval_cmd->add_option("file", eval_file, "Polynomial file")->required();
  eval_cmd
      ->add_option("point", eval_point,
                   "Comma-separated element ids, one per variable")
      ->required();

  std::string canon_file;
  CLI::App* canon_cmd =
      app.add_subcommand("canon", "Print the canonical coefficient map");
  canon_cmd->add_option("file", canon_file, "Polynomial file")->required();

  std::string classify_file;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "Report weighted-disjunction / chain-form structure");
  classify_cmd->add_option("file", classify_file, "Polynomial file")->required();

  std::string sc_file, sc_method = "oracle";
  std::uint64_t sc_cap = kDefaultEvaluationCap;
  CLI::App* sc_cmd =
      app.add_subcommand("selfcommute", "Decide whether a polynomial commutes "
                                        "with itself");
  sc_cmd->add_option("file", sc_file, "Polynomial file")->required();
  sc_cmd->add_option("--method", sc_method, "fast, oracle, or both")
      ->check(CLI::IsMember({"fast", "oracle", "both"}))
      ->capture_default_str();
  sc_cmd->add_option("--cap", sc_cap, "Evaluation budget per oracle call")
      ->capture_default_str();

  std::string commute_file_f, commute_file_g;
  std::uint64_t commute_cap = kDefaultEvaluationCap;
  CLI::App* commute_cmd =
      app.add_subcommand("commute", "Check that two polynomials commute");
  commute_cmd->add_option("file_f", commute_file_f, "First polynomial file")
      ->required();
  commute_cmd->add_option("file_g", commute_file_g, "Second polynomial file")
      ->required();
  commute_cmd->add_option("--cap", commute_cap, "Evaluation budget per oracle call")
      ->capture_default_str();

  int verify_arity = 0, verify_chain = 0, verify_jobs = 1;
  std::uint64_t verify_cap = kDefaultEvaluationCap, verify_limit = 1'000'000;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Exhaustively compare the structural decision against the "
                "oracle over a chain");
  verify_cmd->add_option("--arity", verify_arity, "Polynomial arity")
      ->required()
      ->check(CLI::Range(1, kMaxArity));
  verify_cmd->add_option("--chain", verify_chain, "Chain size")
      ->required()
      ->check(CLI::Range(2, kDefaultLatticeSizeCap));
  verify_cmd->add_option("--jobs", verify_jobs, "Worker threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  verify_cmd->add_option("--cap", verify_cap, "Evaluation budget per oracle call")
      ->capture_default_str();
  verify_cmd->add_option("--limit", verify_limit, "Maximum polynomials to enumerate")
      ->capture_default_str();

  int search_arity = 0, search_jobs = 1;
  std::string search_product, search_lattice;
  std::uint64_t search_cap = kDefaultEvaluationCap, search_limit = 1'000'000;
  CLI::App* search_cmd = app.add_subcommand(
      "search", "Scan a non-chain lattice for self-commuting polynomials "
                "outside the chain classes");
  search_cmd->add_option("--arity", search_arity, "Polynomial arity")
      ->required()
      ->check(CLI::Range(1, kMaxArity));
  CLI::Option* product_opt = search_cmd->add_option(
      "--product", search_product, "Chain sizes of a product lattice, e.g. 2,2");
  CLI::Option* lattice_opt =
      search_cmd->add_option("--lattice", search_lattice, "Lattice file");
  product_opt->excludes(lattice_opt);
  search_cmd->add_option("--jobs", search_jobs, "Worker threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  search_cmd->add_option("--cap", search_cap, "Evaluation budget per oracle call")
      ->capture_default_str();
  search_cmd->add_option("--limit", search_limit, "Maximum polynomials to enumerate")
      ->capture_default_str();

  std::vector<std::string> family_files;
  std::uint64_t family_cap = kDefaultEvaluationCap;
  CLI::App* family_cmd = app.add_subcommand(
      "family", "Check that every pair in a family of polynomials commutes");
  family_cmd->add_option("files", family_files, "Polynomial files")
      ->required()
      ->expected(-1);
  family_cmd->add_option("--cap", family_cap, "Evaluation budget per oracle call")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const OutputFormat format =
      format_name == "machine" ? OutputFormat::Machine : OutputFormat::Human;

  try {
    if (app.got_subcommand(eval_cmd)) return run_eval(eval_file, eval_point);
    if (app.got_subcommand(canon_cmd)) return run_canon(canon_file, format);
    if (app.got_subcommand(classify_cmd)) return run_classify(classify_file, format);
    if (app.got_subcommand(sc_cmd)) {
      return run_selfcommute(sc_file, sc_method, sc_cap, format);
    }
    if (app.got_subcommand(commute_cmd)) {
      return run_commute(commute_file_f, commute_file_g, commute_cap, format);
    }
    if (app.got_subcommand(verify_cmd)) {
      return run_verify(verify_arity, verify_chain, verify_jobs, verify_cap,
                        verify_limit, format);
    }
    if (app.got_subcommand(search_cmd)) {
      if (search_product.empty() && search_lattice.empty()) {
        std::cerr << "error: search needs --product or --lattice\n";
        return kExitUsage;
      }
      return run_search(search_arity, search_product, search_lattice, search_jobs,
                        search_cap, search_limit, format);
    }
    if (app.got_subcommand(family_cmd)) {
      return run_family(family_files, family_cap, format);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
