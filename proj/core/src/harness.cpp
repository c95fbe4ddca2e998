#include "latpoly/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace latpoly {

namespace {

std::vector<Subset> subset_order(int arity) {
  std::vector<Subset> order(std::size_t{1} << arity);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [](Subset a, Subset b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return order;
}

// Depth-first walk over monotone maps with g(empty) pinned; positions follow
// the (size, mask) order so every proper subset is assigned first and the
// lower bound is the join over the maximal ones.
void enumerate_bucket(const LatticePtr& lattice, int arity,
                      const std::vector<Subset>& order, ElemId empty_value,
                      std::atomic<std::uint64_t>& produced,
                      std::uint64_t max_polynomials,
                      const std::function<void(const DnfPolynomial&)>& sink) {
  const BoundedLattice& lat = *lattice;
  std::vector<ElemId> g(std::size_t{1} << arity, lat.bottom());
  g[0] = empty_value;

  auto walk = [&](auto&& self, std::size_t pos) -> void {
    if (pos == order.size()) {
      if (produced.fetch_add(1, std::memory_order_relaxed) + 1 > max_polynomials) {
        throw ResourceLimitError("enumeration exceeds the cap of " +
                                 std::to_string(max_polynomials) +
                                 " polynomials");
      }
      sink(from_boolean_restriction(lattice, arity, g));
      return;
    }
    const Subset set = order[pos];
    ElemId lower = lat.bottom();
    for (Subset rest = set; rest != 0; rest &= rest - 1) {
      const Subset bit = rest & (~rest + 1);
      lower = lat.join(lower, g[set ^ bit]);
    }
    for (ElemId v = 0; v < lat.size(); ++v) {
      if (!lat.leq(lower, v)) continue;
      g[set] = v;
      self(self, pos + 1);
    }
  };
  walk(walk, 1);
}

// Run fn(bucket_value) for every bottom-coefficient value, either inline or
// on a small worker pool; results land in per-bucket slots so merge order is
// independent of scheduling.
template <typename Fn>
void for_each_bucket(int bucket_count, int jobs, Fn&& fn) {
  if (jobs <= 1 || bucket_count <= 1) {
    for (int b = 0; b < bucket_count; ++b) fn(b);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int b = next.fetch_add(1);
      if (b >= bucket_count || failed.load()) return;
      try {
        fn(b);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min(jobs, bucket_count);
  pool.reserve(count);
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

void check_oracle_budget(const LatticePtr& lattice, int arity,
                         const HarnessOptions& options) {
  const std::uint64_t s = static_cast<std::uint64_t>(lattice->size());
  std::uint64_t total = 1;
  for (int i = 0; i < arity * arity; ++i) {
    if (total > options.evaluation_cap / s) {
      throw ResourceLimitError(
          "one oracle call would scan " + std::to_string(lattice->size()) + "^" +
          std::to_string(arity * arity) + " matrices, over the cap of " +
          std::to_string(options.evaluation_cap));
    }
    total *= s;
  }
}

}  // namespace

VerdictClass verdict_class(const Classification& cls) {
  if (std::holds_alternative<WeightedDisjunction>(cls)) {
    return VerdictClass::WeightedDisjunction;
  }
  if (std::holds_alternative<ChainForm>(cls)) return VerdictClass::ChainForm;
  return VerdictClass::NotChainStructured;
}

void enumerate_polynomials(const LatticePtr& lattice, int arity,
                           const std::function<void(const DnfPolynomial&)>& sink,
                           const HarnessOptions& options) {
  if (arity < 1 || arity > kMaxArity) {
    throw std::invalid_argument("arity must be in 1..16");
  }
  if (!lattice->passes_validation()) {
    throw std::invalid_argument("enumeration requires a validated lattice");
  }
  const auto order = subset_order(arity);
  std::atomic<std::uint64_t> produced{0};
  for (ElemId empty_value = 0; empty_value < lattice->size(); ++empty_value) {
    enumerate_bucket(lattice, arity, order, empty_value, produced,
                     options.max_polynomials, sink);
  }
}

namespace {

// Shared per-bucket driver for verify and search: classification plus oracle
// verdict per polynomial, merged in bucket order.
struct BucketOutcome {
  std::uint64_t checked = 0;
  std::uint64_t fast_count = 0;
  std::uint64_t oracle_count = 0;
  std::vector<PolyVerdict> verdicts;
  std::vector<MismatchRecord> mismatches;      // verify: fast != oracle
  std::vector<SearchCandidate> candidates;     // search: oracle and not chain
  std::vector<MismatchRecord> sufficiency_violations;
};

template <typename PerPolynomial>
std::vector<BucketOutcome> run_buckets(const LatticePtr& lattice, int arity,
                                       const HarnessOptions& options,
                                       PerPolynomial&& per_polynomial) {
  const auto order = subset_order(arity);
  std::vector<BucketOutcome> outcomes(lattice->size());
  std::atomic<std::uint64_t> produced{0};
  for_each_bucket(lattice->size(), options.jobs, [&](int bucket) {
    enumerate_bucket(lattice, arity, order, bucket, produced,
                     options.max_polynomials,
                     [&](const DnfPolynomial& p) {
                       per_polynomial(p, outcomes[bucket]);
                     });
  });
  return outcomes;
}

}  // namespace

VerificationReport verify_theorem(const LatticePtr& chain_lattice, int arity,
                                  const HarnessOptions& options) {
  if (!chain_lattice->is_chain()) {
    throw std::invalid_argument(
        "verify_theorem runs over chains; use search_counterexample for " +
        chain_lattice->describe());
  }
  check_oracle_budget(chain_lattice, arity, options);
  const auto start = std::chrono::steady_clock::now();

  auto outcomes = run_buckets(
      chain_lattice, arity, options,
      [&](const DnfPolynomial& p, BucketOutcome& out) {
        const FastDecision fast = is_self_commuting_fast(p);
        const auto witness = self_commuting(table_of(p, options.evaluation_cap),
                                            options.evaluation_cap);
        const bool oracle = !witness.has_value();
        out.checked += 1;
        out.fast_count += fast.self_commuting ? 1 : 0;
        out.oracle_count += oracle ? 1 : 0;
        PolyVerdict verdict{p.coefficients(),
                            verdict_class(fast.classification),
                            fast.self_commuting, oracle};
        if (fast.self_commuting != oracle) {
          out.mismatches.push_back({verdict, witness});
        }
        if (options.keep_verdicts) out.verdicts.push_back(std::move(verdict));
      });

  VerificationReport report;
  report.lattice_description = chain_lattice->describe();
  report.arity = arity;
  for (auto& out : outcomes) {
    report.checked += out.checked;
    report.self_commuting_fast += out.fast_count;
    report.self_commuting_oracle += out.oracle_count;
    std::move(out.verdicts.begin(), out.verdicts.end(),
              std::back_inserter(report.verdicts));
    std::move(out.mismatches.begin(), out.mismatches.end(),
              std::back_inserter(report.mismatches));
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

SearchReport search_counterexample(const LatticePtr& lattice, int arity,
                                   const HarnessOptions& options) {
  if (lattice->is_chain()) {
    throw std::invalid_argument(
        "search_counterexample runs over non-chain lattices; use "
        "verify_theorem for " +
        lattice->describe());
  }
  if (!lattice->passes_validation()) {
    throw std::invalid_argument("search requires a validated lattice");
  }
  check_oracle_budget(lattice, arity, options);
  const auto start = std::chrono::steady_clock::now();

  auto outcomes = run_buckets(
      lattice, arity, options,
      [&](const DnfPolynomial& p, BucketOutcome& out) {
        Classification cls = classify(p);
        const bool structural = !std::holds_alternative<NotChainStructured>(cls);
        const auto witness = self_commuting(table_of(p, options.evaluation_cap),
                                            options.evaluation_cap);
        const bool oracle = !witness.has_value();
        out.checked += 1;
        out.fast_count += structural ? 1 : 0;
        out.oracle_count += oracle ? 1 : 0;
        PolyVerdict verdict{p.coefficients(), verdict_class(cls), structural,
                            oracle};
        if (structural && !oracle) {
          out.sufficiency_violations.push_back({verdict, witness});
        }
        if (!structural && oracle) {
          out.candidates.push_back({p.coefficients(), std::move(cls)});
        }
        if (options.keep_verdicts) out.verdicts.push_back(std::move(verdict));
      });

  SearchReport report;
  report.lattice_description = lattice->describe();
  report.arity = arity;
  for (auto& out : outcomes) {
    report.checked += out.checked;
    report.wd_or_chain += out.fast_count;
    report.sufficiency_confirmed += out.fast_count;
    std::move(out.verdicts.begin(), out.verdicts.end(),
              std::back_inserter(report.verdicts));
    std::move(out.candidates.begin(), out.candidates.end(),
              std::back_inserter(report.candidates));
    std::move(out.sufficiency_violations.begin(),
              out.sufficiency_violations.end(),
              std::back_inserter(report.sufficiency_violations));
  }
  report.sufficiency_confirmed -= report.sufficiency_violations.size();
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

MinorClosureReport minor_closure_suite(const LatticePtr& lattice, int arity,
                                       std::uint64_t sample_polynomials,
                                       std::uint64_t sample_maps,
                                       std::uint32_t seed,
                                       const HarnessOptions& options) {
  check_oracle_budget(lattice, arity, options);

  std::vector<DnfPolynomial> self_commuting_pool;
  enumerate_polynomials(
      lattice, arity,
      [&](const DnfPolynomial& p) {
        if (!self_commuting(table_of(p, options.evaluation_cap),
                            options.evaluation_cap)) {
          self_commuting_pool.push_back(p);
        }
      },
      options);

  std::mt19937 rng(seed);
  if (sample_polynomials != 0 &&
      sample_polynomials < self_commuting_pool.size()) {
    std::shuffle(self_commuting_pool.begin(), self_commuting_pool.end(), rng);
    self_commuting_pool.erase(
        self_commuting_pool.begin() + static_cast<std::ptrdiff_t>(sample_polynomials),
        self_commuting_pool.end());
  }

  std::vector<std::vector<int>> maps;
  std::uint64_t all_maps = 1;
  for (int i = 0; i < arity; ++i) all_maps *= static_cast<std::uint64_t>(arity);
  if (sample_maps == 0 || sample_maps >= all_maps) {
    std::vector<int> image(arity, 1);
    for (;;) {
      maps.push_back(image);
      int pos = arity - 1;
      while (pos >= 0 && image[pos] == arity) image[pos--] = 1;
      if (pos < 0) break;
      ++image[pos];
    }
  } else {
    std::uniform_int_distribution<int> pick(1, arity);
    maps.resize(sample_maps);
    for (auto& image : maps) {
      image.resize(arity);
      for (int& v : image) v = pick(rng);
    }
  }

  MinorClosureReport report;
  report.polynomials = self_commuting_pool.size();
  report.maps_per_polynomial = maps.size();
  for (const DnfPolynomial& p : self_commuting_pool) {
    for (const auto& image : maps) {
      const VariableMap sigma{arity, arity, image};
      const DnfPolynomial minor = simple_minor(p, sigma);
      report.checks += 1;
      if (auto witness = self_commuting(table_of(minor, options.evaluation_cap),
                                        options.evaluation_cap)) {
        report.failures.push_back(
            {p.coefficients(), image, std::move(*witness)});
      }
    }
  }
  return report;
}

}  // namespace latpoly
