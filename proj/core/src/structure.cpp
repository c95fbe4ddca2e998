#include "latpoly/structure.hpp"

#include <algorithm>
#include <bit>

namespace latpoly {

namespace {

bool subset_of(Subset a, Subset b) { return (a & ~b) == 0; }

}  // namespace

Classification classify(const DnfPolynomial& p) {
  const DnfPolynomial canon = p.canonicalized();
  const auto& c = canon.coefficients();
  const BoundedLattice& lat = p.lattice();
  const int n = p.arity();

  ElemId empty_coefficient = c[0];
  std::vector<ElemId> unary(n);
  for (int var = 1; var <= n; ++var) unary[var - 1] = c[subset_bit(var)];

  std::vector<Term> big;
  for (const Term& t : essential_terms(canon)) {
    if (t.size >= 2) big.push_back(t);
  }

  if (big.empty()) {
    return WeightedDisjunction{empty_coefficient, std::move(unary)};
  }

  // essential_terms emits ascending masks; within a chain, inclusion order,
  // mask order, and size order all agree once pairwise comparability holds.
  for (std::size_t i = 0; i < big.size(); ++i) {
    for (std::size_t j = i + 1; j < big.size(); ++j) {
      if (!subset_of(big[i].subset, big[j].subset) &&
          !subset_of(big[j].subset, big[i].subset)) {
        return NotChainStructured{
            NotChainStructured::Reason::IncomparableEssentialTerms,
            big[i].subset, big[j].subset, 0, 0};
      }
    }
  }
  std::sort(big.begin(), big.end(),
            [](const Term& a, const Term& b) { return a.size < b.size; });

  const Subset s1 = big.front().subset;
  if (lat.is_chain()) {
    // Over a chain the domination condition collapses to a comparison with
    // the largest unary coefficient inside S_1.
    ElemId best = lat.bottom();
    for (int var = 1; var <= n; ++var) {
      if (s1 & subset_bit(var)) best = lat.join(best, unary[var - 1]);
    }
    for (int var = 1; var <= n; ++var) {
      if (s1 & subset_bit(var)) continue;
      if (!lat.leq(unary[var - 1], best)) {
        return NotChainStructured{
            NotChainStructured::Reason::UndominatedVariable, 0, 0, var, s1};
      }
    }
  } else {
    for (int var = 1; var <= n; ++var) {
      if (s1 & subset_bit(var)) continue;
      bool dominated = false;
      for (int inside = 1; inside <= n && !dominated; ++inside) {
        if ((s1 & subset_bit(inside)) &&
            lat.leq(unary[var - 1], unary[inside - 1])) {
          dominated = true;
        }
      }
      if (!dominated) {
        return NotChainStructured{
            NotChainStructured::Reason::UndominatedVariable, 0, 0, var, s1};
      }
    }
  }

  ChainForm form{empty_coefficient, std::move(unary), {}};
  form.chain.reserve(big.size());
  for (const Term& t : big) form.chain.push_back({t.subset, t.coefficient});
  return form;
}

FastDecision is_self_commuting_fast(const DnfPolynomial& p) {
  if (!p.lattice().is_chain()) {
    throw std::invalid_argument(
        "the structural decision only applies over chains; run the "
        "commutation oracle on " +
        p.lattice().describe());
  }
  Classification cls = classify(p);
  const bool ok = !std::holds_alternative<NotChainStructured>(cls);
  return FastDecision{ok, std::move(cls)};
}

bool sufficiency_expansion_check(const DnfPolynomial& p,
                                 std::span<const ElemId> matrix) {
  const int n = p.arity();
  const BoundedLattice& lat = p.lattice();
  if (matrix.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("matrix must be n x n for an arity-n polynomial");
  }
  for (ElemId x : matrix) lat.check_element(x);

  const Classification cls = classify(p);
  if (std::holds_alternative<NotChainStructured>(cls)) {
    throw std::invalid_argument(
        "the expansion identity needs a weighted disjunction or chain form");
  }

  std::vector<ElemId> row_images(n);
  for (int i = 0; i < n; ++i) {
    row_images[i] = p.eval(matrix.subspan(static_cast<std::size_t>(i) * n, n));
  }
  const ElemId nested = p.eval(row_images);

  ElemId empty_coefficient;
  const std::vector<ElemId>* unary;
  const std::vector<ChainLink>* chain = nullptr;
  if (const auto* wd = std::get_if<WeightedDisjunction>(&cls)) {
    empty_coefficient = wd->empty_coefficient;
    unary = &wd->unary;
  } else {
    const auto& cf = std::get<ChainForm>(cls);
    empty_coefficient = cf.empty_coefficient;
    unary = &cf.unary;
    chain = &cf.chain;
  }

  ElemId closed = empty_coefficient;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      closed = lat.join(closed,
                        lat.meet(lat.meet((*unary)[i], (*unary)[j]),
                                 matrix[static_cast<std::size_t>(i) * n + j]));
    }
  }
  if (chain != nullptr) {
    for (const ChainLink& link : *chain) {
      ElemId term = link.coefficient;
      for (int i = 0; i < n && term != lat.bottom(); ++i) {
        if (!(link.subset & subset_bit(i + 1))) continue;
        for (int j = 0; j < n; ++j) {
          if (!(link.subset & subset_bit(j + 1))) continue;
          term = lat.meet(term, matrix[static_cast<std::size_t>(i) * n + j]);
        }
      }
      closed = lat.join(closed, term);
    }
  }
  return nested == closed;
}

bool necessity_inequality_check(const DnfPolynomial& p) {
  const int n = p.arity();
  if (n < 3) {
    throw std::invalid_argument("the pair inequality needs arity at least 3");
  }
  const DnfPolynomial canon = p.canonicalized();
  const auto& c = canon.coefficients();
  const BoundedLattice& lat = p.lattice();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (j == i) continue;
      for (int k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        const ElemId a_ij = c[subset_bit(i) | subset_bit(j)];
        const ElemId a_jk = c[subset_bit(j) | subset_bit(k)];
        const ElemId pair = lat.join(c[subset_bit(i)], c[subset_bit(j)]);
        if (!lat.leq(lat.meet(a_ij, a_jk), pair)) return false;
        if (!lat.leq(pair, a_ij)) return false;
      }
    }
  }
  return true;
}

}  // namespace latpoly
