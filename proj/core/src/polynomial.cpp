#include "latpoly/polynomial.hpp"

#include <bit>
#include <string>

namespace latpoly {

std::string subset_to_string(Subset set) {
  std::string out = "{";
  bool first = true;
  for (int var = 1; set != 0; ++var, set >>= 1) {
    if (set & 1u) {
      if (!first) out += ",";
      out += std::to_string(var);
      first = false;
    }
  }
  return out + "}";
}

VariableMap VariableMap::identity(int arity) {
  VariableMap map{arity, arity, {}};
  map.image.resize(arity);
  for (int t = 1; t <= arity; ++t) map.image[t - 1] = t;
  return map;
}

void VariableMap::check() const {
  if (source_arity < 1 || source_arity > kMaxArity || target_arity < 1 ||
      target_arity > kMaxArity) {
    throw std::invalid_argument("variable map arities must be in 1..16");
  }
  if (static_cast<int>(image.size()) != source_arity) {
    throw std::invalid_argument("variable map image size must equal source arity");
  }
  for (int v : image) {
    if (v < 1 || v > target_arity) {
      throw std::invalid_argument("variable map image entry out of range");
    }
  }
}

VariableMap compose(const VariableMap& outer, const VariableMap& inner) {
  inner.check();
  outer.check();
  if (inner.target_arity != outer.source_arity) {
    throw std::invalid_argument("variable maps do not compose");
  }
  VariableMap out{inner.source_arity, outer.target_arity, {}};
  out.image.reserve(inner.image.size());
  for (int v : inner.image) out.image.push_back(outer.image[v - 1]);
  return out;
}

MonotonicityError::MonotonicityError(Subset lower, Subset upper)
    : std::invalid_argument("restriction is not nondecreasing at " +
                            subset_to_string(lower) + " vs " +
                            subset_to_string(upper)),
      lower_(lower),
      upper_(upper) {}

DnfPolynomial::DnfPolynomial(LatticePtr lattice, int arity,
                             std::vector<ElemId> coefficients, bool canonical)
    : lattice_(std::move(lattice)),
      arity_(arity),
      coefficients_(std::move(coefficients)),
      canonical_(canonical) {
  if (!lattice_) throw std::invalid_argument("polynomial needs a lattice");
  if (arity_ < 1 || arity_ > kMaxArity) {
    throw std::invalid_argument("arity must be in 1..16");
  }
  if (!lattice_->passes_validation()) {
    throw std::invalid_argument(
        "polynomials require a lattice that passes validation; " +
        lattice_->describe() + " does not");
  }
  if (coefficients_.size() != (std::size_t{1} << arity_)) {
    throw std::invalid_argument("coefficient map must have one entry per subset");
  }
  for (ElemId c : coefficients_) lattice_->check_element(c);
  if (canonical_) {
    if (auto bad = find_monotonicity_violation(coefficients_, arity_, *lattice_)) {
      throw std::logic_error("canonical flag on a non-monotone coefficient map at " +
                             subset_to_string(bad->first));
    }
  }
}

DnfPolynomial DnfPolynomial::constant(LatticePtr lattice, int arity,
                                      ElemId value) {
  lattice->check_element(value);
  std::vector<ElemId> coeffs(std::size_t{1} << arity, value);
  return DnfPolynomial(std::move(lattice), arity, std::move(coeffs), true);
}

DnfPolynomial DnfPolynomial::projection(LatticePtr lattice, int arity, int var) {
  if (var < 1 || var > arity) {
    throw std::invalid_argument("projection variable out of range");
  }
  const ElemId bot = lattice->bottom();
  const ElemId top = lattice->top();
  std::vector<ElemId> coeffs(std::size_t{1} << arity, bot);
  const Subset bit = subset_bit(var);
  for (Subset set = 0; set < coeffs.size(); ++set) {
    if (set & bit) coeffs[set] = top;
  }
  return DnfPolynomial(std::move(lattice), arity, std::move(coeffs), true);
}

ElemId DnfPolynomial::eval(std::span<const ElemId> point) const {
  if (static_cast<int>(point.size()) != arity_) {
    throw std::invalid_argument("evaluation point has wrong arity");
  }
  for (ElemId x : point) lattice_->check_element(x);
  const ElemId bot = lattice_->bottom();
  ElemId acc = bot;
  const Subset count = Subset{1} << arity_;
  for (Subset set = 0; set < count; ++set) {
    ElemId term = coefficients_[set];
    if (term == bot) continue;
    for (Subset rest = set; rest != 0 && term != bot; rest &= rest - 1) {
      term = lattice_->meet(term, point[std::countr_zero(rest)]);
    }
    acc = lattice_->join(acc, term);
  }
  return acc;
}

DnfPolynomial DnfPolynomial::canonicalized() const {
  if (canonical_) return *this;
  // Subset-join closure: out[I] = join of a_J over J below I, which equals
  // eval at the characteristic vector of I.
  std::vector<ElemId> out = coefficients_;
  const Subset count = Subset{1} << arity_;
  for (int bitpos = 0; bitpos < arity_; ++bitpos) {
    const Subset bit = Subset{1} << bitpos;
    for (Subset set = 0; set < count; ++set) {
      if (set & bit) out[set] = lattice_->join(out[set], out[set ^ bit]);
    }
  }
  return DnfPolynomial(lattice_, arity_, std::move(out), true);
}

std::vector<ElemId> characteristic_vector(Subset set, int arity,
                                          const BoundedLattice& lattice) {
  if (arity < 1 || arity > kMaxArity) {
    throw std::invalid_argument("arity must be in 1..16");
  }
  if (set >= (Subset{1} << arity)) {
    throw std::invalid_argument("subset has bits beyond the arity");
  }
  std::vector<ElemId> point(arity, lattice.bottom());
  for (int var = 1; var <= arity; ++var) {
    if (set & subset_bit(var)) point[var - 1] = lattice.top();
  }
  return point;
}

std::optional<std::pair<Subset, Subset>> find_monotonicity_violation(
    std::span<const ElemId> g, int arity, const BoundedLattice& lattice) {
  const Subset count = Subset{1} << arity;
  if (g.size() != count) {
    throw std::invalid_argument("restriction must have one value per subset");
  }
  for (Subset set = 0; set < count; ++set) {
    for (int var = 1; var <= arity; ++var) {
      const Subset bit = subset_bit(var);
      if (set & bit) continue;
      if (!lattice.leq(g[set], g[set | bit])) return std::pair{set, set | bit};
    }
  }
  return std::nullopt;
}

DnfPolynomial from_boolean_restriction(LatticePtr lattice, int arity,
                                       std::vector<ElemId> g) {
  if (arity < 1 || arity > kMaxArity) {
    throw std::invalid_argument("arity must be in 1..16");
  }
  for (ElemId v : g) lattice->check_element(v);
  if (auto bad = find_monotonicity_violation(g, arity, *lattice)) {
    throw MonotonicityError(bad->first, bad->second);
  }
  return DnfPolynomial(std::move(lattice), arity, std::move(g), true);
}

bool essential_variable(const DnfPolynomial& p, int var) {
  if (var < 1 || var > p.arity()) {
    throw std::invalid_argument("variable index out of range");
  }
  const DnfPolynomial canon = p.canonicalized();
  const auto& c = canon.coefficients();
  const BoundedLattice& lat = p.lattice();
  const Subset bit = subset_bit(var);
  const Subset count = Subset{1} << p.arity();
  for (Subset set = 0; set < count; ++set) {
    if (set & bit) continue;
    if (strictly_less(lat, c[set], c[set | bit])) return true;
  }
  return false;
}

std::vector<Term> essential_terms(const DnfPolynomial& p) {
  const DnfPolynomial canon = p.canonicalized();
  const auto& c = canon.coefficients();
  const BoundedLattice& lat = p.lattice();
  std::vector<Term> terms;
  const Subset count = Subset{1} << p.arity();
  for (Subset set = 1; set < count; ++set) {
    // On a canonical map the join over all proper subsets equals the join
    // over the maximal ones.
    ElemId below = lat.bottom();
    for (Subset rest = set; rest != 0; rest &= rest - 1) {
      const Subset bit = rest & (~rest + 1);
      below = lat.join(below, c[set ^ bit]);
    }
    if (strictly_less(lat, below, c[set])) {
      terms.push_back({set, c[set], std::popcount(set)});
    }
  }
  return terms;
}

DnfPolynomial simple_minor(const DnfPolynomial& p, const VariableMap& sigma) {
  sigma.check();
  if (sigma.source_arity != p.arity()) {
    throw std::invalid_argument("variable map source arity must match the polynomial");
  }
  const DnfPolynomial canon = p.canonicalized();
  const auto& c = canon.coefficients();
  const Subset count = Subset{1} << sigma.target_arity;
  std::vector<ElemId> out(count);
  for (Subset set = 0; set < count; ++set) {
    Subset pullback = 0;
    for (int t = 1; t <= sigma.source_arity; ++t) {
      if (set & subset_bit(sigma.image[t - 1])) pullback |= subset_bit(t);
    }
    out[set] = c[pullback];
  }
  return DnfPolynomial(p.lattice_ptr(), sigma.target_arity, std::move(out), true);
}

DnfPolynomial identify_variables(const DnfPolynomial& p, int i, int j) {
  const int n = p.arity();
  if (i < 1 || i > n || j < 1 || j > n) {
    throw std::invalid_argument("variable index out of range");
  }
  if (i == j) throw std::invalid_argument("identify needs two distinct variables");
  VariableMap map = VariableMap::identity(n);
  map.image[i - 1] = j;
  return simple_minor(p, map);
}

DnfPolynomial substitute_constant(const DnfPolynomial& p, int position,
                                  ElemId c) {
  const int n = p.arity();
  if (n < 2) {
    throw std::invalid_argument("constant substitution needs arity at least 2");
  }
  if (position < 1 || position > n) {
    throw std::invalid_argument("variable index out of range");
  }
  p.lattice().check_element(c);
  const BoundedLattice& lat = p.lattice();
  const Subset bit = subset_bit(position);
  const Subset low_mask = bit - 1;
  // Fold the pinned variable into the coefficients: the term for T picks up
  // the T+{position} term with its meet against c.
  std::vector<ElemId> out(std::size_t{1} << (n - 1));
  for (Subset set = 0; set < out.size(); ++set) {
    const Subset expanded = (set & low_mask) | ((set & ~low_mask) << 1);
    out[set] = lat.join(p.coefficient(expanded),
                        lat.meet(p.coefficient(expanded | bit), c));
  }
  return DnfPolynomial(p.lattice_ptr(), n - 1, std::move(out)).canonicalized();
}

bool equal(const DnfPolynomial& p, const DnfPolynomial& q) {
  if (p.arity() != q.arity()) {
    throw std::invalid_argument("polynomials have different arities");
  }
  if (!p.lattice().same_structure(q.lattice())) {
    throw std::invalid_argument("polynomials live over different lattices");
  }
  return p.canonicalized().coefficients() == q.canonicalized().coefficients();
}

}  // namespace latpoly
