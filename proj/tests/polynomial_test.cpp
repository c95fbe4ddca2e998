#include "latpoly/polynomial.hpp"

#include <doctest.h>

#include <bit>
#include <cstdint>
#include <vector>

using namespace latpoly;

namespace {

DnfPolynomial make(const LatticePtr& lat, int arity, std::vector<ElemId> coeffs) {
  return DnfPolynomial(lat, arity, std::move(coeffs));
}

// Coefficient vectors are indexed by subset mask: {a_{}, a_1, a_2, a_12, ...}.
DnfPolynomial and2(const LatticePtr& lat) {
  return make(lat, 2, {0, 0, 0, lat->top()});
}

DnfPolynomial or2(const LatticePtr& lat) {
  return make(lat, 2, {0, lat->top(), lat->top(), lat->top()});
}

DnfPolynomial median3(const LatticePtr& lat) {
  const ElemId t = lat->top();
  return make(lat, 3, {0, 0, 0, t, 0, t, t, t});
}

// Every point of L^n in odometer order, first coordinate most significant.
template <typename Fn>
void for_each_point(const BoundedLattice& lat, int arity, Fn&& fn) {
  std::vector<ElemId> point(arity, 0);
  while (true) {
    fn(point);
    int pos = arity - 1;
    while (pos >= 0 && point[pos] == lat.size() - 1) point[pos--] = 0;
    if (pos < 0) return;
    ++point[pos];
  }
}

// Every monotone coefficient map over the lattice, by direct filtering of
// all |L|^(2^n) raw maps. Deliberately unrelated to the library's pruning
// enumeration.
template <typename Fn>
void for_each_canonical(const LatticePtr& lat, int arity, Fn&& fn) {
  const std::size_t slots = std::size_t{1} << arity;
  std::vector<ElemId> raw(slots, 0);
  while (true) {
    if (!find_monotonicity_violation(raw, arity, *lat)) {
      fn(DnfPolynomial(lat, arity, raw, true));
    }
    std::size_t pos = slots - 1;
    while (pos < slots && raw[pos] == lat->size() - 1) raw[pos--] = 0;
    if (pos >= slots) return;
    ++raw[pos];
  }
}

}  // namespace

TEST_CASE("eval joins coefficient terms with the empty meet as top") {
  const LatticePtr c3 = BoundedLattice::chain(3);
  const DnfPolynomial conj = make(c3, 2, {0, 0, 0, 2});
  CHECK(conj.eval(std::vector<ElemId>{2, 1}) == 1);
  CHECK(conj.eval(std::vector<ElemId>{2, 2}) == 2);

  const DnfPolynomial constant_one = make(c3, 2, {1, 0, 0, 0});
  for_each_point(*c3, 2, [&](const std::vector<ElemId>& x) {
    CHECK(constant_one.eval(x) == 1);
  });

  const LatticePtr c2 = BoundedLattice::chain(2);
  CHECK(median3(c2).eval(std::vector<ElemId>{1, 1, 0}) == 1);

  CHECK_THROWS_AS((void)conj.eval(std::vector<ElemId>{1}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)conj.eval(std::vector<ElemId>{1, 3}),
                  std::out_of_range);
}

TEST_CASE("constructor rejects malformed polynomials") {
  const LatticePtr c2 = BoundedLattice::chain(2);
  CHECK_THROWS_AS(make(c2, 2, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make(c2, 2, {0, 0, 0, 2}), std::out_of_range);
  CHECK_THROWS_AS(make(c2, 0, {0}), std::invalid_argument);
  // Canonical flag is verified, not trusted: a_1=1 > a_12=0 is not monotone.
  CHECK_THROWS_AS(DnfPolynomial(c2, 2, {0, 1, 0, 0}, true), std::logic_error);

  const std::vector<std::vector<ElemId>> meet = {
      {0, 0, 0, 0, 0},
      {0, 1, 0, 0, 1},
      {0, 0, 2, 0, 2},
      {0, 0, 0, 3, 3},
      {0, 1, 2, 3, 4},
  };
  const std::vector<std::vector<ElemId>> join = {
      {0, 1, 2, 3, 4},
      {1, 1, 4, 4, 4},
      {2, 4, 2, 4, 4},
      {3, 4, 4, 3, 4},
      {4, 4, 4, 4, 4},
  };
  const LatticePtr m3 = BoundedLattice::from_tables(5, meet, join);
  REQUIRE_FALSE(m3->passes_validation());
  CHECK_THROWS_AS(DnfPolynomial::constant(m3, 2, 0), std::invalid_argument);
}

TEST_CASE("characteristic vectors place top on the subset") {
  const LatticePtr c2 = BoundedLattice::chain(2);
  CHECK(characteristic_vector(0b101, 3, *c2) == std::vector<ElemId>{1, 0, 1});
  CHECK(characteristic_vector(0, 2, *c2) == std::vector<ElemId>{0, 0});
  CHECK(characteristic_vector(0b111, 3, *c2) == std::vector<ElemId>{1, 1, 1});
  const LatticePtr p22 = BoundedLattice::product({2, 2});
  CHECK(characteristic_vector(0b10, 2, *p22) == std::vector<ElemId>{0, 3});
  CHECK_THROWS_AS((void)characteristic_vector(0b100, 2, *c2),
                  std::invalid_argument);
}

TEST_CASE("canonicalization is the subset-join closure") {
  const LatticePtr c3 = BoundedLattice::chain(3);
  const DnfPolynomial p = make(c3, 1, {1, 0}).canonicalized();
  CHECK(p.coefficient(0b1) == 1);

  const LatticePtr c2 = BoundedLattice::chain(2);
  const DnfPolynomial q =
      make(c2, 3, {0, 1, 0, 0, 0, 0, 1, 0}).canonicalized();  // x1 or (x2 and x3)
  CHECK(q.coefficient(0b011) == 1);
  CHECK(q.coefficient(0b101) == 1);
  CHECK(q.coefficient(0b111) == 1);
  CHECK(q.coefficient(0b010) == 0);
  CHECK(q.coefficient(0b100) == 0);
  CHECK(q.is_canonical());

  const DnfPolynomial again = q.canonicalized();
  CHECK(again.coefficients() == q.coefficients());
}

TEST_CASE("canonical coefficients are the characteristic-vector restriction") {
  for (const LatticePtr& lat :
       {BoundedLattice::chain(2), BoundedLattice::chain(3)}) {
    for_each_canonical(lat, 2, [&](const DnfPolynomial& p) {
      for (Subset set = 0; set < 4; ++set) {
        CHECK(p.eval(characteristic_vector(set, 2, *lat)) == p.coefficient(set));
      }
    });
  }
}

TEST_CASE("canonicalization preserves the function on the whole domain") {
  const LatticePtr c3 = BoundedLattice::chain(3);
  // All raw coefficient maps for arity 2, canonical or not.
  std::vector<ElemId> raw(4, 0);
  while (true) {
    const DnfPolynomial p = make(c3, 2, raw);
    const DnfPolynomial canon = p.canonicalized();
    for_each_point(*c3, 2, [&](const std::vector<ElemId>& x) {
      CHECK(p.eval(x) == canon.eval(x));
    });
    std::size_t pos = 3;
    while (pos < 4 && raw[pos] == 2) raw[pos--] = 0;
    if (pos >= 4) break;
    ++raw[pos];
  }
}

TEST_CASE("monotone restrictions extend uniquely, others are rejected") {
  const LatticePtr c2 = BoundedLattice::chain(2);
  const DnfPolynomial ident = from_boolean_restriction(c2, 1, {0, 1});
  CHECK(equal(ident, DnfPolynomial::projection(c2, 1, 1)));

  try {
    (void)from_boolean_restriction(c2, 2, {0, 1, 0, 0});
    FAIL("expected a monotonicity rejection");
  } catch (const MonotonicityError& e) {
    CHECK(e.lower() == 0b01);
    CHECK(e.upper() == 0b11);
  }

  const LatticePtr c3 = BoundedLattice::chain(3);
  const DnfPolynomial p = from_boolean_restriction(c3, 2, {0, 1, 1, 2});
  CHECK(p.is_canonical());
  CHECK(p.coefficients() == std::vector<ElemId>{0, 1, 1, 2});
  CHECK(p.eval(std::vector<ElemId>{2, 2}) == 2);
}

TEST_CASE("essential variables by coefficient jumps match the examples") {
  const LatticePtr c2 = BoundedLattice::chain(2);
  const DnfPolynomial p = make(c2, 2, {0, 1, 0, 0});  // x1 or (0 and x2)
  CHECK(essential_variable(p, 1));
  CHECK_FALSE(essential_variable(p, 2));

  const DnfPolynomial med = median3(c2);
  for (int var = 1; var <= 3; ++var) CHECK(essential_variable(med, var));

  const DnfPolynomial c = DnfPolynomial::constant(c2, 3, 1);
  for (int var = 1; var <= 3; ++var) CHECK_FALSE(essential_variable(c, var));

  CHECK_THROWS_AS((void)essential_variable(p, 3), std::invalid_argument);
}

TEST_CASE("essential_variable equals semantic perturbation essentiality") {
  for (const LatticePtr& lat :
       {BoundedLattice::chain(2), BoundedLattice::chain(3)}) {
    for_each_canonical(lat, 2, [&](const DnfPolynomial& p) {
      for (int var = 1; var <= 2; ++var) {
        bool semantic = false;
        for_each_point(*lat, 2, [&](const std::vector<ElemId>& x) {
          std::vector<ElemId> y = x;
          for (ElemId v = 0; v < lat->size(); ++v) {
            y[var - 1] = v;
            if (p.eval(y) != p.eval(x)) semantic = true;
          }
        });
        CHECK(essential_variable(p, var) == semantic);
      }
    });
  }
}

TEST_CASE("essential terms sit strictly above their proper subsets") {
  const LatticePtr c2 = BoundedLattice::chain(2);

  const DnfPolynomial q = make(c2, 3, {0, 1, 0, 0, 0, 0, 1, 0});
  const std::vector<Term> q_terms = essential_terms(q);
  REQUIRE(q_terms.size() == 2);
  CHECK(q_terms[0] == Term{0b001, 1, 1});
  CHECK(q_terms[1] == Term{0b110, 1, 2});

  const std::vector<Term> med_terms = essential_terms(median3(c2));
  REQUIRE(med_terms.size() == 3);
  CHECK(med_terms[0] == Term{0b011, 1, 2});
  CHECK(med_terms[1] == Term{0b101, 1, 2});
  CHECK(med_terms[2] == Term{0b110, 1, 2});

  CHECK(essential_terms(DnfPolynomial::constant(c2, 2, 1)).empty());
}

TEST_CASE("deleting a term then recanonicalizing preserves the function "
          "exactly for inessential terms") {
  for (const LatticePtr& lat :
       {BoundedLattice::chain(2), BoundedLattice::chain(3)}) {
    for_each_canonical(lat, 2, [&](const DnfPolynomial& p) {
      const std::vector<Term> essential = essential_terms(p);
      for (Subset set = 1; set < 4; ++set) {
        bool is_essential = false;
        for (const Term& t : essential) is_essential |= (t.subset == set);

        std::vector<ElemId> dropped = p.coefficients();
        dropped[set] = lat->bottom();
        const DnfPolynomial q = make(lat, 2, std::move(dropped));
        CHECK(equal(p, q) == !is_essential);
      }
    });
  }
}

TEST_CASE("evaluation is monotone in every coordinate") {
  const LatticePtr c3 = BoundedLattice::chain(3);
  for_each_canonical(c3, 2, [&](const DnfPolynomial& p) {
    for_each_point(*c3, 2, [&](const std::vector<ElemId>& x) {
      for_each_point(*c3, 2, [&](const std::vector<ElemId>& y) {
        bool below = true;
        for (int i = 0; i < 2; ++i) below &= c3->leq(x[i], y[i]);
        if (below) CHECK(c3->leq(p.eval(x), p.eval(y)));
      });
    });
  });
}

TEST_CASE("simple minors substitute variables extensionally") {
  const LatticePtr c2 = BoundedLattice::chain(2);

  const DnfPolynomial collapsed =
      simple_minor(and2(c2), VariableMap{2, 1, {1, 1}});
  CHECK(equal(collapsed, DnfPolynomial::projection(c2, 1, 1)));

  const DnfPolynomial widened =
      simple_minor(DnfPolynomial::projection(c2, 1, 1), VariableMap{1, 3, {2}});
  CHECK(equal(widened, DnfPolynomial::projection(c2, 3, 2)));
  CHECK(essential_variable(widened, 2));
  CHECK_FALSE(essential_variable(widened, 1));
  CHECK_FALSE(essential_variable(widened, 3));

  const DnfPolynomial folded =
      simple_minor(median3(c2), VariableMap{3, 2, {1, 1, 2}});
  CHECK(equal(folded, DnfPolynomial::projection(c2, 2, 1)));

  CHECK_THROWS_AS((void)simple_minor(and2(c2), VariableMap{2, 1, {1, 2}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)simple_minor(and2(c2), VariableMap{3, 3, {1, 2, 3}}),
                  std::invalid_argument);
}

TEST_CASE("minor of a minor is the minor of the composed map") {
  const LatticePtr c3 = BoundedLattice::chain(3);
  const std::vector<VariableMap> sigmas = {
      {2, 3, {3, 1}}, {2, 2, {2, 2}}, {2, 4, {2, 4}}};
  const std::vector<VariableMap> taus = {
      {3, 2, {1, 1, 2}}, {2, 1, {1, 1}}, {4, 2, {2, 1, 1, 2}}};
  for_each_canonical(c3, 2, [&](const DnfPolynomial& p) {
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
      const VariableMap& sigma = sigmas[i];
      const VariableMap& tau = taus[i];
      const DnfPolynomial two_step = simple_minor(simple_minor(p, sigma), tau);
      const DnfPolynomial one_step = simple_minor(p, compose(tau, sigma));
      CHECK(equal(two_step, one_step));
    }
  });
}

TEST_CASE("identifying variables is the arity-preserving minor") {
  const LatticePtr c2 = BoundedLattice::chain(2);

  const DnfPolynomial a = identify_variables(or2(c2), 2, 1);
  CHECK(equal(a, DnfPolynomial::projection(c2, 2, 1)));
  CHECK_FALSE(essential_variable(a, 2));

  const DnfPolynomial and3 = make(c2, 3, {0, 0, 0, 0, 0, 0, 0, 1});
  const DnfPolynomial b = identify_variables(and3, 3, 1);
  CHECK(equal(b, make(c2, 3, {0, 0, 0, 1, 0, 0, 0, 0})));

  const DnfPolynomial c = identify_variables(median3(c2), 2, 1);
  CHECK(equal(c, DnfPolynomial::projection(c2, 3, 1)));

  CHECK_THROWS_AS((void)identify_variables(or2(c2), 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)identify_variables(or2(c2), 0, 1),
                  std::invalid_argument);
}

TEST_CASE("pinning a variable to a constant drops the arity") {
  const LatticePtr c2 = BoundedLattice::chain(2);

  CHECK(equal(substitute_constant(and2(c2), 2, 1),
              DnfPolynomial::projection(c2, 1, 1)));
  CHECK(equal(substitute_constant(and2(c2), 2, 0),
              DnfPolynomial::constant(c2, 1, 0)));
  CHECK(equal(substitute_constant(median3(c2), 3, 1), or2(c2)));
  CHECK(equal(substitute_constant(median3(c2), 3, 0), and2(c2)));

  CHECK_THROWS_AS(
      (void)substitute_constant(DnfPolynomial::projection(c2, 1, 1), 1, 0),
      std::invalid_argument);
  CHECK_THROWS_AS((void)substitute_constant(and2(c2), 3, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)substitute_constant(and2(c2), 1, 2),
                  std::out_of_range);

  // Pinning agrees with direct evaluation at every point and position.
  const LatticePtr c3 = BoundedLattice::chain(3);
  for_each_canonical(c3, 2, [&](const DnfPolynomial& p) {
    for (int position = 1; position <= 2; ++position) {
      for (ElemId c = 0; c < c3->size(); ++c) {
        const DnfPolynomial pinned = substitute_constant(p, position, c);
        for (ElemId x = 0; x < c3->size(); ++x) {
          std::vector<ElemId> full(2);
          full[position - 1] = c;
          full[2 - position] = x;
          CHECK(pinned.eval(std::vector<ElemId>{x}) == p.eval(full));
        }
      }
    }
  });
}

TEST_CASE("equality is extensional") {
  const LatticePtr c2 = BoundedLattice::chain(2);
  const DnfPolynomial raw = make(c2, 3, {0, 1, 0, 0, 0, 0, 1, 0});
  CHECK(equal(raw, raw.canonicalized()));
  CHECK_FALSE(equal(or2(c2), and2(c2)));

  const DnfPolynomial absorbed = make(c2, 2, {0, 1, 0, 1});  // x1 or (x1 and x2)
  CHECK(equal(absorbed, DnfPolynomial::projection(c2, 2, 1)));

  CHECK_THROWS_AS((void)equal(or2(c2), median3(c2)), std::invalid_argument);
  CHECK_THROWS_AS((void)equal(or2(c2), or2(BoundedLattice::chain(3))),
                  std::invalid_argument);
  CHECK(equal(or2(c2), or2(BoundedLattice::product({2}))));
}
