#include <doctest.h>

#include <random>
#include <set>

#include "asl/error.hpp"
#include "asl/polyring.hpp"

using namespace asl;

namespace {

bool has_root(const Poly& u) {
  for (Residue a = 0; a < u.field().p(); ++a)
    if (u.eval(a) == 0) return true;
  return false;
}

Poly random_monic(std::mt19937_64& rng, PrimeField F, int degree) {
  std::vector<Residue> c(degree + 1);
  for (int i = 0; i < degree; ++i) c[i] = rng() % F.p();
  c[degree] = 1;
  return Poly(F, c);
}

}  // namespace

TEST_CASE("ring operations") {
  const PrimeField F5(5), F7(7);
  CHECK(Poly(F5, {1, 1}) * Poly(F5, {2, 1}) == Poly(F5, {2, 3, 1}));
  CHECK(reduce_mod(Poly(F7, {0, 1, 0, 0, 0, 1}), Modulus(2)) == Poly::x(F7));
  CHECK(gcd(Poly(F7, {-1, 0, 1}), Poly(F7, {-1, 1})) == Poly(F7, {-1, 1}));
  CHECK(gcd(Poly(F7, {-3, 0, 3}), Poly(F7, {-2, 2})) == Poly(F7, {-1, 1}));

  const Poly a(F7, {3, 1, 4, 1, 5}), b(F7, {2, 6, 1});
  const auto [q, r] = divrem(a, b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
  CHECK_THROWS_AS(divrem(a, Poly(F7)), PreconditionError);
  CHECK(derivative(Poly(F7, {1, 2, 3})) == Poly(F7, {2, 6}));
}

TEST_CASE("coefficient text format") {
  const PrimeField F7(7);
  CHECK(parse_poly("0,3,1", F7) == Poly(F7, {0, 3, 1}));
  CHECK(parse_poly("0,3,1", F7).to_string() == "0,3,1");
  CHECK(parse_poly("1,-1", F7) == Poly(F7, {1, 6}));
  CHECK(parse_poly("0", F7).is_zero());
  CHECK(parse_poly("2,0,0", F7).degree() == 0);
  CHECK_THROWS_AS(parse_poly("1,,2", F7), PreconditionError);
  CHECK_THROWS_AS(parse_poly("x+1", F7), PreconditionError);
  CHECK_THROWS_AS(parse_poly("", F7), PreconditionError);
}

TEST_CASE("primes_of_degree") {
  const PrimeField F5(5), F7(7);
  const auto& linear = primes_of_degree(1, F7);
  REQUIRE(linear.size() == 7);
  for (Residue c = 0; c < 7; ++c) CHECK(linear[c] == Poly(F7, {c, 1}));

  // Degree <= 3: irreducible iff no root in F_p.
  std::size_t quadratics = 0;
  for_each_monic(F5, 2, [&](const Poly& u) { quadratics += !has_root(u); });
  CHECK(quadratics == 10);
  CHECK(primes_of_degree(2, F5).size() == 10);

  std::vector<Poly> cubics;
  for_each_monic(F7, 3, [&](const Poly& u) {
    if (!has_root(u)) cubics.push_back(u);
  });
  CHECK(cubics.size() == 112);
  CHECK(primes_of_degree(3, F7) == cubics);

  const auto& quartics = primes_of_degree(4, F5);
  for (std::size_t i = 1; i < quartics.size(); ++i) CHECK(lex_less(quartics[i - 1], quartics[i]));
}

TEST_CASE("point counts by minimal polynomial") {
  for (std::uint32_t p : {5u, 7u}) {
    const PrimeField F(p);
    std::uint64_t pr = 1;
    for (int r = 1; r <= 5; ++r) {
      pr *= p;
      std::uint64_t total = 0;
      for (int m = 1; m <= r; ++m)
        if (r % m == 0) total += m * primes_of_degree(m, F).size();
      CHECK(total == pr);
    }
  }
}

TEST_CASE("von Mangoldt") {
  const PrimeField F5(5), F7(7);
  CHECK(von_mangoldt(Poly(F7, {0, 0, 1})) == 1);
  CHECK(von_mangoldt(Poly(F5, {0, 1, 1})) == 0);
  for (const auto& P : primes_of_degree(2, F5)) {
    CHECK(von_mangoldt(P) == 2);
    CHECK(von_mangoldt(P * P * P) == 2);
  }
  for (int deg = 1; deg <= 4; ++deg)
    for_each_monic(F5, deg, [&](const Poly& u) { CHECK(von_mangoldt(u) <= deg); });
  CHECK_THROWS_AS(von_mangoldt(Poly::constant(F7, 3)), PreconditionError);
  CHECK_THROWS_AS(von_mangoldt(Poly(F7, {1, 2})), PreconditionError);
}

TEST_CASE("factor") {
  const PrimeField F5(5), F7(7);
  auto fac = factor(Poly(F5, {2, 3, 1}));
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.factors[0].first == Poly(F5, {1, 1}));
  CHECK(fac.factors[1].first == Poly(F5, {2, 1}));

  fac = factor(Poly(F7, {0, 0, 1}));
  CHECK(fac.scalar == 1);
  REQUIRE(fac.factors.size() == 1);
  CHECK(fac.factors[0].first == Poly::x(F7));
  CHECK(fac.factors[0].second == 2);

  fac = factor(Poly(F7, {6, 0, 3}));
  CHECK(fac.scalar == 3);
  CHECK(fac.product(F7) == Poly(F7, {6, 0, 3}));

  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const Poly u = random_monic(rng, F7, 6);
    CHECK(factor(u).product(F7) == u);
  }
  CHECK_THROWS_AS(factor(Poly(F7)), PreconditionError);
}

TEST_CASE("factor reconstructs every monic polynomial of degree <= 4 over F_5") {
  const PrimeField F5(5);
  for (int deg = 1; deg <= 4; ++deg) {
    for_each_monic(F5, deg, [&](const Poly& u) {
      const auto fac = factor(u);
      CHECK(fac.product(F5) == u);
      std::set<std::string> distinct;
      for (const auto& [P, k] : fac.factors) {
        CHECK(is_irreducible(P));
        CHECK(P.is_monic());
        CHECK(k >= 1);
        distinct.insert(P.to_string());
      }
      CHECK(distinct.size() == fac.factors.size());
    });
  }
}

TEST_CASE("modulus") {
  CHECK_THROWS_AS(Modulus(1), PreconditionError);
  const PrimeField F7(7);
  CHECK(Modulus(4).poly(F7) == Poly::monomial(F7, 5));
  CHECK(reduce_mod(Poly(F7, {1, 2, 3}), Modulus(4)) == Poly(F7, {1, 2, 3}));
}
