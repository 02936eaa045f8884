#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "profet/coefficients.hpp"
#include "profet/error.hpp"
#include "profet/int_matrix.hpp"
#include "profet/modular.hpp"

using namespace profet;

namespace {

bool unimodular(const IntMatrix& M) {
  auto d = determinant(M);
  return d == 1 || d == -1;
}

void check_snf(const IntMatrix& A) {
  auto s = smith_normal_form(A);
  CHECK(s.U * A * s.V == s.D);
  CHECK(s.D.is_diagonal());
  CHECK(unimodular(s.U));
  CHECK(unimodular(s.V));
  auto d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (i + 1 < d.size() && d[i] != 0) CHECK(mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t()));
    if (i + 1 < d.size() && d[i] == 0) CHECK(d[i + 1] == 0);
  }
}

std::int64_t brute_partitions(int n, int max_part) {
  if (n == 0) return 1;
  std::int64_t c = 0;
  for (int k = std::min(n, max_part); k >= 1; --k) c += brute_partitions(n - k, k);
  return c;
}

}  // namespace

TEST_CASE("finite abelian groups normalize to invariant factors") {
  CHECK(FinAb::from_cyclic({2, 3}) == FinAb::cyclic(6));
  CHECK(FinAb::from_cyclic({4, 2}).invariant_factors() == std::vector<std::int64_t>{2, 4});
  CHECK(FinAb::from_cyclic({1, 1}).is_trivial());
  CHECK(FinAb::cyclic(8).power(3).order() == 512);
  CHECK(FinAb::from_cyclic({12, 18}).invariant_factors() == std::vector<std::int64_t>{6, 36});
  CHECK_THROWS_AS(FinAb::from_invariant_factors({4, 6}), StructuralError);
  auto g = FinAb::from_cyclic({2, 4});
  CHECK(g.add({1, 3}, {1, 2}) == FinAb::Element{0, 1});
  CHECK(g.to_string() == "Z/2 + Z/4");
}

TEST_CASE("smith normal form examples") {
  SUBCASE("zero matrix") {
    IntMatrix z(3, 2);
    auto s = smith_normal_form(z);
    CHECK(s.D.is_zero());
    check_snf(z);
  }
  SUBCASE("2x2 example") {
    auto A = IntMatrix::from_rows({{2, 4}, {6, 8}});
    auto s = smith_normal_form(A);
    CHECK(s.D == IntMatrix::from_rows({{2, 0}, {0, 4}}));
    check_snf(A);
  }
  SUBCASE("identity") {
    auto I = IntMatrix::identity(4);
    CHECK(smith_normal_form(I).D == I);
  }
}

TEST_CASE("smith normal form on 200 random matrices") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> shape(1, 5), entry(-9, 9);
  for (int t = 0; t < 200; ++t) {
    IntMatrix A(shape(rng), shape(rng));
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = entry(rng);
    check_snf(A);
  }
}

TEST_CASE("cohomology of small complexes") {
  SUBCASE("zero complex") {
    std::vector<DenseMatrix> d{DenseMatrix(3, 2)};
    auto h = cohomology_of_complex(d, 5);
    CHECK(h[0] == FinAb::cyclic(5).power(2));
    CHECK(h[1] == FinAb::cyclic(5).power(3));
  }
  SUBCASE("Z/4 --x2--> Z/4") {
    DenseMatrix d(1, 1);
    d(0, 0) = 2;
    std::vector<DenseMatrix> ds{d};
    // frozen from the exhaustive oracle
    CHECK(oracle::brute_cohomology(ds, 0, 4) == FinAb::cyclic(2));
    CHECK(oracle::brute_cohomology(ds, 1, 4) == FinAb::cyclic(2));
    auto h = cohomology_of_complex(ds, 4);
    CHECK(h[0] == FinAb::cyclic(2));
    CHECK(h[1] == FinAb::cyclic(2));
    auto hz = cohomology_via_integer_snf({d.to_int_matrix()}, 4);
    CHECK(hz == h);
  }
  SUBCASE("invalid complex is rejected") {
    DenseMatrix a(1, 1), b(1, 1);
    a(0, 0) = 1;
    b(0, 0) = 1;
    CHECK_THROWS_AS(cohomology_of_complex(std::vector<DenseMatrix>{a, b}, 3), InvalidComplex);
    CHECK_THROWS_AS(cohomology_via_integer_snf({a.to_int_matrix(), b.to_int_matrix()}, 3),
                    InvalidComplex);
  }
}

TEST_CASE("cohomology agrees with exhaustive enumeration over Z/2 and Z/3") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> dimd(0, 3);
  int checked = 0;
  for (std::int64_t m : {2, 3}) {
    for (int t = 0; t < 60; ++t) {
      std::vector<std::size_t> dims{dimd(rng) + 1, dimd(rng), dimd(rng)};
      std::size_t total = dims[0] + dims[1] + dims[2];
      if (total > 8) continue;
      auto d = oracle::random_complex(dims, m, rng);
      auto h = cohomology_of_complex(d, m);
      for (std::size_t n = 0; n < dims.size(); ++n) CHECK(h[n] == oracle::brute_cohomology(d, n, m));
      // Euler characteristic
      long chi_c = 0, chi_h = 0;
      for (std::size_t n = 0; n < dims.size(); ++n) {
        long s = n % 2 ? -1 : 1;
        chi_c += s * static_cast<long>(dims[n]);
        chi_h += s * static_cast<long>(h[n].num_generators());
      }
      CHECK(chi_c == chi_h);
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("local elimination matches the integer SNF route on composite moduli") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::size_t> dimd(1, 5);
  for (std::int64_t m : {4, 6, 8, 9, 12, 27}) {
    for (int t = 0; t < 15; ++t) {
      std::vector<std::size_t> dims{dimd(rng), dimd(rng), dimd(rng), dimd(rng)};
      auto d = oracle::random_complex(dims, m, rng);
      std::vector<IntMatrix> di;
      for (auto& x : d) di.push_back(x.to_int_matrix());
      CHECK(cohomology_of_complex(d, m) == cohomology_via_integer_snf(di, m));
    }
  }
}

TEST_CASE("cohomology over Z/p^k matches enumeration including non-elementary groups") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::size_t> dimd(1, 3);
  for (std::int64_t m : {4, 8, 9}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<std::size_t> dims{dimd(rng), dimd(rng), 1};
      if (dims[0] + dims[1] > 4 && m > 4) continue;
      auto d = oracle::random_complex(dims, m, rng);
      auto h = cohomology_of_complex(d, m);
      for (std::size_t n = 0; n < dims.size(); ++n) CHECK(h[n] == oracle::brute_cohomology(d, n, m));
    }
  }
}

TEST_CASE("primary cohomology representatives and coordinates") {
  // C^0 = (Z/8)^2 --[[2,0],[0,4]]--> C^1 = (Z/8)^2 --0--> ...
  DenseMatrix d0(2, 2);
  d0(0, 0) = 2;
  d0(1, 1) = 4;
  PrimaryCohomology h1(&d0, nullptr, 2, 2, 3);
  CHECK(h1.group() == FinAb::from_cyclic({2, 4}));
  for (std::size_t i = 0; i < h1.orders().size(); ++i) {
    auto c = h1.coordinates(h1.representative(i));
    for (std::size_t j = 0; j < c.size(); ++j) CHECK(c[j] == (i == j ? 1 : 0));
  }
  // boundaries have zero coordinates
  auto b = d0.apply_mod(std::vector<std::int64_t>{3, 5}, 8);
  for (auto c : h1.coordinates(b)) CHECK(c == 0);
  PrimaryCohomology h0(nullptr, &d0, 2, 2, 3);
  CHECK(h0.group() == FinAb::from_cyclic({2, 4}));
  CHECK_THROWS_AS(h0.coordinates(std::vector<std::int64_t>{1, 0}), StructuralError);
}

TEST_CASE("homomorphisms between finite abelian groups") {
  AbHom h{{4}, {4}, {{2}}};
  CHECK(h.image() == FinAb::cyclic(2));
  CHECK(h.cokernel() == FinAb::cyclic(2));
  CHECK_FALSE(h.is_injective());
  AbHom red{{8}, {2}, {{1}}};
  CHECK(red.is_surjective());
  AbHom z{{4}, {2}, {{2}}};
  CHECK(z.is_zero());
  CHECK(h.after(h).is_zero());
}

TEST_CASE("mu_rank counts partitions") {
  CHECK(mu_rank(0) == 1);
  CHECK(mu_rank(-4) == 2);
  CHECK(mu_rank(-12) == 11);
  CHECK(mu_rank(-3) == 0);
  CHECK(mu_rank(2) == 0);
  for (int q = 0; q >= -40; q -= 2) CHECK(mu_rank(q) == brute_partitions(-q / 2, -q / 2));
}

TEST_CASE("graded coefficient groups") {
  CHECK(GradedCoefficients::mu(2, 3).group(-2) == FinAb::cyclic(8));
  CHECK(GradedCoefficients::mu(2, 3).group(-4) == FinAb::cyclic(8).power(2));
  auto k1 = GradedCoefficients::morava_k(3, 1);
  CHECK(k1.modulus() == 3);
  CHECK(k1.group(-4) == FinAb::cyclic(3));
  CHECK(k1.group(-2).is_trivial());
  CHECK(k1.group(4) == FinAb::cyclic(3));
  CHECK(GradedCoefficients::ku(5, 1).group(1).is_trivial());
  CHECK(GradedCoefficients::ku(5, 1).group(-6) == FinAb::cyclic(5));
  CHECK(GradedCoefficients::hz(2, 2).group(0) == FinAb::cyclic(4));
  CHECK(GradedCoefficients::hz(2, 2).group(-2).is_trivial());
  CHECK(GradedCoefficients::parse("K(2)", 2, 1).period() == 6);
  CHECK_THROWS_AS(GradedCoefficients::parse("XYZ", 2, 1), InputError);
  CHECK_THROWS_AS(GradedCoefficients::mu(4, 1), InputError);
}
