#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "profet/cochain.hpp"

using namespace profet;

namespace {

// Nerve of Z/m: k-simplices are k-tuples, inner faces add neighbours.
FinSimpSet nerve(std::int64_t m, int D) {
  using Key = std::vector<std::int64_t>;
  std::vector<std::vector<Key>> levels(D + 1);
  for (int k = 0; k <= D; ++k) {
    Key t(k, 0);
    while (true) {
      levels[k].push_back(t);
      int i = k - 1;
      while (i >= 0 && t[i] == m - 1) t[i--] = 0;
      if (i < 0) break;
      ++t[i];
    }
  }
  std::function<Key(int, int, const Key&)> face = [m](int k, int i, const Key& t) {
    Key r;
    for (int a = 0; a < k; ++a) {
      if (i == 0 && a == 0) continue;
      if (i == k && a == k - 1) continue;
      if (i > 0 && i < k && a == i) continue;
      r.push_back(i > 0 && i < k && a == i - 1 ? (t[a] + t[a + 1]) % m : t[a]);
    }
    return r;
  };
  std::function<Key(int, int, const Key&)> degen = [](int, int i, const Key& t) {
    Key r = t;
    r.insert(r.begin() + i, 0);
    return r;
  };
  return build_from_keys<Key>(D, levels, face, degen, Key{});
}

Tower nerve_tower(std::int64_t ell, int stages, int D) {
  Tower T;
  for (int t = 1; t <= stages; ++t) T.stages.push_back(nerve(ipow(ell, t), D));
  for (int t = 0; t + 1 < stages; ++t) {
    // reduction Z/l^{t+2} -> Z/l^{t+1}, coordinatewise; tuples are little-endian digits in base m
    const auto& src = T.stages[t + 1];
    std::int64_t ms = ipow(ell, t + 2), mt = ipow(ell, t + 1);
    std::vector<Table> maps(D + 1);
    for (int k = 0; k <= D; ++k) {
      maps[k].resize(src.size(k));
      for (std::size_t x = 0; x < src.size(k); ++x) {
        // level order of nerve(): last coordinate varies slowest
        std::int64_t rest = static_cast<std::int64_t>(x), idx = 0, place = 1;
        std::vector<std::int64_t> digits(k);
        for (int a = k - 1; a >= 0; --a) {
          digits[a] = rest % ms;
          rest /= ms;
        }
        for (int a = k - 1; a >= 0; --a) {
          idx += (digits[a] % mt) * place;
          place *= mt;
        }
        maps[k][x] = static_cast<Simplex>(idx);
      }
    }
    T.bonds.emplace_back(src, T.stages[t], maps);
  }
  return T;
}

std::size_t rank_mod(const DenseMatrix& d, std::int64_t p) {
  std::set<oracle::Vec> im;
  oracle::for_each_vector(d.cols, p, [&](const oracle::Vec& v) { im.insert(oracle::apply(d, v, p)); });
  std::size_t r = 0;
  while (static_cast<std::size_t>(ipow(p, static_cast<int>(r))) < im.size()) ++r;
  return r;
}

bool same_hom(const AbHom& a, const AbHom& b) {
  if (a.source != b.source || a.target != b.target) return false;
  for (std::size_t i = 0; i < a.target.size(); ++i)
    for (std::size_t j = 0; j < a.source.size(); ++j)
      if ((a.matrix[i][j] - b.matrix[i][j]) % a.target[i] != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("cochain complexes") {
  SUBCASE("point") {
    auto c = build_complex(point(4), FinAb::cyclic(5));
    for (std::size_t n = 0; n < c.deltas.size(); ++n) CHECK(c.deltas[n](0, 0) == (n % 2 ? 1 : 0));
    auto h = cohomology(point(4), FinAb::cyclic(5));
    CHECK(h[0] == FinAb::cyclic(5));
    for (std::size_t n = 1; n < h.groups.size(); ++n) CHECK(h[n].is_trivial());
  }
  SUBCASE("circle over Z/3") {
    // one-vertex circle: both ends of the loop agree, so delta^0 vanishes
    auto s1 = sphere(1, 2);
    CHECK(rank_mod(build_complex(s1, FinAb::cyclic(3)).deltas[0], 3) == 0);
    // two-vertex circle: delta^0 is a 2x2 matrix of rank 1
    std::vector<Cell> cells{{0, {}}, {0, {}}, {1, {{1, {0}}, {0, {0}}}}, {1, {{1, {0}}, {0, {0}}}}};
    auto c2 = from_cells(2, cells, 0);
    auto d0 = build_complex(c2, FinAb::cyclic(3)).deltas[0];
    CHECK(c2.nondegenerate_census()[1] == 2);
    CHECK(rank_mod(d0, 3) == 1);
    CHECK(cohomology(c2, FinAb::cyclic(3)).groups == cohomology(s1, FinAb::cyclic(3)).groups);
  }
  SUBCASE("delta squared vanishes") {
    auto c = build_complex(boundary_simplex(2, 4), FinAb::cyclic(4));
    for (std::size_t n = 0; n + 1 < c.deltas.size(); ++n) CHECK(c.deltas[n + 1].multiply_mod(c.deltas[n], 4).is_zero_mod(4));
    CHECK(c.dim(2) == boundary_simplex(2, 4).size(2));
    auto big = build_complex(boundary_simplex(2, 3), FinAb::from_cyclic({2, 4}));
    CHECK(big.dim(1) == 2 * boundary_simplex(2, 3).size(1));
    CHECK((big.delta(1) * big.delta(0)).is_zero());
  }
}

TEST_CASE("cohomology of basic spaces") {
  for (std::int64_t ell : {2, 3, 5}) {
    auto M = FinAb::cyclic(ell);
    auto h2 = cohomology(sphere(2, 4), M);
    CHECK(h2.groups == std::vector<FinAb>{M, {}, M, {}});
    auto h1 = cohomology(sphere(1, 3), M);
    CHECK(h1.groups == std::vector<FinAb>{M, M, {}});
    auto s1s1 = cohomology(smash(sphere(1, 4), sphere(1, 4)), M);
    CHECK(s1s1.groups == h2.groups);
  }
  auto d3 = cohomology(standard_simplex(3, 4), FinAb::cyclic(9));
  CHECK(d3.groups == std::vector<FinAb>{FinAb::cyclic(9), {}, {}, {}});
  auto red = cohomology(sphere(2, 4), FinAb::cyclic(3), true);
  CHECK(red[0].is_trivial());
  CHECK(red[2] == FinAb::cyclic(3));
  CHECK_THROWS_AS(cohomology(standard_simplex(1, 2), FinAb::cyclic(3), true), StructuralError);
  auto moore = cohomology(moore_space(3, 3), FinAb::cyclic(9));
  CHECK(moore.groups == std::vector<FinAb>{FinAb::cyclic(9), FinAb::cyclic(3), FinAb::cyclic(3)});
}

TEST_CASE("cohomology of small spaces agrees with exhaustive enumeration") {
  for (auto& X : {sphere(1, 3), boundary_simplex(2, 2), moore_space(2, 3), sphere(2, 3)}) {
    for (std::int64_t m : {2, 3, 4}) {
      auto d = coboundaries(X);
      bool small = true;
      for (int n = 0; n < X.dim(); ++n) small = small && std::pow(double(m), double(X.size(n))) < 3e5;
      if (!small) continue;
      auto h = cohomology(X, FinAb::cyclic(m));
      for (int n = 0; n < X.dim(); ++n) CHECK(h[n] == oracle::brute_cohomology(d, n, m));
    }
  }
}

TEST_CASE("cohomology invariants") {
  SUBCASE("degree zero counts components") {
    auto X = disjoint_union(disjoint_union(sphere(1, 3), boundary_simplex(2, 3)), standard_simplex(2, 3));
    auto M = FinAb::from_cyclic({2, 6});
    CHECK(cohomology(X, M)[0] == M.power(pi0(X)));
  }
  SUBCASE("skeletal comparison") {
    for (auto& X : {standard_simplex(3, 4), smash(sphere(1, 4), sphere(1, 4)), moore_space(3, 4)}) {
      auto M = FinAb::cyclic(3);
      for (int q = 1; q <= 2; ++q) {
        auto sk = skeleton(X, q);
        auto maps = induced_map(sk.inclusion, sk.space, X, M);
        for (int p = 0; p < q; ++p) {
          CHECK(maps[p].is_injective());
          CHECK(maps[p].is_surjective());
        }
        CHECK(maps[q].is_injective());
      }
    }
  }
  SUBCASE("direct sums of coefficients") {
    auto X = moore_space(2, 3);
    auto M = FinAb::cyclic(4), N = FinAb::from_cyclic({2, 3});
    auto hs = cohomology(X, M.direct_sum(N));
    for (int n = 0; n < 3; ++n) CHECK(hs[n] == cohomology(X, M)[n].direct_sum(cohomology(X, N)[n]));
  }
  SUBCASE("reduction commutes with induced maps") {
    std::mt19937 rng(3);
    auto X = moore_space(2, 3);
    auto Y = smash(sphere(1, 3), sphere(1, 3));
    auto maps = enumerate_maps(forget_basepoint(X), forget_basepoint(Y), 100000);
    REQUIRE(!maps.empty());
    std::shuffle(maps.begin(), maps.end(), rng);
    auto Xu = forget_basepoint(X), Yu = forget_basepoint(Y);
    auto rx = reduction_map(Xu, 2, 2, 1), ry = reduction_map(Yu, 2, 2, 1);
    for (std::size_t t = 0; t < std::min<std::size_t>(maps.size(), 6); ++t) {
      auto f4 = induced_map(maps[t], Xu, Yu, FinAb::cyclic(4));
      auto f2 = induced_map(maps[t], Xu, Yu, FinAb::cyclic(2));
      for (int n = 0; n < 3; ++n) CHECK(same_hom(rx[n].after(f4[n]), f2[n].after(ry[n])));
    }
  }
}

TEST_CASE("induced maps") {
  auto X = sphere(2, 3);
  auto M = FinAb::cyclic(5);
  std::vector<Table> id;
  for (int k = 0; k <= 3; ++k) {
    Table t(X.size(k));
    std::iota(t.begin(), t.end(), 0);
    id.push_back(t);
  }
  for (auto& h : induced_map(SimplicialMap(X, X, id), X, X, M)) CHECK(h.cokernel().is_trivial());
  std::vector<Table> constant;
  for (int k = 0; k <= 3; ++k) constant.push_back(Table(X.size(k), X.base_at(k)));
  auto c = induced_map(SimplicialMap(X, X, constant), X, X, M, true);
  for (std::size_t n = 1; n < c.size(); ++n) CHECK(c[n].is_zero());
  auto d2 = standard_simplex(2, 3);
  auto sk = skeleton(d2, 1);
  auto inc = induced_map(sk.inclusion, sk.space, d2, FinAb::cyclic(2));
  CHECK(inc[0].is_injective());
  CHECK(inc[0].is_surjective());
  CHECK(inc[1].source.empty());
  CHECK(inc[1].target == std::vector<std::int64_t>{2});
  // composition: f o g induces g^* o f^*
  auto s1 = sphere(1, 3);
  auto self = enumerate_maps(s1, s1);
  for (auto& f : self)
    for (auto& g : self) {
      auto lhs = induced_map(f.after(g), s1, s1, M);
      auto gf = induced_map(g, s1, s1, M), ff = induced_map(f, s1, s1, M);
      for (int n = 0; n < 3; ++n) CHECK(same_hom(lhs[n], gf[n].after(ff[n])));
    }
}

TEST_CASE("no l-torsion") {
  for (int nu = 1; nu <= 3; ++nu) CHECK(no_ell_torsion(sphere(2, 4), 2, nu).no_torsion);
  auto w = no_ell_torsion(moore_space(3, 3), 3, 2);
  CHECK_FALSE(w.no_torsion);
  CHECK(w.degree == std::size_t{1});
  CHECK(no_ell_torsion(point(3), 5, 2).no_torsion);
  // the Moore space for 2 has no 3-torsion
  CHECK(no_ell_torsion(moore_space(2, 3), 3, 2).no_torsion);
}

TEST_CASE("relative cohomology and the long exact sequence") {
  auto d1 = standard_simplex(1, 3);
  auto bd = skeleton(d1, 0).members;
  auto h = relative_cohomology(d1, bd, FinAb::cyclic(7));
  CHECK(h.groups == std::vector<FinAb>{{}, FinAb::cyclic(7), {}});
  SubComplex all;
  for (int k = 0; k <= 3; ++k) all.member.emplace_back(d1.size(k), 1);
  for (auto& g : relative_cohomology(d1, all, FinAb::cyclic(7)).groups) CHECK(g.is_trivial());
  auto d2 = standard_simplex(2, 4);
  auto les = les_check(d2, skeleton(d2, 1).members, FinAb::cyclic(4));
  CHECK(les.exact);
  CHECK(les.positions_checked > 6);
  for (auto& X : {moore_space(2, 4), smash(sphere(1, 4), sphere(1, 4)), standard_simplex(3, 4)})
    for (int q = 0; q <= 2; ++q) {
      auto r = les_check(X, skeleton(X, q).members, FinAb::from_cyclic({4, 3}));
      CHECK(r.exact);
    }
  SubComplex bad = bd;
  bad.member[1][1] = 1;  // the edge without its degeneracies
  CHECK_THROWS_AS(relative_cohomology(d1, bad, FinAb::cyclic(2)), StructuralError);
}

TEST_CASE("tower cohomology") {
  auto X = moore_space(2, 3);
  auto direct = cohomology(X, FinAb::cyclic(4));
  auto one = tower_cohomology(tower_from(X), FinAb::cyclic(4));
  CHECK(one.table.groups == direct.groups);
  Tower constant{{X, X, X}, {}};
  std::vector<Table> id;
  for (int k = 0; k <= 3; ++k) {
    Table t(X.size(k));
    std::iota(t.begin(), t.end(), 0);
    id.push_back(t);
  }
  constant.bonds = {SimplicialMap(X, X, id), SimplicialMap(X, X, id)};
  auto c = tower_cohomology(constant, FinAb::cyclic(4));
  CHECK(c.table.groups == direct.groups);
  CHECK(c.stabilized == std::vector<bool>{true, true, true});
  // B(Z/2^t), t = 1..3, with mod 2 coefficients: H^2 classes are killed by inflation
  auto T = nerve_tower(2, 3, 3);
  auto b = tower_cohomology(T, FinAb::cyclic(2));
  for (auto& st : b.stage_groups) CHECK(st == std::vector<FinAb>{FinAb::cyclic(2), FinAb::cyclic(2), FinAb::cyclic(2)});
  CHECK(b.table.groups == std::vector<FinAb>{FinAb::cyclic(2), FinAb::cyclic(2), {}});
  CHECK(b.stabilized == std::vector<bool>{true, true, true});
  auto j = b.to_json();
  CHECK(j["groups"]["1"] == nlohmann::json::array({2}));
  CHECK(CohomologyTable::from_json(b.table.to_json()).groups == b.table.groups);
}
