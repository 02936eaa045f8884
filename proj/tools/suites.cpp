#include "suites.hpp"

#include <numeric>
#include <random>

#include <fmt/format.h>

#include "profet/ahss.hpp"
#include "profet/catalog.hpp"
#include "profet/cochain.hpp"
#include "profet/em_spaces.hpp"
#include "profet/error.hpp"
#include "profet/group.hpp"
#include "profet/int_matrix.hpp"
#include "profet/simplicial.hpp"

namespace profet::cli {

namespace {

using Suite = std::vector<CheckResult>;

void check(Suite& out, std::string name, const std::function<bool()>& body) {
  CheckResult r{std::move(name), false, ""};
  try {
    r.passed = body();
  } catch (const BudgetExceeded&) {
    throw;  // a budget overrun is not a verification failure
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  out.push_back(std::move(r));
}

Suite algebra(std::size_t) {
  Suite s;
  check(s, "smith normal form U*A*V = D on 100 random matrices", [] {
    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
      std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      IntMatrix A(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) A(i, j) = static_cast<long>(rng() % 21) - 10;
      auto f = smith_normal_form(A);
      if (!(f.U * A * f.V == f.D) || !f.D.is_diagonal()) return false;
      auto d = f.diagonal();
      for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (d[i + 1] != 0 && (d[i] == 0 || d[i + 1] % d[i] != 0)) return false;
      if (A.rows() == A.cols() && abs(determinant(A)) != abs(determinant(f.D))) return false;
    }
    return true;
  });
  check(s, "integer and modular cohomology agree", [] {
    auto d = coboundaries(moore_space(6, 4));
    std::vector<IntMatrix> di;
    for (auto& m : d) di.push_back(m.to_int_matrix());
    for (std::int64_t m : {4, 6, 9, 12})
      if (cohomology_of_complex(d, m) != cohomology_via_integer_snf(di, m)) return false;
    return true;
  });
  return s;
}

Suite simplicial(std::size_t) {
  Suite s;
  check(s, "standard simplex level sizes are binomial", [] {
    auto X = standard_simplex(3, 4);
    std::size_t expect[] = {4, 10, 20, 35, 56};
    for (int k = 0; k <= 4; ++k)
      if (X.size(k) != expect[k]) return false;
    return true;
  });
  check(s, "smash with S^0 is the identity up to isomorphism", [] {
    auto X = sphere(2, 3);
    return find_isomorphism(smash(X, sphere0(3)), X).has_value();
  });
  check(s, "JSON round trip", [] {
    auto X = moore_space(3, 3);
    return FinSimpSet::from_json(X.to_json()) == X;
  });
  return s;
}

Suite cochain(std::size_t) {
  Suite s;
  check(s, "Delta[n] is acyclic", [] {
    for (int n = 0; n <= 3; ++n) {
      auto H = cohomology(standard_simplex(n, 4), FinAb::cyclic(6));
      if (!(H[0] == FinAb::cyclic(6))) return false;
      for (std::size_t k = 1; k < H.groups.size(); ++k)
        if (!H[k].is_trivial()) return false;
    }
    return true;
  });
  check(s, "S^2 with Z/5 coefficients", [] {
    auto H = cohomology(sphere(2, 4), FinAb::cyclic(5));
    return H[0] == FinAb::cyclic(5) && H[1].is_trivial() && H[2] == FinAb::cyclic(5) && H[3].is_trivial();
  });
  check(s, "long exact sequence of (Delta[2], boundary)", [] {
    auto X = standard_simplex(2, 3);
    return les_check(X, skeleton(X, 1).members, FinAb::cyclic(4)).exact;
  });
  return s;
}

Suite em(std::size_t budget) {
  Suite s;
  check(s, "representability for the boundary of Delta[2]", [budget] {
    return representability_check(boundary_simplex(2, 2), FinAb::cyclic(2), 1, budget).holds;
  });
  check(s, "K(Z/2,1) has H^1 = Z/2", [budget] {
    auto K = build_K(FinAb::cyclic(2), 1, 4, budget);
    return cohomology(K.carrier(), FinAb::cyclic(2))[1] == FinAb::cyclic(2);
  });
  return s;
}

Suite galois(std::size_t budget) {
  Suite s;
  check(s, "cyclic groups are periodic", [budget] {
    for (std::int64_t m : {2, 3, 4, 6}) {
      auto H = bar_cohomology(FiniteGroup::cyclic(m), FinAb::cyclic(4), 3, budget);
      for (int n = 1; n <= 3; ++n)
        if (!(H[n] == FinAb::cyclic(std::gcd<std::int64_t>(m, 4)))) return false;
    }
    return true;
  });
  check(s, "metacyclic resolution agrees with the bar complex", [budget] {
    MetacyclicGroup G(4, 2, 3);
    auto a = metacyclic_cohomology(G, FinAb::cyclic(4), 2);
    auto b = bar_cohomology(G.to_finite_group(), FinAb::cyclic(4), 2, budget);
    return a.groups == b.groups;
  });
  check(s, "local field H^2 = Z/gcd(q-1, l^nu)", [] {
    auto L = local_field_cohomology(5, 2, 2);
    return L.computed.table[2] == FinAb::cyclic(4) && L.computed.table[3].is_trivial();
  });
  return s;
}

Suite ahss(std::size_t) {
  Suite s;
  check(s, "HZ abutment equals ordinary cohomology", [] {
    for (auto X : {point(3), sphere(1, 3), sphere(2, 3), moore_space(2, 3), boundary_simplex(3, 4)}) {
      auto H = cohomology(X, FinAb::cyclic(2));
      int top = static_cast<int>(H.groups.size()) - 1;
      auto rep = run_ahss(H, GradedCoefficients::hz(2, 1), 0, top);
      for (int n = 0; n <= top; ++n)
        if (!rep.at(n).group || !(*rep.at(n).group == H[n])) return false;
    }
    return true;
  });
  return s;
}

Suite catalog_suite(std::size_t) {
  Suite s;
  check(s, "Pn two-path consistency", [] {
    for (int n = 1; n <= 3; ++n) {
      auto C = GradedCoefficients::mu(3, 1);
      auto rep = etale_theory(catalog("Pn", {n}), C, -2 * n, 2 * n);
      auto M = projective_bundle_module(etale_theory(catalog("strict_henselian"), C, -6 * n, 2 * n), n + 1);
      for (int m = -2 * n; m <= 2 * n; ++m)
        if (!rep.at(m).group || M.group(m).order() != rep.at(m).group->order()) return false;
    }
    return true;
  });
  check(s, "Gm tower: Z/l^nu in degrees 0 and 1", [] {
    auto H = entry_cohomology(catalog("Gm"), 2, 2);
    return H[0] == FinAb::cyclic(4) && H[1] == FinAb::cyclic(4) && H[2].is_trivial();
  });
  check(s, "no l-torsion: point, S^2, Pn hold, Moore space fails", [] {
    for (std::string n : {"strict_henselian", "S2", "Pn(2)"})
      if (!no_ell_torsion(entry_reduction_maps(catalog(n), 2, 2)).no_torsion) return false;
    return !no_ell_torsion(entry_reduction_maps(catalog("moore(2)"), 2, 2)).no_torsion;
  });
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"simplicial", "algebra", "cochain", "em", "galois", "ahss", "catalog"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, std::size_t budget) {
  if (name == "simplicial") return simplicial(budget);
  if (name == "algebra") return algebra(budget);
  if (name == "cochain") return cochain(budget);
  if (name == "em") return em(budget);
  if (name == "galois") return galois(budget);
  if (name == "ahss") return ahss(budget);
  if (name == "catalog") return catalog_suite(budget);
  throw InputError(fmt::format("unknown suite '{}'", name));
}

}  // namespace profet::cli
