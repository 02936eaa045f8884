#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "profet/finab.hpp"
#include "profet/int_matrix.hpp"
#include "profet/modular.hpp"
#include "profet/simplicial.hpp"

namespace profet {

/// C^*(X; M) for M = sum of Z/n_j.  The coboundary is the same integer
/// matrix on every cyclic summand, so it is stored once.
struct CochainComplex {
  FinAb coefficient;
  std::vector<std::size_t> simplices;  // |X_n|
  std::vector<DenseMatrix> deltas;     // delta^n : |X_{n+1}| x |X_n|, alternating signs

  std::size_t degrees() const { return simplices.size(); }
  std::size_t dim(std::size_t n) const { return simplices[n] * coefficient.num_generators(); }
  /// Full coboundary on C^n(X; M), block diagonal over the summands of M.
  IntMatrix delta(std::size_t n) const;
};

struct CohomologyTable {
  FinAb coefficient;
  std::vector<FinAb> groups;  // degrees 0 .. groups.size()-1
  bool reduced = false;
  std::string provenance = "direct computation";
  /// H^p = 0 for every p > vanishes_above (known bound on the support), when set.
  std::optional<std::size_t> vanishes_above;

  const FinAb& operator[](std::size_t n) const { return groups[n]; }
  nlohmann::json to_json() const;
  static CohomologyTable from_json(const nlohmann::json& j);
};

/// Integer coboundaries delta^n(a) = sum_i (-1)^i a o d_i for n < D.
std::vector<DenseMatrix> coboundaries(const FinSimpSet& X);
CochainComplex build_complex(const FinSimpSet& X, const FinAb& M);

/// Cohomology of X in degrees 0..D-1 (the range the truncation determines).
/// Reduced cohomology is the cohomology of cochains vanishing on the basepoint.
/// When level D has no nondegenerate simplex, X is the skeleton of a simplicial
/// set with nothing above and the table records its support bound.
CohomologyTable cohomology(const FinSimpSet& X, const FinAb& M, bool reduced = false);

/// Primary pieces Z/p^k of M, one per elementary divisor, in order.
std::vector<std::pair<std::int64_t, int>> primary_summands(const FinAb& M);

/// Per-degree cohomology over Z/p^k, degrees 0..degrees-1, of the complex with
/// the given coboundaries.
std::vector<PrimaryCohomology> primary_cohomology(const std::vector<DenseMatrix>& deltas,
                                                  const std::vector<std::size_t>& dims,
                                                  std::int64_t p, int k, std::size_t degrees);

/// f^* : H^n(Y; M) -> H^n(X; M) for n = 0..min(D)-1; summands of M in the
/// order of primary_summands(M).
std::vector<AbHom> induced_map(const SimplicialMap& f, const FinSimpSet& X, const FinSimpSet& Y,
                               const FinAb& M, bool reduced = false);

/// H^n(X; Z/l^nu) -> H^n(X; Z/l^mu) induced by reduction, mu <= nu.
std::vector<AbHom> reduction_map(const FinSimpSet& X, std::int64_t ell, int nu, int mu);

struct TorsionWitness {
  bool no_torsion = true;
  std::optional<std::size_t> degree;  // first degree where reduction is not onto
};
/// True iff H^*(X; Z/l^nu) -> H^*(X; Z/l) is onto in every supported degree.
TorsionWitness no_ell_torsion(const FinSimpSet& X, std::int64_t ell, int nu);
/// Same test given the reduction maps degree by degree.
TorsionWitness no_ell_torsion(const std::vector<AbHom>& reductions);

/// H^n(X, A; M) computed as reduced cohomology of X/A.
CohomologyTable relative_cohomology(const FinSimpSet& X, const SubComplex& A, const FinAb& M);

struct LesReport {
  bool exact = true;
  std::vector<std::string> failures;  // position descriptions
  std::size_t positions_checked = 0;
};
/// Exactness of ... -> H^n(X,A) -> H^n(X) -> H^n(A) -> H^{n+1}(X,A) -> ...
/// checked with explicit maps over each primary summand of M.
LesReport les_check(const FinSimpSet& X, const SubComplex& A, const FinAb& M);

/// Colimit estimate of a direct system H_0 -> H_1 -> ... -> H_T of finite
/// groups.  With I_{s,t} the image of H_s in H_t, the estimate is I_{s,T} for
/// the largest s < T whose image has stopped shrinking (|I_{s,T}| = |I_{s,T-1}|).
struct ColimitEstimate {
  FinAb group;
  bool stabilized = false;
  std::size_t stage = 0;  // the s used
};
ColimitEstimate colimit_estimate(const std::vector<FinAb>& groups, const std::vector<AbHom>& maps);

struct TowerCohomology {
  CohomologyTable table;                        // colimit estimates
  std::vector<bool> stabilized;                 // per degree
  std::vector<std::vector<FinAb>> stage_groups;  // [stage][degree]
  nlohmann::json to_json() const;
};
TowerCohomology tower_cohomology(const Tower& T, const FinAb& M);

}  // namespace profet
