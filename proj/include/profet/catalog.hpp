#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "profet/ahss.hpp"
#include "profet/cochain.hpp"
#include "profet/simplicial.hpp"

namespace profet {

struct CatalogParams {
  int n = 1;            // Pn
  std::int64_t q = 0;   // finite and local fields: residue field size
  int m = 2;            // moore: degree of the attaching loop
  int D = 4;            // truncation of simplicial models
  int depth = 0;        // Gm tower depth, 0 = nu + 2
};

/// Surrogate for the etale homotopy type of a scheme: a simplicial model, a
/// tower of simplicial models, or a cohomology table built per (l, nu).
struct CatalogEntry {
  enum class Model { Simplicial, Tower, Table };
  std::string name;
  CatalogParams params;
  Model model = Model::Simplicial;
  std::optional<FinSimpSet> space;  // Simplicial
  std::string citation;
  bool test_space = false;          // auxiliary entry, not an etale type
  nlohmann::json to_json() const;
};

/// Names: strict_henselian, Gm, P1, Pn, finite_field, local_field, and the
/// auxiliary test entries S2 and moore.  "Pn(3)" and "finite_field(7)" set the parameter.
CatalogEntry catalog(const std::string& name, CatalogParams params = {});
std::vector<std::string> catalog_names();

/// Gm as the tower K(Z/l^t, 1), t = 1..depth, truncated at D, with reduction bonds.
Tower gm_tower(std::int64_t ell, int depth, int D);

/// H^*(entry; Z/l^nu).  Reduced cohomology of a connected entry drops H^0.
CohomologyTable entry_cohomology(const CatalogEntry& e, std::int64_t ell, int nu, bool reduced = false);

/// H^n(entry; Z/l^nu) -> H^n(entry; Z/l) per degree.  Simplicial entries use
/// the cochain-level reduction; the Pn table has free integral cohomology, so
/// its reduction is the quotient on each free summand.
std::vector<AbHom> entry_reduction_maps(const CatalogEntry& e, std::int64_t ell, int nu);

/// cohomology -> E_2 -> collapse analysis -> abutment, with the splitting
/// flag set where licensed (Pn with Z/l coefficients) and discrepancy notes.
AbutmentReport etale_theory(const CatalogEntry& e, const GradedCoefficients& C, int n0, int n1,
                            bool reduced = false);

/// Free module over a graded base with basis 1, xi, ..., xi^{rank-1} in degrees 0, 2, ...
class FreeModulePresentation {
 public:
  FreeModulePresentation(std::map<int, FinAb> base, int rank);
  int rank() const { return rank_; }
  const FinAb& base(int d) const;
  bool has_base(int d) const { return base_.count(d) != 0; }
  /// Degree-m part: sum over i < rank of base(m - 2i).
  FinAb group(int m) const;
  std::vector<int> basis_degrees() const;

 private:
  std::map<int, FinAb> base_;
  int rank_;
};

/// Base ring data from a resolved report (degree -> group).
FreeModulePresentation projective_bundle_module(const AbutmentReport& base, int rank);

/// Homogeneous element of degree `degree`: coeffs[i] lies in base(degree - 2i).
struct ModuleElement {
  int degree = 0;
  std::vector<FinAb::Element> coeffs;
};

/// A base element together with its degree.
struct BaseElement {
  int degree = 0;
  FinAb::Element value;
};

/// Given xi^n = sum_{j<n} a_j xi^j (a_j in base(2(n-j))), the unique c_1..c_n
/// with sum_i (-1)^i c_i xi^{n-i} = 0, c_0 = 1.
std::vector<BaseElement> chern_classes(const FreeModulePresentation& M, const std::vector<BaseElement>& relation);

/// sum_{i=0}^{n} (-1)^i c_i xi^{n-i} in M (rank n) with xi^n rewritten by the
/// relation; zero iff the c_i solve it.
ModuleElement chern_relation_residue(const FreeModulePresentation& M, const std::vector<BaseElement>& relation,
                                     const std::vector<BaseElement>& c);

/// x = u^d - c_1 u^{d-1} + ... + (-1)^d c_d in the rank d+1 presentation;
/// `unit` is the unit of base(0).
ModuleElement thom_class(const FreeModulePresentation& Md1, const std::vector<BaseElement>& c,
                         const FinAb::Element& unit);
/// Image of the Thom element in the rank-d presentation with u -> xi and
/// xi^d rewritten by the Chern relation.
ModuleElement thom_image(const FreeModulePresentation& Md, const ModuleElement& x, const std::vector<BaseElement>& c);

bool is_zero(const ModuleElement& x);

}  // namespace profet
