#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "profet/cochain.hpp"
#include "profet/finab.hpp"
#include "profet/modular.hpp"

namespace profet {

/// Finite group given by its multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// table[a * n + b] = a * b.  Validates identity at 0, inverses and associativity.
  FiniteGroup(std::size_t n, std::vector<int> table, std::string name = "");

  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup product(const FiniteGroup& G, const FiniteGroup& H);

  std::size_t order() const { return n_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  const std::string& name() const { return name_; }
  const std::vector<int>& table() const { return table_; }
  bool is_abelian() const;

  nlohmann::json to_json() const;
  static FiniteGroup from_json(const nlohmann::json& j);

 private:
  std::size_t n_ = 1;
  std::vector<int> table_{0};
  std::vector<int> inv_{0};
  std::string name_;
};

/// Checks that map : G -> H (table of images) is a homomorphism.
bool is_homomorphism(const FiniteGroup& G, const FiniteGroup& H, const std::vector<int>& map);

constexpr std::size_t kDefaultBarBudget = 30000000;

/// Normalized inhomogeneous cochains C^n(G; M) with trivial action; the
/// coboundaries delta^0 .. delta^{top} (integer lifts).
std::vector<DenseMatrix> bar_coboundaries(const FiniteGroup& G, int top, std::size_t budget = kDefaultBarBudget);
/// H^i(G; M), trivial action, i = 0..top.
CohomologyTable bar_cohomology(const FiniteGroup& G, const FinAb& M, int top,
                               std::size_t budget = kDefaultBarBudget);

/// Surjections stages[t+1] -> stages[t].
struct GroupTower {
  std::vector<FiniteGroup> stages;
  std::vector<std::vector<int>> maps;
  void validate() const;
  nlohmann::json to_json() const;
  static GroupTower from_json(const nlohmann::json& j);
};

/// G_{a,b} = <sigma, tau | tau^A, sigma^B, sigma tau sigma^-1 = tau^q>, A = l^a,
/// B = l^b, a split extension of Z/B by Z/A.  Elements are sigma^s tau^r,
/// numbered s * A + r.
class MetacyclicGroup {
 public:
  MetacyclicGroup(std::int64_t A, std::int64_t B, std::int64_t q);
  std::int64_t A() const { return A_; }
  std::int64_t B() const { return B_; }
  std::int64_t q() const { return q_; }
  std::size_t order() const { return static_cast<std::size_t>(A_ * B_); }
  int element(std::int64_t s, std::int64_t r) const {
    return static_cast<int>((((s % B_) + B_) % B_) * A_ + (((r % A_) + A_) % A_));
  }
  int mul(int g, int h) const;
  /// tau^r sigma^s conjugation twist: tau sigma = sigma tau^p with p = q^{-1} mod A.
  std::int64_t twist(std::int64_t s) const { return ppow_[s]; }
  /// Materializes the multiplication table (budgeted).
  FiniteGroup to_finite_group(std::size_t max_order = 4096) const;
  nlohmann::json to_json() const;

 private:
  std::int64_t A_, B_, q_;
  std::vector<std::int64_t> ppow_;
};

/// Stages with the canonical surjections sigma -> sigma, tau -> tau.
struct MetacyclicTower {
  std::vector<MetacyclicGroup> stages;
  void validate() const;
  nlohmann::json to_json() const;
};

/// Largest a with q^{l^b} = 1 mod l^a (the tau-part that survives at sigma-order l^b).
int max_tau_exponent(std::int64_t q, std::int64_t ell, int b);

/// Depth stages G_{a_t, b_t} with b_t = t + 1 and a_t = min(t + 1, max_tau_exponent).
MetacyclicTower tame_local_tower(std::int64_t q, std::int64_t ell, int depth);
/// The stage list used for coefficients Z/l^nu (see local_field_cohomology).
MetacyclicTower tame_schedule(std::int64_t q, std::int64_t ell, int nu);
/// Z-hat through Z/l^t, t = 1..depth.
MetacyclicTower cyclic_tower(std::int64_t ell, int depth);

/// Free resolution of Z/m over (Z/m)[G] of rank n+1 in degree n (twisted
/// tensor product of the periodic resolutions of <tau> and <sigma>), and the
/// cochain complex Hom_G(F, M) for trivial M.
class WallResolution {
 public:
  WallResolution(const MetacyclicGroup& G, std::int64_t modulus, int top);
  const MetacyclicGroup& group() const { return G_; }
  std::int64_t modulus() const { return m_; }
  int top() const { return top_; }
  /// Coefficient (group ring element, length |G|) of generator i' of F_{n-1} in d(e_i), e_i in F_n.
  const std::vector<std::uint32_t>& d(int n, int i, int iprime) const { return d_[n][i][iprime]; }
  /// delta^n : C^n -> C^{n+1} with entries the augmentations of d, n = 0..top.
  std::vector<DenseMatrix> coboundaries() const;
  /// d o d on every generator vanishes.
  bool check_d_squared() const;

  using Chain = std::vector<std::vector<std::uint32_t>>;  // one coefficient per generator
  Chain apply_d(int n, const Chain& x) const;
  /// x in F_n with d x = y, for y a cycle of F_{n-1} (augmentation zero when n = 1).
  Chain solve(int n, const Chain& y) const;

 private:
  std::vector<std::uint32_t> h(int v, const std::vector<std::uint32_t>& c) const;
  MetacyclicGroup G_;
  std::int64_t m_;
  int top_;
  std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>> d_;  // d_[n][i][i']
};

/// Cochain map C^n(G) -> C^n(G') for the canonical surjection G' -> G, n = 0..top.
std::vector<DenseMatrix> inflation_cochain_maps(const WallResolution& source, const WallResolution& target);

/// Cohomology of G_{a,b} with coefficients M (trivial action) in degrees 0..top.
CohomologyTable metacyclic_cohomology(const MetacyclicGroup& G, const FinAb& M, int top);

/// Colimit along inflations; stabilization per degree.
TowerCohomology profinite_cohomology(const GroupTower& T, const FinAb& M, int top);
TowerCohomology profinite_cohomology(const MetacyclicTower& T, const FinAb& M, int top);

struct LocalFieldCohomology {
  TowerCohomology computed;
  int nu0 = 0;                 // l^nu0 = gcd(q - 1, l^nu)
  FinAb expected_h2;           // Z/l^nu0
  FinAb expected_h1;           // Z/l^nu + Z/l^nu0 (unramified and tame parts)
  std::vector<std::string> notes;
};
/// H^i(G_k; Z/l^nu), i = 0..top, for a local field with residue field F_q.
LocalFieldCohomology local_field_cohomology(std::int64_t q, std::int64_t ell, int nu, int top = 3);

}  // namespace profet
