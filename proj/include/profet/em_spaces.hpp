#pragma once

#include <cstdint>
#include <vector>

#include "profet/finab.hpp"
#include "profet/simplicial.hpp"

namespace profet {

constexpr std::size_t kDefaultLevelBudget = 1000000;

/// L(S,n) or K(M,n) on a truncation.  A k-simplex is a function
/// Hom([n],[k]) -> S, stored as a base-|S| code whose digit at position h is
/// the value on the h-th monotone map (order of monotone_maps(n, k)).
/// Elements of a group M are numbered by mixed radix over its invariant
/// factors, first factor least significant.
class EMObject {
 public:
  enum class Kind { L, K };

  Kind kind() const { return kind_; }
  int degree() const { return n_; }
  bool group_valued() const { return group_valued_; }
  const FinAb& group() const { return group_; }
  std::size_t set_size() const { return set_size_; }
  const FinSimpSet& carrier() const { return carrier_; }

  std::uint64_t code(int k, Simplex x) const;
  /// Simplex with the given code; throws StructuralError when absent.
  Simplex index(int k, std::uint64_t code) const;
  /// Values on Hom([n],[k]), as element numbers of S.
  std::vector<int> values(int k, Simplex x) const;
  Simplex from_values(int k, const std::vector<int>& v) const;

  Simplex zero(int k) const;
  Simplex add(int k, Simplex a, Simplex b) const;
  Simplex negate(int k, Simplex a) const;
  /// Levelwise addition table, row-major |X_k| x |X_k| (group-valued only).
  std::vector<Simplex> addition_table(int k) const;

  friend EMObject build_L(const FinAb& M, int n, int D, std::size_t budget);
  friend EMObject build_L(std::size_t set_size, int n, int D, std::size_t budget);
  friend EMObject build_K(const FinAb& M, int n, int D, std::size_t budget);

 private:
  void require_group() const;
  Kind kind_ = Kind::L;
  int n_ = 0;
  bool group_valued_ = false;
  FinAb group_;
  std::size_t set_size_ = 1;
  FinSimpSet carrier_;
  std::vector<std::vector<std::uint64_t>> codes_;  // sorted codes per level (K only)
  std::vector<int> add_, neg_;                     // arithmetic on element numbers of M
};

/// Element number of a tuple of M and back.
int element_number(const FinAb& M, const FinAb::Element& e);
FinAb::Element element_of(const FinAb& M, int number);

EMObject build_L(const FinAb& M, int n, int D, std::size_t budget = kDefaultLevelBudget);
EMObject build_L(std::size_t set_size, int n, int D, std::size_t budget = kDefaultLevelBudget);
/// Level k is the group of n-cocycles of the (unnormalized) cochains of
/// Delta[k] with values in M, a subgroup of L(M,n)_k.
EMObject build_K(const FinAb& M, int n, int D, std::size_t budget = kDefaultLevelBudget);

/// L(M,n) -> K(M,n+1), levelwise a |-> delta a.
SimplicialMap differential_map(const EMObject& L, const EMObject& K);
/// The inclusion K(M,n) -> L(M,n).
SimplicialMap inclusion_map(const EMObject& K, const EMObject& L);

struct Representability {
  bool holds = false;
  std::size_t maps = 0;
  std::size_t expected = 0;
};
/// Enumerates Hom(X, L(M,n)) and checks that evaluation on the identity of
/// [n] is a group isomorphism onto C^n(X; M).
Representability representability_check(const FinSimpSet& X, const FinAb& M, int n,
                                         std::size_t budget = kDefaultLevelBudget);

}  // namespace profet
