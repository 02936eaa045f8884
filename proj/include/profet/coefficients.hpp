#pragma once

#include <cstdint>
#include <string>

#include "profet/finab.hpp"

namespace profet {

/// Number of monomials of cohomological degree q in polynomial generators of
/// degrees -2, -4, -6, ... (the partition number p(-q/2)); 0 unless q is even and <= 0.
std::int64_t mu_rank(int q);

enum class Theory { MU, KU, MoravaK, HZ };

/// A Z-graded coefficient family q -> E^q (x) Z/l^nu, each a free Z/l^nu-module.
class GradedCoefficients {
 public:
  static GradedCoefficients mu(std::int64_t ell, int nu);
  static GradedCoefficients ku(std::int64_t ell, int nu);
  /// Morava K(n) at l; the modulus is forced to l.
  static GradedCoefficients morava_k(std::int64_t ell, int n);
  static GradedCoefficients hz(std::int64_t ell, int nu);
  /// Parses "MU", "KU", "HZ", "K(n)"/"MoravaK(n)".
  static GradedCoefficients parse(const std::string& name, std::int64_t ell, int nu);

  Theory theory() const { return theory_; }
  std::int64_t prime() const { return ell_; }
  int nu() const { return nu_; }
  std::int64_t modulus() const { return modulus_; }
  int morava_height() const { return height_; }
  std::string name() const;

  std::int64_t rank(int q) const;
  /// Free Z/l^nu-module of rank rank(q).
  FinAb group(int q) const;

  /// Period of the rank function (0 if not periodic).
  int period() const;

 private:
  GradedCoefficients(Theory t, std::int64_t ell, int nu, int height);
  Theory theory_;
  std::int64_t ell_;
  int nu_;
  std::int64_t modulus_;
  int height_ = 0;
};

inline FinAb coefficient_group(const GradedCoefficients& c, int q) { return c.group(q); }

}  // namespace profet
