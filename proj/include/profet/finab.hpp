#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace profet {

/// Finite abelian group in invariant-factor form n_1 | n_2 | ... | n_r, n_i >= 2.
/// The trivial group has no factors.  Elements are residue tuples.
class FinAb {
 public:
  using Element = std::vector<std::int64_t>;

  FinAb() = default;

  /// Builds the group from invariant factors; throws StructuralError when the
  /// list is not a divisibility chain of integers >= 2.
  static FinAb from_invariant_factors(std::vector<std::int64_t> factors);

  /// Normalizes an arbitrary direct sum of cyclic groups Z/c_1 + ... + Z/c_k
  /// (orders 1 are dropped, order 0 is rejected).
  static FinAb from_cyclic(const std::vector<std::int64_t>& orders);

  static FinAb cyclic(std::int64_t n) { return from_cyclic({n}); }
  static FinAb trivial() { return {}; }

  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
  std::size_t num_generators() const { return factors_.size(); }
  bool is_trivial() const { return factors_.empty(); }
  mpz_class order() const;
  std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  /// Elementary divisors p^e, sorted.
  std::vector<std::int64_t> elementary_divisors() const;

  FinAb direct_sum(const FinAb& other) const;
  FinAb power(std::size_t r) const;

  /// True when every factor equals the same modulus (free Z/m-module).
  bool is_free_over(std::int64_t m) const;

  Element zero() const { return Element(factors_.size(), 0); }
  Element add(const Element& a, const Element& b) const;
  Element negate(const Element& a) const;
  bool contains(const Element& a) const;

  std::string to_string() const;

  bool operator==(const FinAb&) const = default;

 private:
  explicit FinAb(std::vector<std::int64_t> f) : factors_(std::move(f)) {}
  std::vector<std::int64_t> factors_;
};

/// Prime factorization by trial division, primes ascending with multiplicity collapsed.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

bool is_prime(std::int64_t n);
std::int64_t ipow(std::int64_t base, int exp);
std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace profet
