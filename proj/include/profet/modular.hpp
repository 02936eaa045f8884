#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "profet/finab.hpp"
#include "profet/int_matrix.hpp"

namespace profet {

/// Dense row-major matrix of machine integers; entries are interpreted modulo
/// whatever modulus the consumer works over.
struct DenseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> a;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  std::int64_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from(const IntMatrix& m);
  IntMatrix to_int_matrix() const;

  /// Product reduced modulo m (entries of the result lie in [0, m)).
  DenseMatrix multiply_mod(const DenseMatrix& b, std::int64_t m) const;
  std::vector<std::int64_t> apply_mod(std::span<const std::int64_t> v, std::int64_t m) const;
  bool is_zero_mod(std::int64_t m) const;
};

/// Arithmetic in Z/p^k.
struct PrimePowerRing {
  std::int64_t p = 2;
  int k = 1;
  std::int64_t q = 2;  // p^k

  PrimePowerRing(std::int64_t prime, int exponent);
  std::int64_t reduce(std::int64_t x) const {
    x %= q;
    return x < 0 ? x + q : x;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>((static_cast<unsigned __int128>(a) * b) % q);
  }
  /// Valuation of a reduced residue; k for zero.
  int valuation(std::int64_t x) const;
  std::int64_t inverse_unit(std::int64_t u) const;
  std::int64_t power_of_p(int e) const { return ipow(p, e); }
};

/// H^n of a cochain complex of free Z/p^k-modules, together with cocycle
/// representatives for a cyclic decomposition and a coordinate map.
class PrimaryCohomology {
 public:
  /// incoming = delta^{n-1} (dim C^n x dim C^{n-1}) or nullptr when n = 0;
  /// outgoing = delta^n (dim C^{n+1} x dim C^n) or nullptr for the top degree.
  PrimaryCohomology(const DenseMatrix* incoming, const DenseMatrix* outgoing, std::size_t dim,
                    std::int64_t prime, int exponent);

  const PrimePowerRing& ring() const { return ring_; }
  std::size_t cochain_dim() const { return dim_; }
  /// Cyclic orders p^e of the decomposition, one per generator.
  const std::vector<std::int64_t>& orders() const { return orders_; }
  FinAb group() const { return FinAb::from_cyclic(orders_); }
  /// Cocycle representing generator i.
  const std::vector<std::int64_t>& representative(std::size_t i) const { return reps_[i]; }
  /// Coordinates of the class of a cocycle; throws StructuralError when the
  /// vector is not a cocycle.
  std::vector<std::int64_t> coordinates(std::span<const std::int64_t> cocycle) const;

 private:
  std::vector<std::int64_t> kernel_coordinates(std::span<const std::int64_t> cocycle) const;
  std::vector<std::int64_t> kernel_generator(std::size_t s) const;

  PrimePowerRing ring_;
  std::size_t dim_;
  bool identity_q_ = true;             // no outgoing map: Q = Q^{-1} = I
  DenseMatrix q_;                      // column transform of delta^n
  DenseMatrix qinv_;                   // its inverse
  std::vector<std::size_t> summand_col_;  // column index of each kernel summand
  std::vector<int> summand_val_;       // pivot valuation, or -1 for a free column
  std::vector<int> summand_exp_;       // summand is Z/p^exp
  DenseMatrix p_;                      // row transform of the relation matrix
  std::vector<int> factor_exp_;
  std::vector<std::size_t> factor_row_;
  std::vector<std::int64_t> orders_;
  std::vector<std::vector<std::int64_t>> reps_;
};

/// Cohomology of a complex of free Z/m-modules given by integer lifts of its
/// differentials.  Splits m into prime powers and eliminates over each local ring.
/// Returns degrees 0..deltas.size().  Throws InvalidComplex when consecutive
/// differentials do not compose to zero mod m.
std::vector<FinAb> cohomology_of_complex(const std::vector<DenseMatrix>& deltas,
                                         std::int64_t modulus);
std::vector<FinAb> cohomology_of_complex(const std::vector<IntMatrix>& deltas,
                                         std::int64_t modulus);

/// Homomorphism H^n(source) -> H^n(target) induced by a cochain map given on
/// cochains as a (target dim x source dim) matrix.  Both sides must be over the
/// same prime; the moduli may differ (coefficient reduction).
AbHom induced_hom(const PrimaryCohomology& source, const PrimaryCohomology& target,
                  const DenseMatrix& cochain_map);

}  // namespace profet
