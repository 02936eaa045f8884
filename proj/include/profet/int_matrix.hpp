#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "profet/finab.hpp"

namespace profet {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& b) const;
  bool operator==(const IntMatrix& b) const;

  bool is_zero() const;
  bool is_diagonal() const;
  IntMatrix transpose() const;
  std::vector<std::vector<std::int64_t>> to_rows() const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row_i += c * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const mpz_class& c);
  /// col_i += c * col_j
  void add_col_multiple(std::size_t i, std::size_t j, const mpz_class& c);
  void negate_row(std::size_t i);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpz_class> a_;
};

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithForm {
  IntMatrix U, D, V;
  std::vector<mpz_class> diagonal() const;
  std::size_t rank() const;
};

/// Smith normal form with smallest-absolute-value pivoting.  Deterministic:
/// ties are broken by row-major position.
SmithForm smith_normal_form(const IntMatrix& A);

/// Exact determinant (fraction-free Bareiss elimination).
mpz_class determinant(const IntMatrix& A);

/// Isomorphism type of L / L0 for lattices L0 <= L <= Z^dim given by
/// generator columns; both must have full rank.
FinAb lattice_quotient(const std::vector<std::vector<mpz_class>>& outer_gens,
                       const std::vector<std::vector<mpz_class>>& inner_gens, std::size_t dim);

/// Homomorphism between direct sums of cyclic groups, in generator coordinates:
/// column j is the image of the j-th source generator.
struct AbHom {
  std::vector<std::int64_t> source, target;
  std::vector<std::vector<std::int64_t>> matrix;  // target.size() x source.size()

  FinAb source_group() const { return FinAb::from_cyclic(source); }
  FinAb target_group() const { return FinAb::from_cyclic(target); }
  FinAb image() const;
  FinAb cokernel() const;
  bool is_surjective() const { return cokernel().is_trivial(); }
  bool is_injective() const { return image().order() == source_group().order(); }
  bool is_zero() const;
  /// this o first
  AbHom after(const AbHom& first) const;
};

/// Cohomology of a cochain complex of free Z/m-modules whose differentials are
/// given by integer lifts delta^0, delta^1, ...; delta^n has dim C^{n+1} rows
/// and dim C^n columns.  Computed over Z with m * identity relation columns.
/// Degrees 0..deltas.size() are returned; the last one uses the zero outgoing map.
std::vector<FinAb> cohomology_via_integer_snf(const std::vector<IntMatrix>& deltas,
                                              std::int64_t modulus);

}  // namespace profet
