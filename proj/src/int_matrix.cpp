#include "profet/int_matrix.hpp"

#include <algorithm>
#include <cassert>

#include "profet/error.hpp"

namespace profet {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rows[i][j]);
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& b) const {
  assert(cols_ == b.rows_);
  IntMatrix r(rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
    }
  return r;
}

bool IntMatrix::operator==(const IntMatrix& b) const {
  return rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const mpz_class& x) { return x == 0; });
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(i, j).fits_slong_p()) throw Error("matrix entry exceeds 64 bits");
      out[i][j] = (*this)(i, j).get_si();
    }
  return out;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const mpz_class& c) {
  if (c == 0) return;
  for (std::size_t k = 0; k < cols_; ++k)
    if ((*this)(j, k) != 0) (*this)(i, k) += c * (*this)(j, k);
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, const mpz_class& c) {
  if (c == 0) return;
  for (std::size_t k = 0; k < rows_; ++k)
    if ((*this)(k, j) != 0) (*this)(k, i) += c * (*this)(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

std::vector<mpz_class> SmithForm::diagonal() const {
  std::vector<mpz_class> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (const auto& x : diagonal())
    if (x != 0) ++r;
  return r;
}

namespace {

// Smallest nonzero |entry| in rows [r0, m) x cols [c0, n); row-major tie-break.
bool find_min_pivot(const IntMatrix& D, std::size_t r0, std::size_t c0, std::size_t& pi,
                    std::size_t& pj) {
  bool found = false;
  mpz_class best;
  for (std::size_t i = r0; i < D.rows(); ++i)
    for (std::size_t j = c0; j < D.cols(); ++j) {
      const auto& x = D(i, j);
      if (x == 0) continue;
      if (!found || mpz_cmpabs(x.get_mpz_t(), best.get_mpz_t()) < 0) {
        best = abs(x);
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SmithForm s{IntMatrix::identity(m), A, IntMatrix::identity(n)};
  auto& U = s.U;
  auto& D = s.D;
  auto& V = s.V;
  mpz_class q;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_min_pivot(D, t, t, pi, pj)) break;
    D.swap_rows(t, pi);
    U.swap_rows(t, pi);
    D.swap_cols(t, pj);
    V.swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        q = -q;
        D.add_row_multiple(i, t, q);
        U.add_row_multiple(i, t, q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        q = -q;
        D.add_col_multiple(j, t, q);
        V.add_col_multiple(j, t, q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t into the pivot.
        std::size_t bi = t, bj = t;
        mpz_class best = abs(D(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (D(i, t) != 0 && mpz_cmpabs(D(i, t).get_mpz_t(), best.get_mpz_t()) < 0) {
            best = abs(D(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(t, j) != 0 && mpz_cmpabs(D(t, j).get_mpz_t(), best.get_mpz_t()) < 0) {
            best = abs(D(t, j));
            bi = t;
            bj = j;
          }
        D.swap_rows(t, bi);
        U.swap_rows(t, bi);
        D.swap_cols(t, bj);
        V.swap_cols(t, bj);
        continue;
      }
      // Divisibility: fold an offending row into the pivot row.
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) != 0 && !mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            D.add_row_multiple(t, i, 1);
            U.add_row_multiple(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }
  return s;
}

mpz_class determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw StructuralError("determinant of non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && M(r, k) == 0) ++r;
      if (r == n) return 0;
      M.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        M(i, j) = v;
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

std::vector<FinAb> cohomology_via_integer_snf(const std::vector<IntMatrix>& deltas,
                                              std::int64_t modulus) {
  if (modulus < 1) throw InputError("modulus must be positive");
  // Cochain dimensions.
  std::vector<std::size_t> dims;
  if (deltas.empty()) throw InputError("empty complex");
  dims.push_back(deltas.front().cols());
  for (std::size_t n = 0; n < deltas.size(); ++n) {
    if (deltas[n].cols() != dims.back()) throw InputError("differential shapes do not chain");
    dims.push_back(deltas[n].rows());
  }
  const mpz_class m = static_cast<long>(modulus);
  for (std::size_t n = 0; n + 1 < deltas.size(); ++n) {
    IntMatrix comp = deltas[n + 1] * deltas[n];
    for (std::size_t i = 0; i < comp.rows(); ++i)
      for (std::size_t j = 0; j < comp.cols(); ++j)
        if (!mpz_divisible_p(comp(i, j).get_mpz_t(), m.get_mpz_t()))
          throw InvalidComplex("delta^" + std::to_string(n + 1) + " * delta^" +
                               std::to_string(n) + " is not zero mod " +
                               std::to_string(modulus));
  }

  std::vector<FinAb> out;
  for (std::size_t n = 0; n < dims.size(); ++n) {
    const std::size_t c = dims[n];
    if (c == 0) {
      out.push_back(FinAb::trivial());
      continue;
    }
    // Kernel lattice K = { x : delta^n x in m Z^{c'} }.
    std::vector<std::vector<mpz_class>> kgens;
    if (n < deltas.size() && dims[n + 1] > 0) {
      const auto& d = deltas[n];
      const std::size_t r = dims[n + 1];
      IntMatrix aug(r, c + r);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) aug(i, j) = d(i, j);
        aug(i, c + i) = m;
      }
      auto s = smith_normal_form(aug);
      std::size_t rk = s.rank();
      for (std::size_t j = rk; j < c + r; ++j) {
        std::vector<mpz_class> v(c);
        for (std::size_t i = 0; i < c; ++i) v[i] = s.V(i, j);
        kgens.push_back(std::move(v));
      }
    } else {
      for (std::size_t j = 0; j < c; ++j) {
        std::vector<mpz_class> v(c);
        v[j] = 1;
        kgens.push_back(std::move(v));
      }
    }
    IntMatrix GK(c, kgens.size());
    for (std::size_t j = 0; j < kgens.size(); ++j)
      for (std::size_t i = 0; i < c; ++i) GK(i, j) = kgens[j][i];
    auto sk = smith_normal_form(GK);
    auto dk = sk.diagonal();
    if (sk.rank() != c) throw Error("kernel lattice is not of full rank");

    // Image lattice generators in K-coordinates: t_i = (U y)_i / d_i.
    std::vector<std::vector<mpz_class>> igens;
    if (n > 0) {
      const auto& d = deltas[n - 1];
      for (std::size_t j = 0; j < d.cols(); ++j) {
        std::vector<mpz_class> v(c);
        for (std::size_t i = 0; i < c; ++i) v[i] = d(i, j);
        igens.push_back(std::move(v));
      }
    }
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<mpz_class> v(c);
      v[j] = m;
      igens.push_back(std::move(v));
    }
    IntMatrix T(c, igens.size());
    for (std::size_t j = 0; j < igens.size(); ++j)
      for (std::size_t i = 0; i < c; ++i) {
        mpz_class acc = 0;
        for (std::size_t k = 0; k < c; ++k) acc += sk.U(i, k) * igens[j][k];
        if (!mpz_divisible_p(acc.get_mpz_t(), dk[i].get_mpz_t()))
          throw Error("image is not contained in the kernel lattice");
        mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), dk[i].get_mpz_t());
        T(i, j) = acc;
      }
    auto st = smith_normal_form(T);
    std::vector<std::int64_t> cyc;
    for (const auto& x : st.diagonal()) {
      if (x == 0) throw Error("infinite cohomology over a finite modulus");
      if (x > 1) cyc.push_back(x.get_si());
    }
    out.push_back(FinAb::from_cyclic(cyc));
  }
  return out;
}

}  // namespace profet

namespace profet {

FinAb lattice_quotient(const std::vector<std::vector<mpz_class>>& outer_gens,
                       const std::vector<std::vector<mpz_class>>& inner_gens, std::size_t dim) {
  if (dim == 0) return FinAb::trivial();
  IntMatrix G(dim, outer_gens.size());
  for (std::size_t j = 0; j < outer_gens.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) G(i, j) = outer_gens[j][i];
  auto s = smith_normal_form(G);
  if (s.rank() != dim) throw Error("outer lattice is not of full rank");
  auto d = s.diagonal();
  IntMatrix T(dim, inner_gens.size());
  for (std::size_t j = 0; j < inner_gens.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) {
      mpz_class acc = 0;
      for (std::size_t k = 0; k < dim; ++k) acc += s.U(i, k) * inner_gens[j][k];
      if (!mpz_divisible_p(acc.get_mpz_t(), d[i].get_mpz_t()))
        throw Error("inner lattice is not contained in the outer lattice");
      mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), d[i].get_mpz_t());
      T(i, j) = acc;
    }
  auto st = smith_normal_form(T);
  if (st.rank() != dim) throw Error("inner lattice is not of full rank");
  std::vector<std::int64_t> cyc;
  for (const auto& x : st.diagonal())
    if (x > 1) {
      if (!x.fits_slong_p()) throw Error("quotient factor exceeds 64 bits");
      cyc.push_back(x.get_si());
    }
  return FinAb::from_cyclic(cyc);
}

namespace {

std::vector<std::vector<mpz_class>> diagonal_gens(const std::vector<std::int64_t>& orders) {
  std::vector<std::vector<mpz_class>> g;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    std::vector<mpz_class> v(orders.size());
    v[i] = static_cast<long>(orders[i]);
    g.push_back(std::move(v));
  }
  return g;
}

}  // namespace

FinAb AbHom::image() const {
  auto inner = diagonal_gens(target);
  auto outer = inner;
  for (std::size_t j = 0; j < source.size(); ++j) {
    std::vector<mpz_class> v(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) v[i] = static_cast<long>(matrix[i][j]);
    outer.push_back(std::move(v));
  }
  return lattice_quotient(outer, inner, target.size());
}

FinAb AbHom::cokernel() const {
  std::vector<std::vector<mpz_class>> outer;
  for (std::size_t i = 0; i < target.size(); ++i) {
    std::vector<mpz_class> v(target.size());
    v[i] = 1;
    outer.push_back(std::move(v));
  }
  auto inner = diagonal_gens(target);
  for (std::size_t j = 0; j < source.size(); ++j) {
    std::vector<mpz_class> v(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) v[i] = static_cast<long>(matrix[i][j]);
    inner.push_back(std::move(v));
  }
  return lattice_quotient(outer, inner, target.size());
}

bool AbHom::is_zero() const {
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = 0; j < source.size(); ++j)
      if (matrix[i][j] % target[i] != 0) return false;
  return true;
}

AbHom AbHom::after(const AbHom& first) const {
  if (first.target != source) throw StructuralError("composition of incompatible homomorphisms");
  AbHom r{first.source, target,
          std::vector<std::vector<std::int64_t>>(target.size(),
                                                 std::vector<std::int64_t>(first.source.size()))};
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = 0; j < first.source.size(); ++j) {
      mpz_class acc = 0;
      for (std::size_t k = 0; k < source.size(); ++k)
        acc += mpz_class(static_cast<long>(matrix[i][k])) * static_cast<long>(first.matrix[k][j]);
      mpz_class t = static_cast<long>(target[i]);
      acc %= t;
      if (acc < 0) acc += t;
      r.matrix[i][j] = acc.get_si();
    }
  return r;
}

}  // namespace profet
