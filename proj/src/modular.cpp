#include "profet/modular.hpp"

#include <cassert>
#include <string>

#include "profet/error.hpp"

namespace profet {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

DenseMatrix DenseMatrix::from(const IntMatrix& m) {
  DenseMatrix d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).fits_slong_p()) throw InputError("matrix entry exceeds 64 bits");
      d(i, j) = m(i, j).get_si();
    }
  return d;
}

IntMatrix DenseMatrix::to_int_matrix() const {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>((*this)(i, j));
  return m;
}

DenseMatrix DenseMatrix::multiply_mod(const DenseMatrix& b, std::int64_t m) const {
  assert(cols == b.rows);
  DenseMatrix r(rows, b.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      std::int64_t x = (*this)(i, k) % m;
      if (x == 0) continue;
      const std::int64_t* brow = &b.a[k * b.cols];
      std::int64_t* rrow = &r.a[i * b.cols];
      for (std::size_t j = 0; j < b.cols; ++j)
        if (brow[j]) rrow[j] = (rrow[j] + x * (brow[j] % m)) % m;
    }
  for (auto& v : r.a)
    if (v < 0) v += m;
  return r;
}

std::vector<std::int64_t> DenseMatrix::apply_mod(std::span<const std::int64_t> v,
                                                 std::int64_t m) const {
  assert(v.size() == cols);
  std::vector<std::int64_t> out(rows, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    std::int64_t acc = 0;
    const std::int64_t* row = &a[i * cols];
    for (std::size_t j = 0; j < cols; ++j)
      if (row[j] && v[j]) acc = (acc + (row[j] % m) * (v[j] % m)) % m;
    out[i] = acc < 0 ? acc + m : acc;
  }
  return out;
}

bool DenseMatrix::is_zero_mod(std::int64_t m) const {
  for (auto v : a)
    if (v % m != 0) return false;
  return true;
}

PrimePowerRing::PrimePowerRing(std::int64_t prime, int exponent) : p(prime), k(exponent) {
  if (prime < 2 || exponent < 1) throw InputError("invalid prime power");
  q = ipow(prime, exponent);
  if (q >= (std::int64_t{1} << 31)) throw InputError("modulus too large for the local engine");
}

int PrimePowerRing::valuation(std::int64_t x) const {
  if (x == 0) return k;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

std::int64_t PrimePowerRing::inverse_unit(std::int64_t u) const {
  std::int64_t a = reduce(u), m = q, x0 = 1, x1 = 0;
  while (m) {
    std::int64_t t = a / m;
    std::tie(a, m) = std::make_pair(m, a - t * m);
    std::tie(x0, x1) = std::make_pair(x1, x0 - t * x1);
  }
  if (a != 1) throw Error("element is not a unit");
  return reduce(x0);
}

namespace {

struct Pivot {
  std::size_t row, col;
  int val;
};

// Two-sided elimination over Z/p^k with minimal-valuation pivoting.  W must be
// reduced.  on_row(i, r, f): row_i -= f * row_r.  on_col(x, j, f): col_x -= f * col_j.
// Only W's pivot entries survive.
template <class RowFn, class ColFn>
std::vector<Pivot> local_eliminate(DenseMatrix& W, const PrimePowerRing& R, RowFn on_row,
                                   ColFn on_col) {
  const std::size_t nr = W.rows, nc = W.cols;
  std::vector<char> row_done(nr, 0), col_done(nc, 0);
  std::vector<Pivot> pivots;
  const std::int64_t q = R.q;
  for (;;) {
    int best = R.k;
    std::size_t br = 0, bc = 0;
    for (std::size_t i = 0; i < nr && best > 0; ++i) {
      if (row_done[i]) continue;
      const std::int64_t* row = &W.a[i * nc];
      for (std::size_t j = 0; j < nc; ++j) {
        if (!row[j] || col_done[j]) continue;
        int v = R.valuation(row[j]);
        if (v < best) {
          best = v;
          br = i;
          bc = j;
          if (v == 0) break;
        }
      }
    }
    if (best == R.k) break;
    const std::int64_t pa = R.power_of_p(best);
    const std::int64_t uinv = R.inverse_unit(W(br, bc) / pa);
    const std::int64_t* prow = &W.a[br * nc];
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == br || row_done[i]) continue;
      std::int64_t e = W(i, bc);
      if (!e) continue;
      std::int64_t f = (e / pa) * uinv % q;
      std::int64_t* row = &W.a[i * nc];
      for (std::size_t j = 0; j < nc; ++j)
        if (prow[j]) {
          std::int64_t v = (row[j] - f * prow[j]) % q;
          row[j] = v < 0 ? v + q : v;
        }
      on_row(i, br, f);
    }
    for (std::size_t x = 0; x < nc; ++x) {
      if (x == bc) continue;
      std::int64_t e = W(br, x);
      if (!e) continue;
      std::int64_t f = (e / pa) * uinv % q;
      W(br, x) = 0;
      on_col(x, bc, f);
    }
    row_done[br] = 1;
    col_done[bc] = 1;
    pivots.push_back({br, bc, best});
  }
  return pivots;
}

DenseMatrix reduced_copy(const DenseMatrix& m, std::int64_t q) {
  DenseMatrix r = m;
  for (auto& v : r.a) {
    v %= q;
    if (v < 0) v += q;
  }
  return r;
}

}  // namespace

PrimaryCohomology::PrimaryCohomology(const DenseMatrix* incoming, const DenseMatrix* outgoing,
                                     std::size_t dim, std::int64_t prime, int exponent)
    : ring_(prime, exponent), dim_(dim) {
  const auto& R = ring_;
  const std::int64_t q = R.q;
  if (incoming && (incoming->rows != dim)) throw InputError("incoming differential shape");
  if (outgoing && (outgoing->cols != dim)) throw InputError("outgoing differential shape");

  // Kernel of delta^n: diagonalize with tracked column operations.
  std::vector<int> col_val(dim, -1);
  if (outgoing && outgoing->rows > 0 && dim > 0) {
    identity_q_ = false;
    q_ = DenseMatrix::identity(dim);
    qinv_ = DenseMatrix::identity(dim);
    DenseMatrix W = reduced_copy(*outgoing, q);
    auto pivots = local_eliminate(
        W, R, [](std::size_t, std::size_t, std::int64_t) {},
        [&](std::size_t x, std::size_t j, std::int64_t f) {
          // Q <- Q E with col_x -= f col_j; Q^{-1} <- E^{-1} Q^{-1}: row_j += f row_x.
          for (std::size_t r = 0; r < dim; ++r) {
            std::int64_t v = (q_(r, x) - f * q_(r, j)) % q;
            q_(r, x) = v < 0 ? v + q : v;
          }
          std::int64_t* rj = &qinv_.a[j * dim];
          const std::int64_t* rx = &qinv_.a[x * dim];
          for (std::size_t c = 0; c < dim; ++c)
            if (rx[c]) rj[c] = (rj[c] + f * rx[c]) % q;
        });
    for (const auto& pv : pivots) col_val[pv.col] = pv.val;
  }
  for (std::size_t j = 0; j < dim; ++j) {
    if (col_val[j] == 0) continue;
    summand_col_.push_back(j);
    summand_val_.push_back(col_val[j]);
    summand_exp_.push_back(col_val[j] < 0 ? R.k : col_val[j]);
  }
  const std::size_t N = summand_col_.size();

  // Relations: image of delta^{n-1} in kernel coordinates plus the summand orders.
  std::size_t nimg = incoming ? incoming->cols : 0;
  DenseMatrix rel(N, nimg + N);
  for (std::size_t c = 0; c < nimg; ++c) {
    std::vector<std::int64_t> y(dim);
    for (std::size_t i = 0; i < dim; ++i) y[i] = R.reduce((*incoming)(i, c));
    auto t = kernel_coordinates(y);
    for (std::size_t s = 0; s < N; ++s) rel(s, c) = t[s];
  }
  for (std::size_t s = 0; s < N; ++s)
    rel(s, nimg + s) = summand_exp_[s] < R.k ? R.power_of_p(summand_exp_[s]) : 0;

  p_ = DenseMatrix::identity(N);
  DenseMatrix pinv = DenseMatrix::identity(N);
  auto pivots = local_eliminate(
      rel, R,
      [&](std::size_t i, std::size_t r, std::int64_t f) {
        std::int64_t* pi = &p_.a[i * N];
        const std::int64_t* pr = &p_.a[r * N];
        for (std::size_t c = 0; c < N; ++c)
          if (pr[c]) {
            std::int64_t v = (pi[c] - f * pr[c]) % q;
            pi[c] = v < 0 ? v + q : v;
          }
        for (std::size_t rr = 0; rr < N; ++rr)
          if (pinv(rr, i)) pinv(rr, r) = (pinv(rr, r) + f * pinv(rr, i)) % q;
      },
      [](std::size_t, std::size_t, std::int64_t) {});
  std::vector<int> row_val(N, R.k);
  for (const auto& pv : pivots) row_val[pv.row] = pv.val;
  for (std::size_t r = 0; r < N; ++r) {
    if (row_val[r] == 0) continue;
    factor_row_.push_back(r);
    factor_exp_.push_back(row_val[r]);
    orders_.push_back(R.power_of_p(row_val[r]));
    std::vector<std::int64_t> rep(dim, 0);
    for (std::size_t s = 0; s < N; ++s) {
      std::int64_t coef = pinv(s, r);
      if (!coef) continue;
      auto g = kernel_generator(s);
      for (std::size_t i = 0; i < dim; ++i)
        if (g[i]) rep[i] = (rep[i] + coef * g[i]) % q;
    }
    reps_.push_back(std::move(rep));
  }
}

std::vector<std::int64_t> PrimaryCohomology::kernel_generator(std::size_t s) const {
  const auto& R = ring_;
  std::size_t j = summand_col_[s];
  std::int64_t scale = summand_val_[s] < 0 ? 1 : R.power_of_p(R.k - summand_val_[s]);
  std::vector<std::int64_t> g(dim_, 0);
  if (identity_q_) {
    g[j] = scale % R.q;
  } else {
    for (std::size_t i = 0; i < dim_; ++i) g[i] = q_(i, j) * scale % R.q;
  }
  return g;
}

std::vector<std::int64_t> PrimaryCohomology::kernel_coordinates(
    std::span<const std::int64_t> y) const {
  const auto& R = ring_;
  std::vector<std::int64_t> w(dim_);
  if (identity_q_) {
    for (std::size_t i = 0; i < dim_; ++i) w[i] = R.reduce(y[i]);
  } else {
    w = qinv_.apply_mod(y, R.q);
  }
  // Columns of delta^n with a unit pivot must vanish on cocycles.
  std::vector<std::int64_t> t(summand_col_.size());
  std::size_t s = 0;
  for (std::size_t j = 0; j < dim_; ++j) {
    if (s < summand_col_.size() && summand_col_[s] == j) {
      int a = summand_val_[s];
      if (a < 0) {
        t[s] = w[j];
      } else {
        std::int64_t div = R.power_of_p(R.k - a);
        if (w[j] % div) throw StructuralError("vector is not a cocycle");
        t[s] = (w[j] / div) % R.power_of_p(a);
      }
      ++s;
    } else if (!identity_q_ && w[j] != 0) {
      throw StructuralError("vector is not a cocycle");
    }
  }
  return t;
}

std::vector<std::int64_t> PrimaryCohomology::coordinates(
    std::span<const std::int64_t> cocycle) const {
  if (cocycle.size() != dim_) throw InputError("cochain has wrong dimension");
  auto t = kernel_coordinates(cocycle);
  const std::size_t N = t.size();
  std::vector<std::int64_t> out;
  for (std::size_t f = 0; f < factor_row_.size(); ++f) {
    std::size_t r = factor_row_[f];
    std::int64_t acc = 0;
    for (std::size_t s = 0; s < N; ++s)
      if (p_(r, s) && t[s]) acc = (acc + p_(r, s) * t[s]) % ring_.q;
    out.push_back(acc % orders_[f]);
  }
  return out;
}

std::vector<FinAb> cohomology_of_complex(const std::vector<DenseMatrix>& deltas,
                                         std::int64_t modulus) {
  if (modulus < 1) throw InputError("modulus must be positive");
  if (deltas.empty()) throw InputError("empty complex");
  std::vector<std::size_t> dims{deltas.front().cols};
  for (const auto& d : deltas) {
    if (d.cols != dims.back()) throw InputError("differential shapes do not chain");
    dims.push_back(d.rows);
  }
  for (std::size_t n = 0; n + 1 < deltas.size(); ++n)
    if (!deltas[n + 1].multiply_mod(deltas[n], modulus).is_zero_mod(modulus))
      throw InvalidComplex("delta^" + std::to_string(n + 1) + " * delta^" + std::to_string(n) +
                           " is not zero mod " + std::to_string(modulus));
  std::vector<std::vector<std::int64_t>> cyc(dims.size());
  for (auto [p, e] : factorize(modulus)) {
    for (std::size_t n = 0; n < dims.size(); ++n) {
      const DenseMatrix* in = n > 0 ? &deltas[n - 1] : nullptr;
      const DenseMatrix* out = n < deltas.size() ? &deltas[n] : nullptr;
      PrimaryCohomology h(in, out, dims[n], p, e);
      cyc[n].insert(cyc[n].end(), h.orders().begin(), h.orders().end());
    }
  }
  std::vector<FinAb> res;
  for (auto& c : cyc) res.push_back(FinAb::from_cyclic(c));
  return res;
}

std::vector<FinAb> cohomology_of_complex(const std::vector<IntMatrix>& deltas,
                                         std::int64_t modulus) {
  std::vector<DenseMatrix> d;
  for (const auto& m : deltas) d.push_back(DenseMatrix::from(m));
  return cohomology_of_complex(d, modulus);
}

AbHom induced_hom(const PrimaryCohomology& source, const PrimaryCohomology& target,
                  const DenseMatrix& cochain_map) {
  if (source.ring().p != target.ring().p) throw InputError("induced map across different primes");
  if (cochain_map.rows != target.cochain_dim() || cochain_map.cols != source.cochain_dim())
    throw InputError("cochain map has wrong shape");
  AbHom h{source.orders(), target.orders(), {}};
  h.matrix.assign(target.orders().size(), std::vector<std::int64_t>(source.orders().size(), 0));
  for (std::size_t j = 0; j < source.orders().size(); ++j) {
    auto img = cochain_map.apply_mod(source.representative(j), target.ring().q);
    auto c = target.coordinates(img);
    for (std::size_t i = 0; i < c.size(); ++i) h.matrix[i][j] = c[i];
  }
  return h;
}

}  // namespace profet
