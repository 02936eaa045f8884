#pragma once
// Independent brute-force oracles shared by the test suites.  Nothing here
// calls into the elimination engines.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "profet/finab.hpp"
#include "profet/modular.hpp"

namespace oracle {

using Vec = std::vector<std::int64_t>;

inline void for_each_vector(std::size_t dim, std::int64_t m, const std::function<void(const Vec&)>& f) {
  Vec v(dim, 0);
  for (;;) {
    f(v);
    std::size_t i = 0;
    while (i < dim && ++v[i] == m) v[i++] = 0;
    if (i == dim) break;
  }
}

inline Vec apply(const profet::DenseMatrix& A, const Vec& v, std::int64_t m) {
  Vec out(A.rows, 0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < A.cols; ++j) acc += A(i, j) * v[j];
    out[i] = ((acc % m) + m) % m;
  }
  return out;
}

/// Isomorphism type of a finite abelian group given as (ker, im) subsets of
/// (Z/m)^dim, im <= ker, by counting |H[p^i]| for every prime p | m.
inline profet::FinAb quotient_type(const std::set<Vec>& ker, const std::set<Vec>& im, std::int64_t m) {
  std::vector<std::int64_t> cyc;
  for (auto [p, e] : profet::factorize(m)) {
    // log_p |H[p^i]| for i = 0..e
    std::vector<int> logs;
    for (int i = 0; i <= e; ++i) {
      std::int64_t pi = profet::ipow(p, i);
      std::size_t count = 0;
      for (const auto& x : ker) {
        Vec y = x;
        for (auto& c : y) c = (c * pi) % m;
        if (im.count(y)) ++count;
      }
      count /= im.size();
      int l = 0;
      while (count > 1) {
        count /= p;
        ++l;
      }
      logs.push_back(l);
    }
    // r_i = number of factors of order >= p^i
    for (int i = 1; i <= e; ++i) {
      int ri = logs[i] - logs[i - 1];
      int rnext = i < e ? logs[i + 1] - logs[i] : 0;
      for (int c = 0; c < ri - rnext; ++c) cyc.push_back(profet::ipow(p, i));
    }
  }
  return profet::FinAb::from_cyclic(cyc);
}

/// H^n by exhaustive enumeration of kernel and image.
inline profet::FinAb brute_cohomology(const std::vector<profet::DenseMatrix>& deltas,
                                      std::size_t n, std::int64_t m) {
  std::size_t dim = n < deltas.size() ? deltas[n].cols : deltas.back().rows;
  std::set<Vec> ker, im;
  for_each_vector(dim, m, [&](const Vec& v) {
    if (n >= deltas.size()) {
      ker.insert(v);
      return;
    }
    auto w = apply(deltas[n], v, m);
    for (auto c : w)
      if (c) return;
    ker.insert(v);
  });
  if (n == 0) {
    im.insert(Vec(dim, 0));
  } else {
    for_each_vector(deltas[n - 1].cols, m, [&](const Vec& v) { im.insert(apply(deltas[n - 1], v, m)); });
  }
  return quotient_type(ker, im, m);
}

/// Conjugates a complex by elementary basis changes: for each cochain degree a
/// random sequence of (row_i += c row_j) on delta^{n-1} and the inverse column
/// operation (col_j -= c col_i) on delta^n.
inline void conjugate_complex(std::vector<profet::DenseMatrix>& d, std::int64_t m, std::mt19937& rng) {
  std::size_t ndeg = d.size() + 1;
  for (std::size_t n = 0; n < ndeg; ++n) {
    std::size_t dim = n < d.size() ? d[n].cols : d.back().rows;
    if (dim < 2) continue;
    std::uniform_int_distribution<std::size_t> idx(0, dim - 1);
    std::uniform_int_distribution<std::int64_t> coef(1, m - 1);
    for (std::size_t t = 0; t < 3 * dim; ++t) {
      std::size_t i = idx(rng), j = idx(rng);
      if (i == j) continue;
      std::int64_t c = coef(rng);
      if (n > 0) {
        auto& A = d[n - 1];
        for (std::size_t k = 0; k < A.cols; ++k) A(i, k) = (A(i, k) + c * A(j, k)) % m;
      }
      if (n < d.size()) {
        auto& B = d[n];
        for (std::size_t k = 0; k < B.rows; ++k) B(k, j) = ((B(k, j) - c * B(k, i)) % m + m) % m;
      }
    }
  }
}

/// Random valid complex over Z/m with the given cochain dimensions, built as a
/// conjugated sum of elementary pieces R --c--> R.
inline std::vector<profet::DenseMatrix> random_complex(const std::vector<std::size_t>& dims,
                                                       std::int64_t m, std::mt19937& rng) {
  std::vector<profet::DenseMatrix> d;
  std::vector<std::size_t> used_top(dims.size(), 0);
  std::uniform_int_distribution<std::int64_t> coef(0, m - 1);
  for (std::size_t n = 0; n + 1 < dims.size(); ++n) {
    profet::DenseMatrix D(dims[n + 1], dims[n]);
    std::size_t src = used_top[n];
    std::size_t tgt = 0;
    while (src < dims[n] && tgt < dims[n + 1]) {
      if (coef(rng) % 3 == 0) break;
      D(tgt, src) = coef(rng);
      ++src;
      ++tgt;
    }
    used_top[n + 1] = tgt;
    d.push_back(D);
  }
  // Rows of C^{n+1} hit by delta^n are exactly [0, used_top[n+1]); delta^{n+1}
  // starts at column used_top[n+1], so compositions vanish.
  conjugate_complex(d, m, rng);
  return d;
}
}  // namespace oracle
