#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "group_internal.hpp"
#include "profet/error.hpp"
#include "profet/group.hpp"

namespace profet {

namespace {

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  if (m == 1) return 0;
  __int128 r = 1, x = ((b % m) + m) % m;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t ipow64(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int valuation(std::int64_t x, std::int64_t ell) {
  int v = 0;
  while (x != 0 && x % ell == 0) {
    x /= ell;
    ++v;
  }
  return v;
}

}  // namespace

MetacyclicGroup::MetacyclicGroup(std::int64_t A, std::int64_t B, std::int64_t q) : A_(A), B_(B) {
  if (A < 1 || B < 1) throw InputError("metacyclic orders must be positive");
  if (A * B > (std::int64_t{1} << 26)) throw BudgetExceeded("metacyclic group too large");
  q_ = ((q % A) + A) % A;
  if (std::gcd(q_, A) != 1 && A > 1) throw InputError(fmt::format("q = {} is not a unit mod {}", q, A));
  if (powmod(q_, B, A) != 1 % A)
    throw StructuralError(fmt::format("q^{} != 1 mod {}: the presentation does not define a group of order {}", B,
                                      A, A * B));
  // p = q^{-1} = q^{B-1}
  std::int64_t p = powmod(q_, B - 1, A);
  ppow_.resize(B);
  std::int64_t x = 1 % A;
  for (std::int64_t s = 0; s < B; ++s) {
    ppow_[s] = x;
    x = static_cast<std::int64_t>(static_cast<__int128>(x) * p % A);
  }
}

int MetacyclicGroup::mul(int g, int h) const {
  std::int64_t s = g / A_, r = g % A_, s2 = h / A_, r2 = h % A_;
  // tau^r sigma^s2 = sigma^s2 tau^{r p^s2}
  return static_cast<int>(((s + s2) % B_) * A_ + (r * ppow_[s2] + r2) % A_);
}

FiniteGroup MetacyclicGroup::to_finite_group(std::size_t max_order) const {
  std::size_t n = order();
  if (n > max_order) throw BudgetExceeded(fmt::format("group of order {} exceeds the table budget", n));
  std::vector<int> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = mul(a, b);
  return FiniteGroup(n, std::move(t), fmt::format("G(A={},B={},q={})", A_, B_, q_));
}

nlohmann::json MetacyclicGroup::to_json() const { return {{"A", A_}, {"B", B_}, {"q", q_}}; }

void MetacyclicTower::validate() const {
  if (stages.empty()) throw StructuralError("a tower has at least one stage");
  for (std::size_t t = 0; t + 1 < stages.size(); ++t) {
    const auto &g = stages[t], &h = stages[t + 1];
    if (h.A() % g.A() != 0 || h.B() % g.B() != 0 || (h.q() - g.q()) % g.A() != 0)
      throw StructuralError(fmt::format("no canonical surjection from stage {} to stage {}", t + 1, t));
  }
}

nlohmann::json MetacyclicTower::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (auto& g : stages) j.push_back(g.to_json());
  return {{"stages", j}};
}

int max_tau_exponent(std::int64_t q, std::int64_t ell, int b) {
  if (q % ell == 0) throw InputError("the residue characteristic must differ from l");
  std::int64_t qm = ((q % ell) + ell) % ell;
  if (qm != 1) {
    // q^{l^b} = q mod l: the tau-part dies unless q = 1 mod l
    if (ell != 2) return 0;
  }
  if (ell == 2) {
    int v1 = valuation(q - 1, 2);
    if (b == 0) return v1;
    return v1 + valuation(q + 1, 2) + b - 1;
  }
  return valuation(q - 1, ell) + b;
}

MetacyclicTower tame_local_tower(std::int64_t q, std::int64_t ell, int depth) {
  if (depth < 1) throw InputError("tower depth must be positive");
  MetacyclicTower T;
  for (int t = 0; t < depth; ++t) {
    int b = t + 1, a = std::min(t + 1, max_tau_exponent(q, ell, b));
    T.stages.emplace_back(ipow64(ell, a), ipow64(ell, b), q);
  }
  T.validate();
  return T;
}

MetacyclicTower tame_schedule(std::int64_t q, std::int64_t ell, int nu) {
  if (nu < 1) throw InputError("nu must be positive");
  // stage 0 carries every class with Z/l^nu coefficients; stage 1 grows both
  // parts by nu so that classes dying in the limit are already dead; stage 2
  // adds one more step to confirm the image stopped shrinking
  int a_cap = max_tau_exponent(q, ell, nu);
  int a0 = std::min(nu, a_cap), b0 = nu;
  std::vector<std::pair<int, int>> ab;
  ab.push_back({a0, b0});
  int a1 = a0 > 0 ? a0 + nu : 0, b1 = b0 + nu;
  a1 = std::min(a1, max_tau_exponent(q, ell, b1));
  ab.push_back({a1, b1});
  if (a1 > 0 && a1 + 1 <= max_tau_exponent(q, ell, b1))
    ab.push_back({a1 + 1, b1});
  else
    ab.push_back({a1, b1 + 1});
  MetacyclicTower T;
  for (auto [a, b] : ab) T.stages.emplace_back(ipow64(ell, a), ipow64(ell, b), q);
  T.validate();
  return T;
}

MetacyclicTower cyclic_tower(std::int64_t ell, int depth) {
  if (depth < 1) throw InputError("tower depth must be positive");
  MetacyclicTower T;
  for (int t = 1; t <= depth; ++t) T.stages.emplace_back(1, ipow64(ell, t), 1);
  return T;
}

// ---------------------------------------------------------------------------
// Group ring arithmetic over Z/m.  Element sigma^s tau^r sits at s * A + r, so
// the coset sigma^s <tau> is a contiguous block and right multiplication by
// an element of Z<tau> acts blockwise.

namespace {

using GR = std::vector<std::uint32_t>;

struct Ring {
  const MetacyclicGroup& G;
  std::uint32_t m;
  std::size_t A, B, n;

  Ring(const MetacyclicGroup& g, std::int64_t mod)
      : G(g), m(static_cast<std::uint32_t>(mod)), A(g.A()), B(g.B()), n(g.order()) {}

  GR zero() const { return GR(n, 0); }
  GR unit(std::size_t g, std::uint32_t c = 1) const {
    GR x(n, 0);
    x[g] = c % m;
    return x;
  }
  void add_to(GR& x, const GR& y) const {
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t v = x[i] + y[i];
      x[i] = v >= m ? v - m : v;
    }
  }
  void sub_from(GR& x, const GR& y) const {
    for (std::size_t i = 0; i < n; ++i) x[i] = x[i] >= y[i] ? x[i] - y[i] : x[i] + m - y[i];
  }
  GR neg(const GR& x) const {
    GR y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] ? m - x[i] : 0;
    return y;
  }
  static bool is_zero(const GR& x) {
    return std::all_of(x.begin(), x.end(), [](std::uint32_t v) { return v == 0; });
  }
  std::uint32_t augmentation(const GR& x) const {
    std::uint64_t s = 0;
    for (auto v : x) s += v;
    return static_cast<std::uint32_t>(s % m);
  }

  GR mul(const GR& c, const GR& d) const {
    // nonzeros of d grouped by coset
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> nz(B);
    bool any = false;
    for (std::size_t s = 0; s < B; ++s)
      for (std::size_t r = 0; r < A; ++r)
        if (auto v = d[s * A + r]) {
          nz[s].push_back({static_cast<std::uint32_t>(r), v});
          any = true;
        }
    GR out(n, 0);
    if (!any) return out;
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t g = 0; g < n; ++g) {
      std::uint64_t a = c[g];
      if (a == 0) continue;
      std::size_t s1 = g / A, r1 = g % A;
      for (std::size_t s2 = 0; s2 < B; ++s2) {
        if (nz[s2].empty()) continue;
        std::size_t sh = static_cast<std::size_t>(r1 * G.twist(s2) % A);
        std::uint64_t* base = acc.data() + ((s1 + s2) % B) * A;
        for (auto [r2, v] : nz[s2]) {
          std::size_t t = sh + r2;
          if (t >= A) t -= A;
          base[t] += a * v;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(acc[i] % m);
    return out;
  }

  // boundary of the periodic <tau>-resolution in vertical degree v >= 1
  GR tau_boundary(int v) const {
    GR x = zero();
    if (v % 2) {
      x[A > 1 ? 1 : 0] += 1;
      x[0] = (x[0] + m - 1) % m;
    } else {
      for (std::size_t r = 0; r < A; ++r) x[r] = 1 % m;
    }
    return x;
  }
  // lift of the boundary of the periodic <sigma>-resolution in degree j >= 1
  GR sigma_boundary(int j) const {
    GR x = zero();
    if (j % 2) {
      x[B > 1 ? A : 0] += 1;
      x[0] = (x[0] + m - 1) % m;
    } else {
      for (std::size_t s = 0; s < B; ++s) x[s * A] = 1 % m;
    }
    return x;
  }
  // Z-linear contraction of the <tau>-resolution, vertical degree v -> v+1,
  // applied on each coset: even v sends tau^r to 1 + tau + ... + tau^{r-1},
  // odd v sends tau^{A-1} to 1 and the other powers to 0
  GR h(int v, const GR& c) const {
    GR out(n, 0);
    for (std::size_t s = 0; s < B; ++s) {
      const std::uint32_t* in = c.data() + s * A;
      std::uint32_t* o = out.data() + s * A;
      if (v % 2 == 0) {
        std::uint64_t suffix = 0;
        for (std::size_t u = A; u-- > 0;) {
          o[u] = static_cast<std::uint32_t>(suffix % m);
          suffix += in[u];
        }
      } else {
        o[0] = in[A - 1];
      }
    }
    return out;
  }
  // the same contraction for the <sigma>-resolution over Z/B
  std::vector<std::uint32_t> k(int j, const std::vector<std::uint32_t>& c) const {
    std::vector<std::uint32_t> out(B, 0);
    if (j % 2 == 0) {
      std::uint64_t suffix = 0;
      for (std::size_t u = B; u-- > 0;) {
        out[u] = static_cast<std::uint32_t>(suffix % m);
        suffix += c[u];
      }
    } else {
      out[0] = c[B - 1];
    }
    return out;
  }
};

}  // namespace

WallResolution::WallResolution(const MetacyclicGroup& G, std::int64_t modulus, int top)
    : G_(G), m_(modulus), top_(top) {
  if (modulus < 2 || modulus >= (1 << 24)) throw InputError("resolution modulus out of range");
  if (top < 0) throw InputError("negative top degree");
  Ring R(G_, m_);
  int N = top + 1;
  d_.resize(N + 1);
  for (int n = 1; n <= N; ++n) {
    d_[n].assign(n + 1, std::vector<GR>(n, R.zero()));
    for (int i = 0; i <= n; ++i) {
      int j = n - i;
      auto& row = d_[n][i];
      if (i >= 1) row[i - 1] = R.tau_boundary(i);
      for (int k = 1; k <= j; ++k) {
        int target = i + k - 1;
        if (i == 0 && k == 1) {
          row[0] = R.sigma_boundary(j);
          continue;
        }
        // z = sum_{m=1}^{k} d_m d_{k-m} e, at vertical degree i + k - 2 of F_{n-2}
        GR z = R.zero();
        for (int m = 1; m <= k; ++m) {
          int mid = i + k - m - 1;
          if (mid < 0) continue;
          const GR& c = row[mid];
          const GR& dd = d_[n - 1][mid][i + k - 2];
          R.add_to(z, R.mul(c, dd));
        }
        row[target] = R.neg(R.h(i + k - 2, z));
      }
    }
  }
}

std::vector<std::uint32_t> WallResolution::h(int v, const std::vector<std::uint32_t>& c) const {
  return Ring(G_, m_).h(v, c);
}

WallResolution::Chain WallResolution::apply_d(int n, const Chain& x) const {
  Ring R(G_, m_);
  if (n < 1 || n > top_ + 1 || x.size() != static_cast<std::size_t>(n + 1))
    throw InputError("chain of the wrong shape");
  Chain out(n, R.zero());
  for (int i = 0; i <= n; ++i) {
    if (Ring::is_zero(x[i])) continue;
    for (int t = 0; t < n; ++t)
      if (!Ring::is_zero(d_[n][i][t])) R.add_to(out[t], R.mul(x[i], d_[n][i][t]));
  }
  return out;
}

WallResolution::Chain WallResolution::solve(int n, const Chain& y0) const {
  Ring R(G_, m_);
  if (n < 1 || n > top_ + 1 || y0.size() != static_cast<std::size_t>(n))
    throw InputError("chain of the wrong shape");
  Chain y = y0;
  Chain x(n + 1, R.zero());
  auto subtract = [&](int pos, const GR& c) {
    Chain e(n + 1, R.zero());
    e[pos] = c;
    auto de = apply_d(n, e);
    for (int t = 0; t < n; ++t) R.sub_from(y[t], de[t]);
    R.add_to(x[pos], c);
  };
  // clear the column of largest sigma-degree first: position I carries j = n-1-I
  for (int I = 0; I < n; ++I) {
    if (Ring::is_zero(y[I])) continue;
    if (I == 0) {
      int J = n - 1;
      std::vector<std::uint32_t> eps(R.B, 0);
      for (std::size_t s = 0; s < R.B; ++s) {
        std::uint64_t sum = 0;
        for (std::size_t r = 0; r < R.A; ++r) sum += y[0][s * R.A + r];
        eps[s] = static_cast<std::uint32_t>(sum % R.m);
      }
      auto z = R.k(J, eps);
      GR lift = R.zero();
      for (std::size_t s = 0; s < R.B; ++s) lift[s * R.A] = z[s];
      if (!Ring::is_zero(lift)) subtract(0, lift);
    }
    if (!Ring::is_zero(y[I])) subtract(I + 1, R.h(I, y[I]));
    if (!Ring::is_zero(y[I])) throw StructuralError("solve: the right-hand side is not a cycle");
  }
  return x;
}

std::vector<DenseMatrix> WallResolution::coboundaries() const {
  Ring R(G_, m_);
  std::vector<DenseMatrix> out;
  for (int n = 0; n <= top_; ++n) {
    DenseMatrix D(n + 2, n + 1);
    for (int i = 0; i <= n + 1; ++i)
      for (int t = 0; t <= n; ++t) D(i, t) = R.augmentation(d_[n + 1][i][t]);
    out.push_back(std::move(D));
  }
  return out;
}

bool WallResolution::check_d_squared() const {
  for (int n = 2; n <= top_ + 1; ++n)
    for (int i = 0; i <= n; ++i) {
      auto dd = apply_d(n - 1, d_[n][i]);
      for (auto& c : dd)
        if (!Ring::is_zero(c)) return false;
    }
  return true;
}

std::vector<DenseMatrix> inflation_cochain_maps(const WallResolution& source, const WallResolution& target) {
  const auto& G = source.group();
  const auto& H = target.group();
  if (source.modulus() != target.modulus()) throw InputError("resolutions over different moduli");
  MetacyclicTower check{{G, H}};
  check.validate();
  int top = std::min(source.top(), target.top());
  Ring R(G, source.modulus());
  // pi : Z/m[H] -> Z/m[G], sigma^s tau^r -> sigma^{s mod B} tau^{r mod A}
  auto project = [&](const GR& c) {
    GR out = R.zero();
    for (std::size_t g = 0; g < c.size(); ++g) {
      if (!c[g]) continue;
      std::size_t s = g / H.A(), r = g % H.A();
      auto& v = out[(s % G.B()) * G.A() + r % G.A()];
      v = static_cast<std::uint32_t>((v + c[g]) % R.m);
    }
    return out;
  };
  // phi_n(e'_i) in F_n(G), a chain map over pi
  std::vector<WallResolution::Chain> phi_prev{{R.unit(0)}};
  std::vector<DenseMatrix> out;
  DenseMatrix m0(1, 1);
  m0(0, 0) = 1;
  out.push_back(m0);
  for (int n = 1; n <= top; ++n) {
    std::vector<WallResolution::Chain> phi;
    DenseMatrix mat(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
      WallResolution::Chain y(n, R.zero());
      for (int t = 0; t < n; ++t) {
        const auto& c = target.d(n, i, t);
        if (Ring::is_zero(c)) continue;
        GR pc = project(c);
        for (int u = 0; u < n; ++u)
          if (!Ring::is_zero(phi_prev[t][u])) R.add_to(y[u], R.mul(pc, phi_prev[t][u]));
      }
      auto x = source.solve(n, y);
      for (int u = 0; u <= n; ++u) mat(i, u) = R.augmentation(x[u]);
      phi.push_back(std::move(x));
    }
    out.push_back(std::move(mat));
    phi_prev = std::move(phi);
  }
  return out;
}

namespace {

std::int64_t exponent_of(const FinAb& M) {
  std::int64_t e = 1;
  for (auto f : M.invariant_factors()) e = std::lcm(e, f);
  return e;
}

std::vector<std::size_t> wall_dims(int top) {
  std::vector<std::size_t> dims;
  for (int n = 0; n <= top; ++n) dims.push_back(n + 1);
  return dims;
}

}  // namespace

CohomologyTable metacyclic_cohomology(const MetacyclicGroup& G, const FinAb& M, int top) {
  CohomologyTable t;
  t.coefficient = M;
  t.provenance = "twisted tensor product resolution";
  std::int64_t e = exponent_of(M);
  if (e == 1) {
    t.groups.assign(top + 1, FinAb::trivial());
    return t;
  }
  WallResolution W(G, e, top);
  t.groups = detail::groups_of_complex(W.coboundaries(), wall_dims(top), M, top + 1);
  return t;
}

TowerCohomology profinite_cohomology(const MetacyclicTower& T, const FinAb& M, int top) {
  T.validate();
  std::int64_t e = exponent_of(M);
  if (e == 1) {
    TowerCohomology out;
    out.table.coefficient = M;
    out.table.groups.assign(top + 1, FinAb::trivial());
    out.stabilized.assign(top + 1, true);
    out.stage_groups.assign(T.stages.size(), std::vector<FinAb>(top + 1));
    return out;
  }
  std::vector<WallResolution> res;
  std::vector<std::vector<DenseMatrix>> deltas, inf;
  std::vector<std::vector<std::size_t>> dims;
  for (auto& G : T.stages) {
    res.emplace_back(G, e, top);
    deltas.push_back(res.back().coboundaries());
    dims.push_back(wall_dims(top));
  }
  for (std::size_t t = 0; t + 1 < res.size(); ++t) inf.push_back(inflation_cochain_maps(res[t], res[t + 1]));
  return detail::colimit_of_complexes(deltas, dims, inf, M, top, "profinite colimit, metacyclic resolutions");
}

LocalFieldCohomology local_field_cohomology(std::int64_t q, std::int64_t ell, int nu, int top) {
  if (q < 2 || ell < 2) throw InputError("local field parameters out of range");
  LocalFieldCohomology out;
  std::int64_t m = ipow64(ell, nu);
  out.nu0 = valuation(std::gcd(q - 1, m), ell);
  out.expected_h2 = FinAb::cyclic(ipow64(ell, out.nu0));
  out.expected_h1 = FinAb::cyclic(m).direct_sum(FinAb::cyclic(ipow64(ell, out.nu0)));
  out.computed = profinite_cohomology(tame_schedule(q, ell, nu), FinAb::cyclic(m), top);
  out.notes.push_back(fmt::format(
      "H^1 = Hom(G_k, Z/{}) has an unramified Z/{} and a tame Z/{} part; a single cyclic summand "
      "undercounts it",
      m, m, ipow64(ell, out.nu0)));
  return out;
}

}  // namespace profet
