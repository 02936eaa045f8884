#include "profet/em_spaces.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

namespace profet {

namespace {

using Seq = std::vector<int>;

struct HomTables {
  std::vector<std::vector<Seq>> hom;             // hom[k] = Hom([n],[k])
  std::vector<std::vector<Table>> face_src;      // face_src[k][i][b]: position in hom[k] of d^i o hom[k-1][b]
  std::vector<std::vector<Table>> degen_src;     // degen_src[k][i][b]: position in hom[k] of s^i o hom[k+1][b]
};

HomTables hom_tables(int n, int D) {
  HomTables t;
  t.hom.resize(D + 1);
  std::vector<std::map<Seq, Simplex>> pos(D + 1);
  for (int k = 0; k <= D; ++k) {
    t.hom[k] = monotone_maps(n, k);
    for (std::size_t a = 0; a < t.hom[k].size(); ++a) pos[k][t.hom[k][a]] = static_cast<Simplex>(a);
  }
  t.face_src.resize(D + 1);
  t.degen_src.resize(D + 1);
  for (int k = 0; k <= D; ++k) {
    if (k >= 1)
      for (int i = 0; i <= k; ++i) {
        Table tab;
        for (auto h : t.hom[k - 1]) {
          for (auto& v : h)
            if (v >= i) ++v;
          tab.push_back(pos[k].at(h));
        }
        t.face_src[k].push_back(std::move(tab));
      }
    if (k < D)
      for (int i = 0; i <= k; ++i) {
        Table tab;
        for (auto h : t.hom[k + 1]) {
          for (auto& v : h)
            if (v > i) --v;
          tab.push_back(pos[k].at(h));
        }
        t.degen_src[k].push_back(std::move(tab));
      }
  }
  return t;
}

// base^len, or budget + 1 when it exceeds the budget.
std::uint64_t capped_power(std::uint64_t base, std::size_t len, std::uint64_t budget) {
  unsigned __int128 r = 1;
  for (std::size_t i = 0; i < len; ++i) {
    r *= base;
    if (r > budget) return budget + 1;
  }
  return static_cast<std::uint64_t>(r);
}

void check_code_range(std::uint64_t base, std::size_t len) {
  unsigned __int128 r = 1;
  for (std::size_t i = 0; i < len; ++i) {
    r *= base;
    if (r > (static_cast<unsigned __int128>(1) << 63))
      throw BudgetExceeded("simplex codes exceed 63 bits at this truncation");
  }
}

std::uint64_t encode(const std::vector<int>& digits, std::uint64_t base) {
  std::uint64_t c = 0;
  for (std::size_t a = digits.size(); a-- > 0;) c = c * base + static_cast<std::uint64_t>(digits[a]);
  return c;
}

std::vector<int> decode(std::uint64_t c, std::uint64_t base, std::size_t len) {
  std::vector<int> d(len);
  for (std::size_t a = 0; a < len; ++a) {
    d[a] = static_cast<int>(c % base);
    c /= base;
  }
  return d;
}

// Face and degeneracy tables on codes, given a code -> index lookup.
template <class Lookup>
FinSimpSet assemble(int D, std::uint64_t base, const HomTables& ht,
                    const std::vector<std::vector<std::uint64_t>>& level_codes, Lookup lookup) {
  std::vector<std::size_t> sizes(D + 1);
  for (int k = 0; k <= D; ++k) sizes[k] = level_codes[k].size();
  std::vector<std::vector<Table>> f(D + 1), d(D + 1);
  for (int k = 0; k <= D; ++k) {
    if (k >= 1) f[k].assign(k + 1, Table(sizes[k]));
    if (k < D) d[k].assign(k + 1, Table(sizes[k]));
    std::vector<int> out;
    for (std::size_t x = 0; x < sizes[k]; ++x) {
      auto v = decode(level_codes[k][x], base, ht.hom[k].size());
      if (k >= 1)
        for (int i = 0; i <= k; ++i) {
          const auto& src = ht.face_src[k][i];
          out.resize(src.size());
          for (std::size_t b = 0; b < src.size(); ++b) out[b] = v[src[b]];
          f[k][i][x] = lookup(k - 1, encode(out, base));
        }
      if (k < D)
        for (int i = 0; i <= k; ++i) {
          const auto& src = ht.degen_src[k][i];
          out.resize(src.size());
          for (std::size_t b = 0; b < src.size(); ++b) out[b] = v[src[b]];
          d[k][i][x] = lookup(k + 1, encode(out, base));
        }
    }
  }
  return FinSimpSet(D, sizes, std::move(f), std::move(d), Simplex{0});
}

struct Arith {
  std::vector<int> add, neg;
  int size = 1;
  int plus(int a, int b) const { return add[a * size + b]; }
  int times(long c, int g) const {
    int r = 0, x = c < 0 ? neg[g] : g;
    for (long i = 0; i < std::labs(c); ++i) r = plus(r, x);
    return r;
  }
};

Arith arithmetic(const FinAb& M) {
  Arith a;
  a.size = static_cast<int>(M.order().get_si());
  a.add.resize(a.size * a.size);
  a.neg.resize(a.size);
  for (int x = 0; x < a.size; ++x) {
    auto ex = element_of(M, x);
    a.neg[x] = element_number(M, M.negate(ex));
    for (int y = 0; y < a.size; ++y) a.add[x * a.size + y] = element_number(M, M.add(ex, element_of(M, y)));
  }
  return a;
}

// delete_i applied to every h in hom[n'] = Hom([n'],[k]), as positions in Hom([n'-1],[k]).
std::vector<std::vector<int>> deletion_positions(int nprime, int k) {
  auto hi = monotone_maps(nprime, k);
  auto lo = monotone_maps(nprime - 1, k);
  std::map<Seq, int> pos;
  for (std::size_t b = 0; b < lo.size(); ++b) pos[lo[b]] = static_cast<int>(b);
  std::vector<std::vector<int>> out(hi.size());
  for (std::size_t a = 0; a < hi.size(); ++a)
    for (int i = 0; i <= nprime; ++i) {
      Seq s = hi[a];
      s.erase(s.begin() + i);
      out[a].push_back(pos.at(s));
    }
  return out;
}

}  // namespace

int element_number(const FinAb& M, const FinAb::Element& e) {
  const auto& f = M.invariant_factors();
  if (e.size() != f.size()) throw InputError("element has the wrong number of coordinates");
  long r = 0;
  for (std::size_t j = f.size(); j-- > 0;) r = r * f[j] + ((e[j] % f[j]) + f[j]) % f[j];
  return static_cast<int>(r);
}

FinAb::Element element_of(const FinAb& M, int number) {
  const auto& f = M.invariant_factors();
  FinAb::Element e(f.size());
  long r = number;
  for (std::size_t j = 0; j < f.size(); ++j) {
    e[j] = r % f[j];
    r /= f[j];
  }
  return e;
}

void EMObject::require_group() const {
  if (!group_valued_) throw StructuralError("L(S,n) on a plain set has no group structure");
}

std::uint64_t EMObject::code(int k, Simplex x) const {
  return kind_ == Kind::L ? static_cast<std::uint64_t>(x) : codes_[k][x];
}

Simplex EMObject::index(int k, std::uint64_t c) const {
  if (kind_ == Kind::L) {
    if (c >= carrier_.size(k)) throw StructuralError("code outside L level");
    return static_cast<Simplex>(c);
  }
  auto it = std::lower_bound(codes_[k].begin(), codes_[k].end(), c);
  if (it == codes_[k].end() || *it != c) throw StructuralError("code is not a cocycle of this level");
  return static_cast<Simplex>(it - codes_[k].begin());
}

std::vector<int> EMObject::values(int k, Simplex x) const {
  return decode(code(k, x), set_size_, monotone_maps(n_, k).size());
}

Simplex EMObject::from_values(int k, const std::vector<int>& v) const { return index(k, encode(v, set_size_)); }

Simplex EMObject::zero(int k) const {
  require_group();
  return index(k, 0);
}

Simplex EMObject::add(int k, Simplex a, Simplex b) const {
  require_group();
  auto va = values(k, a), vb = values(k, b);
  for (std::size_t i = 0; i < va.size(); ++i) va[i] = add_[va[i] * set_size_ + vb[i]];
  return from_values(k, va);
}

Simplex EMObject::negate(int k, Simplex a) const {
  require_group();
  auto va = values(k, a);
  for (auto& v : va) v = neg_[v];
  return from_values(k, va);
}

std::vector<Simplex> EMObject::addition_table(int k) const {
  require_group();
  std::size_t N = carrier_.size(k);
  std::vector<Simplex> t(N * N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) t[a * N + b] = add(k, a, b);
  return t;
}

EMObject build_L(std::size_t set_size, int n, int D, std::size_t budget) {
  if (set_size < 1 || n < 0 || D < 0) throw InputError("build_L needs |S| >= 1, n >= 0, D >= 0");
  auto ht = hom_tables(n, D);
  std::vector<std::vector<std::uint64_t>> codes(D + 1);
  for (int k = 0; k <= D; ++k) {
    auto N = capped_power(set_size, ht.hom[k].size(), budget);
    if (N > budget)
      throw BudgetExceeded(fmt::format("L(S,{}) level {} exceeds the budget of {} simplices", n, k, budget));
    codes[k].resize(N);
    for (std::uint64_t c = 0; c < N; ++c) codes[k][c] = c;
  }
  EMObject L;
  L.kind_ = EMObject::Kind::L;
  L.n_ = n;
  L.set_size_ = set_size;
  L.carrier_ = assemble(D, set_size, ht, codes, [](int, std::uint64_t c) { return static_cast<Simplex>(c); });
  return L;
}

EMObject build_L(const FinAb& M, int n, int D, std::size_t budget) {
  auto L = build_L(static_cast<std::size_t>(M.order().get_ui()), n, D, budget);
  auto a = arithmetic(M);
  L.group_valued_ = true;
  L.group_ = M;
  L.add_ = a.add;
  L.neg_ = a.neg;
  return L;
}

EMObject build_K(const FinAb& M, int n, int D, std::size_t budget) {
  if (n < 0 || D < 0) throw InputError("build_K needs n >= 0 and D >= 0");
  auto ht = hom_tables(n, D);
  auto ar = arithmetic(M);
  const std::uint64_t base = static_cast<std::uint64_t>(ar.size);
  std::vector<int> gens;
  for (std::size_t j = 0; j < M.num_generators(); ++j) {
    FinAb::Element e(M.num_generators(), 0);
    e[j] = 1;
    gens.push_back(element_number(M, e));
  }
  std::vector<std::vector<std::uint64_t>> codes(D + 1);
  for (int k = 0; k <= D; ++k) {
    std::size_t len = ht.hom[k].size();
    check_code_range(base, len);
    // generators of Z^n(Delta[k]; M): constants for n = 0, coboundaries otherwise
    std::vector<std::vector<int>> cocycle_gens;
    if (n == 0) {
      for (int g : gens) cocycle_gens.emplace_back(len, g);
    } else {
      auto del = deletion_positions(n, k);
      std::size_t lower = monotone_maps(n - 1, k).size();
      for (std::size_t b = 0; b < lower; ++b)
        for (int g : gens) {
          std::vector<int> v(len, 0);
          for (std::size_t a = 0; a < len; ++a) {
            long c = 0;
            for (int i = 0; i <= n; ++i)
              if (static_cast<std::size_t>(del[a][i]) == b) c += i % 2 ? -1 : 1;
            v[a] = ar.times(c, g);
          }
          cocycle_gens.push_back(std::move(v));
        }
    }
    std::unordered_set<std::uint64_t> seen{0};
    std::vector<std::uint64_t> list{0};
    for (auto& g : cocycle_gens) {
      std::uint64_t gc = encode(g, base);
      if (seen.count(gc)) continue;
      for (std::size_t idx = 0; idx < list.size(); ++idx) {
        auto v = decode(list[idx], base, len);
        for (std::size_t a = 0; a < len; ++a) v[a] = ar.plus(v[a], g[a]);
        auto c = encode(v, base);
        if (seen.insert(c).second) {
          list.push_back(c);
          if (list.size() > budget)
            throw BudgetExceeded(fmt::format("K(M,{}) level {} exceeds the budget of {} simplices", n, k, budget));
        }
      }
    }
    std::sort(list.begin(), list.end());
    codes[k] = std::move(list);
  }
  EMObject K;
  K.kind_ = EMObject::Kind::K;
  K.n_ = n;
  K.group_valued_ = true;
  K.group_ = M;
  K.set_size_ = base;
  K.add_ = ar.add;
  K.neg_ = ar.neg;
  K.codes_ = codes;
  K.carrier_ = assemble(D, base, ht, codes, [&](int k, std::uint64_t c) {
    auto it = std::lower_bound(codes[k].begin(), codes[k].end(), c);
    if (it == codes[k].end() || *it != c) throw StructuralError("cocycles are not closed under structure maps");
    return static_cast<Simplex>(it - codes[k].begin());
  });
  return K;
}

SimplicialMap differential_map(const EMObject& L, const EMObject& K) {
  if (L.kind() != EMObject::Kind::L || K.kind() != EMObject::Kind::K || K.degree() != L.degree() + 1 ||
      !L.group_valued() || !(L.group() == K.group()))
    throw InputError("differential map needs L(M,n) and K(M,n+1) for the same M");
  int D = std::min(L.carrier().dim(), K.carrier().dim());
  int n = L.degree();
  auto ar = arithmetic(L.group());
  std::vector<Table> maps(D + 1);
  for (int k = 0; k <= D; ++k) {
    auto del = deletion_positions(n + 1, k);
    maps[k].resize(L.carrier().size(k));
    std::vector<int> w(del.size());
    for (std::size_t x = 0; x < maps[k].size(); ++x) {
      auto v = L.values(k, static_cast<Simplex>(x));
      for (std::size_t a = 0; a < del.size(); ++a) {
        int s = 0;
        for (int i = 0; i <= n + 1; ++i) s = ar.plus(s, i % 2 ? ar.neg[v[del[a][i]]] : v[del[a][i]]);
        w[a] = s;
      }
      maps[k][x] = K.from_values(k, w);
    }
  }
  return SimplicialMap(L.carrier(), K.carrier(), maps);
}

SimplicialMap inclusion_map(const EMObject& K, const EMObject& L) {
  if (K.kind() != EMObject::Kind::K || L.kind() != EMObject::Kind::L || K.degree() != L.degree() ||
      K.set_size() != L.set_size())
    throw InputError("inclusion needs K(M,n) and L(M,n) for the same M");
  int D = std::min(L.carrier().dim(), K.carrier().dim());
  std::vector<Table> maps(D + 1);
  for (int k = 0; k <= D; ++k)
    for (std::size_t x = 0; x < K.carrier().size(k); ++x) maps[k].push_back(L.index(k, K.code(k, x)));
  return SimplicialMap(K.carrier(), L.carrier(), maps);
}

Representability representability_check(const FinSimpSet& X, const FinAb& M, int n, std::size_t budget) {
  if (n < 0 || X.dim() < n) throw InputError("representability needs 0 <= n <= truncation of X");
  auto L = build_L(M, n, X.dim(), budget);
  auto Xu = forget_basepoint(X);
  auto maps = enumerate_maps(Xu, forget_basepoint(L.carrier()), budget);
  Representability r;
  r.maps = maps.size();
  mpz_class expected;
  mpz_pow_ui(expected.get_mpz_t(), M.order().get_mpz_t(), X.size(n));
  r.expected = expected.fits_ulong_p() ? expected.get_ui() : 0;
  if (mpz_class(static_cast<unsigned long>(r.maps)) != expected) return r;
  // evaluation at the identity of [n]
  auto homs = monotone_maps(n, n);
  std::size_t id_pos = 0;
  for (std::size_t a = 0; a < homs.size(); ++a) {
    bool id = true;
    for (int j = 0; j <= n; ++j) id = id && homs[a][j] == j;
    if (id) id_pos = a;
  }
  auto evaluate = [&](const SimplicialMap& f) {
    std::vector<int> c(X.size(n));
    for (std::size_t x = 0; x < X.size(n); ++x) c[x] = L.values(n, f(n, static_cast<Simplex>(x)))[id_pos];
    return c;
  };
  std::map<std::vector<int>, std::size_t> by_cochain;
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (!by_cochain.emplace(evaluate(maps[i]), i).second) return r;
  // the levelwise sum of two maps is the map of the summed cochain
  auto ar = arithmetic(M);
  std::size_t limit = std::min<std::size_t>(maps.size(), 24);
  for (std::size_t i = 0; i < limit; ++i)
    for (std::size_t j = 0; j < limit; ++j) {
      auto ci = evaluate(maps[i]), cj = evaluate(maps[j]);
      for (std::size_t x = 0; x < ci.size(); ++x) ci[x] = ar.plus(ci[x], cj[x]);
      const auto& h = maps[by_cochain.at(ci)];
      for (int k = 0; k <= h.dim(); ++k)
        for (std::size_t x = 0; x < X.size(k); ++x)
          if (h(k, x) != L.add(k, maps[i](k, x), maps[j](k, x))) return r;
    }
  r.holds = true;
  return r;
}

}  // namespace profet
