#include "profet/group.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "group_internal.hpp"
#include "profet/error.hpp"

namespace profet {

namespace detail {

std::vector<FinAb> groups_of_complex(const std::vector<DenseMatrix>& deltas,
                                     const std::vector<std::size_t>& dims, const FinAb& M,
                                     std::size_t degrees) {
  std::vector<FinAb> out(degrees, FinAb::trivial());
  for (auto [p, k] : primary_summands(M)) {
    auto h = primary_cohomology(deltas, dims, p, k, degrees);
    for (std::size_t n = 0; n < degrees; ++n) out[n] = out[n].direct_sum(h[n].group());
  }
  return out;
}

TowerCohomology colimit_of_complexes(const std::vector<std::vector<DenseMatrix>>& deltas,
                                     const std::vector<std::vector<std::size_t>>& dims,
                                     const std::vector<std::vector<DenseMatrix>>& inf, const FinAb& M,
                                     int top, const char* provenance) {
  std::size_t S = deltas.size();
  std::size_t D = static_cast<std::size_t>(top) + 1;
  TowerCohomology out;
  out.table.coefficient = M;
  out.table.provenance = provenance;
  out.table.groups.assign(D, FinAb::trivial());
  out.stabilized.assign(D, true);
  out.stage_groups.assign(S, std::vector<FinAb>(D));
  for (auto [p, k] : primary_summands(M)) {
    std::vector<std::vector<PrimaryCohomology>> h;
    for (std::size_t t = 0; t < S; ++t) {
      h.push_back(primary_cohomology(deltas[t], dims[t], p, k, D));
      for (std::size_t n = 0; n < D; ++n)
        out.stage_groups[t][n] = out.stage_groups[t][n].direct_sum(h[t][n].group());
    }
    for (std::size_t n = 0; n < D; ++n) {
      std::vector<FinAb> groups;
      std::vector<AbHom> maps;
      for (std::size_t t = 0; t < S; ++t) groups.push_back(h[t][n].group());
      for (std::size_t t = 0; t + 1 < S; ++t) maps.push_back(induced_hom(h[t][n], h[t + 1][n], inf[t][n]));
      auto est = colimit_estimate(groups, maps);
      out.table.groups[n] = out.table.groups[n].direct_sum(est.group);
      out.stabilized[n] = out.stabilized[n] && est.stabilized;
    }
  }
  return out;
}

}  // namespace detail

FiniteGroup::FiniteGroup(std::size_t n, std::vector<int> table, std::string name)
    : n_(n), table_(std::move(table)), inv_(n, -1), name_(std::move(name)) {
  if (n == 0) throw StructuralError("a group has at least one element");
  if (table_.size() != n * n) throw StructuralError("multiplication table has the wrong size");
  for (int v : table_)
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw StructuralError("table entry out of range");
  for (std::size_t a = 0; a < n; ++a)
    if (mul(0, a) != static_cast<int>(a) || mul(a, 0) != static_cast<int>(a))
      throw StructuralError("element 0 is not the identity");
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<char> seen(n, 0);
    for (std::size_t b = 0; b < n; ++b) {
      int c = mul(a, b);
      if (seen[c]) throw StructuralError("table row is not a permutation");
      seen[c] = 1;
      if (c == 0) inv_[a] = static_cast<int>(b);
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    if (mul(inv_[a], a) != 0) throw StructuralError("left and right inverses differ");
  auto assoc = [&](int a, int b, int c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw StructuralError(fmt::format("multiplication is not associative at ({}, {}, {})", a, b, c));
  };
  // exhaustive up to 2e7 triples, a fixed pseudo-random sample beyond
  if (n * n * n <= 20000000) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    for (int t = 0; t < 2000000; ++t) assoc(pick(rng), pick(rng), pick(rng));
  }
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw InputError("cyclic group of order 0");
  std::vector<int> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<int>((a + b) % n);
  return FiniteGroup(n, std::move(t), fmt::format("Z/{}", n));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& G, const FiniteGroup& H) {
  std::size_t g = G.order(), h = H.order(), n = g * h;
  std::vector<int> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      t[a * n + b] = static_cast<int>(G.mul(a / h, b / h) * h + H.mul(a % h, b % h));
  return FiniteGroup(n, std::move(t), fmt::format("{} x {}", G.name(), H.name()));
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

nlohmann::json FiniteGroup::to_json() const {
  return {{"order", n_}, {"table", table_}, {"name", name_}};
}

FiniteGroup FiniteGroup::from_json(const nlohmann::json& j) {
  try {
    return FiniteGroup(j.at("order").get<std::size_t>(), j.at("table").get<std::vector<int>>(),
                       j.value("name", std::string()));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(fmt::format("malformed group: {}", e.what()));
  }
}

bool is_homomorphism(const FiniteGroup& G, const FiniteGroup& H, const std::vector<int>& map) {
  if (map.size() != G.order()) return false;
  for (int v : map)
    if (v < 0 || static_cast<std::size_t>(v) >= H.order()) return false;
  for (std::size_t a = 0; a < G.order(); ++a)
    for (std::size_t b = 0; b < G.order(); ++b)
      if (map[G.mul(a, b)] != H.mul(map[a], map[b])) return false;
  return true;
}

namespace {

std::size_t checked_pow(std::size_t base, int e, std::size_t budget) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (base != 0 && r > budget / base) throw BudgetExceeded("bar complex exceeds the budget");
    r *= base;
  }
  return r;
}

// Normalized tuples: digit g - 1 for g in G \ {1}, first entry most significant.
std::vector<int> decode(std::size_t x, int n, std::size_t base) {
  std::vector<int> g(n);
  for (int i = n; i-- > 0;) {
    g[i] = static_cast<int>(x % base) + 1;
    x /= base;
  }
  return g;
}

}  // namespace

std::vector<DenseMatrix> bar_coboundaries(const FiniteGroup& G, int top, std::size_t budget) {
  if (top < 0) throw InputError("negative top degree");
  std::size_t base = G.order() - 1;
  std::vector<DenseMatrix> out;
  for (int n = 0; n <= top; ++n) {
    std::size_t cols = checked_pow(base, n, budget), rows = checked_pow(base, n + 1, budget);
    if (cols != 0 && rows > budget / cols) throw BudgetExceeded("bar complex exceeds the budget");
    DenseMatrix d(rows, cols);
    for (std::size_t x = 0; x < rows; ++x) {
      auto g = decode(x, n + 1, base);
      auto col_of = [&](const std::vector<int>& t) -> std::ptrdiff_t {
        std::size_t c = 0;
        for (int v : t) {
          if (v == 0) return -1;
          c = c * base + (v - 1);
        }
        return static_cast<std::ptrdiff_t>(c);
      };
      auto add = [&](const std::vector<int>& t, std::int64_t s) {
        auto c = col_of(t);
        if (c >= 0) d(x, c) += s;
      };
      add(std::vector<int>(g.begin() + 1, g.end()), 1);
      for (int j = 1; j <= n; ++j) {
        std::vector<int> t;
        for (int i = 0; i < n + 1; ++i) {
          if (i == j) continue;
          t.push_back(i == j - 1 ? G.mul(g[j - 1], g[j]) : g[i]);
        }
        add(t, (j % 2) ? -1 : 1);
      }
      add(std::vector<int>(g.begin(), g.end() - 1), ((n + 1) % 2) ? -1 : 1);
    }
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

std::vector<std::size_t> bar_dims(const FiniteGroup& G, int top) {
  std::vector<std::size_t> dims;
  for (int n = 0; n <= top; ++n) dims.push_back(checked_pow(G.order() - 1, n, SIZE_MAX));
  return dims;
}

}  // namespace

CohomologyTable bar_cohomology(const FiniteGroup& G, const FinAb& M, int top, std::size_t budget) {
  auto deltas = bar_coboundaries(G, top, budget);
  CohomologyTable t;
  t.coefficient = M;
  t.provenance = "normalized bar complex";
  t.groups = detail::groups_of_complex(deltas, bar_dims(G, top), M, top + 1);
  return t;
}

void GroupTower::validate() const {
  if (stages.empty()) throw StructuralError("a tower has at least one stage");
  if (maps.size() + 1 != stages.size()) throw StructuralError("a tower needs one surjection per step");
  for (std::size_t t = 0; t + 1 < stages.size(); ++t) {
    if (!is_homomorphism(stages[t + 1], stages[t], maps[t]))
      throw StructuralError(fmt::format("tower map {} is not a homomorphism", t));
    std::vector<char> hit(stages[t].order(), 0);
    for (int v : maps[t]) hit[v] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end())
      throw StructuralError(fmt::format("tower map {} is not onto", t));
  }
}

nlohmann::json GroupTower::to_json() const {
  nlohmann::json j{{"stages", nlohmann::json::array()}, {"maps", maps}};
  for (auto& g : stages) j["stages"].push_back(g.to_json());
  return j;
}

GroupTower GroupTower::from_json(const nlohmann::json& j) {
  GroupTower T;
  try {
    for (auto& g : j.at("stages")) T.stages.push_back(FiniteGroup::from_json(g));
    T.maps = j.at("maps").get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(fmt::format("malformed group tower: {}", e.what()));
  }
  T.validate();
  return T;
}

TowerCohomology profinite_cohomology(const GroupTower& T, const FinAb& M, int top) {
  T.validate();
  std::vector<std::vector<DenseMatrix>> deltas;
  std::vector<std::vector<std::size_t>> dims;
  std::vector<std::vector<DenseMatrix>> inf;
  for (auto& G : T.stages) {
    deltas.push_back(bar_coboundaries(G, top));
    dims.push_back(bar_dims(G, top));
  }
  for (std::size_t t = 0; t + 1 < T.stages.size(); ++t) {
    const auto& pi = T.maps[t];
    std::size_t src = T.stages[t].order() - 1, tgt = T.stages[t + 1].order() - 1;
    std::vector<DenseMatrix> step;
    for (int n = 0; n <= top; ++n) {
      // (inf f)(g'_1..g'_n) = f(pi g'_1..pi g'_n); zero when some pi g'_j = 1
      DenseMatrix m(dims[t + 1][n], dims[t][n]);
      for (std::size_t x = 0; x < m.rows; ++x) {
        auto g = decode(x, n, tgt);
        std::size_t c = 0;
        bool degenerate = false;
        for (int v : g) {
          int w = pi[v];
          if (w == 0) degenerate = true;
          c = c * src + (w - 1);
        }
        if (!degenerate) m(x, c) = 1;
      }
      step.push_back(std::move(m));
    }
    inf.push_back(std::move(step));
  }
  return detail::colimit_of_complexes(deltas, dims, inf, M, top, "profinite colimit, bar complexes");
}

}  // namespace profet
