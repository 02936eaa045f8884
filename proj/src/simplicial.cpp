#include "profet/simplicial.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace profet {

namespace {

[[noreturn]] void fail(const std::string& what) { throw StructuralError(what); }

void check_table(const Table& t, std::size_t from, std::size_t to, const char* what) {
  if (t.size() != from) fail(fmt::format("{} table has {} entries, expected {}", what, t.size(), from));
  for (auto v : t)
    if (v < 0 || static_cast<std::size_t>(v) >= to) fail(fmt::format("{} value {} out of range", what, v));
}

}  // namespace

FinSimpSet::FinSimpSet(int D, std::vector<std::size_t> sizes, std::vector<std::vector<Table>> faces,
                       std::vector<std::vector<Table>> degens, std::optional<Simplex> basepoint)
    : D_(D),
      sizes_(std::move(sizes)),
      faces_(std::move(faces)),
      degens_(std::move(degens)),
      basepoint_(basepoint) {
  if (D_ < 0) fail("negative truncation");
  if (sizes_.size() != static_cast<std::size_t>(D_ + 1)) fail("level count does not match truncation");
  faces_.resize(D_ + 1);
  degens_.resize(D_ + 1);
  for (int k = 0; k <= D_; ++k) {
    std::size_t nf = k >= 1 ? k + 1 : 0, nd = k < D_ ? k + 1 : 0;
    if (faces_[k].size() != nf) fail(fmt::format("level {} needs {} face maps", k, nf));
    if (degens_[k].size() != nd) fail(fmt::format("level {} needs {} degeneracies", k, nd));
    for (auto& t : faces_[k]) check_table(t, sizes_[k], sizes_[k - 1], "face");
    for (auto& t : degens_[k]) check_table(t, sizes_[k], sizes_[k + 1], "degeneracy");
  }
  if (basepoint_ && (*basepoint_ < 0 || static_cast<std::size_t>(*basepoint_) >= sizes_[0]))
    fail("basepoint out of range");

  // d_i d_j = d_{j-1} d_i for i < j
  for (int k = 2; k <= D_; ++k)
    for (int j = 1; j <= k; ++j)
      for (int i = 0; i < j; ++i)
        for (std::size_t x = 0; x < sizes_[k]; ++x)
          if (face(k - 1, i, face(k, j, x)) != face(k - 1, j - 1, face(k, i, x)))
            fail(fmt::format("d{} d{} identity fails in level {}", i, j, k));
  // s_i s_j = s_{j+1} s_i for i <= j
  for (int k = 0; k + 2 <= D_; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= j; ++i)
        for (std::size_t x = 0; x < sizes_[k]; ++x)
          if (degen(k + 1, i, degen(k, j, x)) != degen(k + 1, j + 1, degen(k, i, x)))
            fail(fmt::format("s{} s{} identity fails in level {}", i, j, k));
  // mixed identities: d_i s_j : X_k -> X_k
  for (int k = 0; k < D_; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= k + 1; ++i)
        for (std::size_t x = 0; x < sizes_[k]; ++x) {
          Simplex lhs = face(k + 1, i, degen(k, j, x));
          Simplex rhs;
          if (i == j || i == j + 1)
            rhs = static_cast<Simplex>(x);
          else if (i < j)
            rhs = degen(k - 1, j - 1, face(k, i, x));
          else
            rhs = degen(k - 1, j, face(k, i - 1, x));
          if (lhs != rhs) fail(fmt::format("d{} s{} identity fails in level {}", i, j, k));
        }

  witness_.resize(D_ + 1);
  root_dim_.resize(D_ + 1);
  for (int k = 0; k <= D_; ++k) {
    witness_[k].assign(sizes_[k], {-1, -1});
    root_dim_[k].assign(sizes_[k], k);
    if (k == 0) continue;
    for (int i = 0; i < k; ++i)
      for (std::size_t z = 0; z < sizes_[k - 1]; ++z) {
        Simplex x = degen(k - 1, i, z);
        if (witness_[k][x].first < 0) {
          witness_[k][x] = {i, static_cast<Simplex>(z)};
          root_dim_[k][x] = root_dim_[k - 1][z];
        }
      }
  }
  if (basepoint_)
    for (int k = 0; k <= D_; ++k) base_at(k);
}

Simplex FinSimpSet::base_at(int k) const {
  if (!basepoint_) fail("unpointed simplicial set has no basepoint");
  Simplex b = *basepoint_;
  for (int j = 0; j < k; ++j) b = degen(j, 0, b);
  return b;
}

std::vector<Simplex> FinSimpSet::nondegenerate(int k) const {
  std::vector<Simplex> out;
  for (std::size_t x = 0; x < sizes_[k]; ++x)
    if (!is_degenerate(k, x)) out.push_back(static_cast<Simplex>(x));
  return out;
}

std::vector<std::size_t> FinSimpSet::nondegenerate_census() const {
  std::vector<std::size_t> c(D_ + 1);
  for (int k = 0; k <= D_; ++k) c[k] = nondegenerate(k).size();
  return c;
}

FinSimpSet FinSimpSet::truncate(int D) const {
  if (D < 0 || D > D_) fail("truncation can only be lowered");
  std::vector<std::size_t> sizes(sizes_.begin(), sizes_.begin() + D + 1);
  std::vector<std::vector<Table>> f(faces_.begin(), faces_.begin() + D + 1);
  std::vector<std::vector<Table>> d(degens_.begin(), degens_.begin() + D + 1);
  d[D].clear();
  return FinSimpSet(D, std::move(sizes), std::move(f), std::move(d), basepoint_);
}

nlohmann::json FinSimpSet::to_json() const {
  nlohmann::json j;
  j["truncation"] = D_;
  j["levels"] = sizes_;
  j["faces"] = faces_;
  j["degeneracies"] = degens_;
  j["basepoint"] = basepoint_ ? nlohmann::json(*basepoint_) : nlohmann::json(nullptr);
  return j;
}

FinSimpSet FinSimpSet::from_json(const nlohmann::json& j) {
  try {
    std::optional<Simplex> bp;
    if (j.contains("basepoint") && !j["basepoint"].is_null()) bp = j["basepoint"].get<Simplex>();
    return FinSimpSet(j.at("truncation").get<int>(), j.at("levels").get<std::vector<std::size_t>>(),
                      j.at("faces").get<std::vector<std::vector<Table>>>(),
                      j.at("degeneracies").get<std::vector<std::vector<Table>>>(), bp);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed simplicial set JSON: ") + e.what());
  }
}

SimplicialMap::SimplicialMap(const FinSimpSet& X, const FinSimpSet& Y, std::vector<Table> level_maps)
    : maps_(std::move(level_maps)) {
  int Dm = std::min(X.dim(), Y.dim());
  if (maps_.size() != static_cast<std::size_t>(Dm + 1)) fail("map must cover levels up to min truncation");
  for (int k = 0; k <= Dm; ++k) check_table(maps_[k], X.size(k), Y.size(k), "level map");
  for (int k = 1; k <= Dm; ++k)
    for (int i = 0; i <= k; ++i)
      for (std::size_t x = 0; x < X.size(k); ++x)
        if (Y.face(k, i, maps_[k][x]) != maps_[k - 1][X.face(k, i, x)])
          fail(fmt::format("map does not commute with d{} in level {}", i, k));
  for (int k = 0; k < Dm; ++k)
    for (int i = 0; i <= k; ++i)
      for (std::size_t x = 0; x < X.size(k); ++x)
        if (Y.degen(k, i, maps_[k][x]) != maps_[k + 1][X.degen(k, i, x)])
          fail(fmt::format("map does not commute with s{} in level {}", i, k));
  if (X.pointed() && Y.pointed() && maps_[0][*X.basepoint()] != *Y.basepoint())
    fail("map does not preserve the basepoint");
}

SimplicialMap SimplicialMap::after(const SimplicialMap& first) const {
  SimplicialMap r;
  std::size_t L = std::min(maps_.size(), first.maps_.size());
  r.maps_.resize(L);
  for (std::size_t k = 0; k < L; ++k) {
    r.maps_[k].resize(first.maps_[k].size());
    for (std::size_t x = 0; x < first.maps_[k].size(); ++x) r.maps_[k][x] = maps_[k][first.maps_[k][x]];
  }
  return r;
}

std::size_t SubComplex::count(int k) const {
  return static_cast<std::size_t>(std::count(member[k].begin(), member[k].end(), 1));
}

void Tower::validate() const {
  if (stages.empty()) fail("tower has no stages");
  if (bonds.size() + 1 != stages.size()) fail("tower needs one bond per consecutive pair of stages");
  for (std::size_t t = 0; t < bonds.size(); ++t) {
    const auto& src = stages[t + 1];
    const auto& dst = stages[t];
    SimplicialMap check(src, dst, bonds[t].level_maps());
    (void)check;
  }
}

nlohmann::json Tower::to_json() const {
  nlohmann::json j;
  j["stages"] = nlohmann::json::array();
  for (auto& s : stages) j["stages"].push_back(s.to_json());
  j["bonds"] = nlohmann::json::array();
  for (auto& b : bonds) j["bonds"].push_back(b.level_maps());
  return j;
}

Tower Tower::from_json(const nlohmann::json& j) {
  Tower t;
  try {
    for (auto& s : j.at("stages")) t.stages.push_back(FinSimpSet::from_json(s));
    const auto& b = j.contains("bonds") ? j["bonds"] : nlohmann::json::array();
    if (b.size() + 1 != t.stages.size()) throw InputError("tower needs one bond per consecutive pair of stages");
    for (std::size_t i = 0; i < b.size(); ++i)
      t.bonds.emplace_back(t.stages[i + 1], t.stages[i], b[i].get<std::vector<Table>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed tower JSON: ") + e.what());
  }
  return t;
}

// ---------------------------------------------------------------------------
// constructors

namespace {

using Seq = std::vector<int>;

}  // namespace

std::vector<Seq> monotone_maps(int k, int n) {
  std::vector<Seq> out;
  Seq s(k + 1, 0);
  while (true) {
    out.push_back(s);
    int i = k;
    while (i >= 0 && s[i] == n) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j <= k; ++j) s[j] = s[i];
  }
  return out;
}

namespace {

Seq delete_at(int, int i, const Seq& s) {
  Seq r = s;
  r.erase(r.begin() + i);
  return r;
}

Seq repeat_at(int, int i, const Seq& s) {
  Seq r = s;
  r.insert(r.begin() + i, s[i]);
  return r;
}

}  // namespace

FinSimpSet standard_simplex(int n, int D) {
  if (n < 0 || D < 0) throw InputError("standard_simplex needs n, D >= 0");
  std::vector<std::vector<Seq>> levels(D + 1);
  for (int k = 0; k <= D; ++k) levels[k] = monotone_maps(k, n);
  return build_from_keys<Seq>(D, levels, delete_at, repeat_at);
}

FinSimpSet from_cells(int D, const std::vector<Cell>& cells, std::optional<int> basepoint_cell) {
  using Key = std::pair<int, Seq>;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = cells[c];
    if (cell.dim < 0) throw InputError("cell of negative dimension");
    if (cell.faces.size() != static_cast<std::size_t>(cell.dim ? cell.dim + 1 : 0))
      throw InputError(fmt::format("cell {} needs {} faces", c, cell.dim + 1));
    for (auto& f : cell.faces) {
      if (f.cell < 0 || static_cast<std::size_t>(f.cell) >= c) throw InputError("faces must refer to earlier cells");
      const auto& s = f.surjection;
      int m = cells[f.cell].dim;
      bool ok = s.size() == static_cast<std::size_t>(cell.dim) && !s.empty() && s.front() == 0 && s.back() == m;
      for (std::size_t i = 1; ok && i < s.size(); ++i) ok = s[i] == s[i - 1] || s[i] == s[i - 1] + 1;
      if (!ok) throw InputError(fmt::format("face of cell {} has an invalid surjection", c));
    }
  }
  std::vector<std::vector<Key>> levels(D + 1);
  for (int k = 0; k <= D; ++k)
    for (std::size_t c = 0; c < cells.size(); ++c) {
      int m = cells[c].dim;
      if (m > k) continue;
      for (auto& s : monotone_maps(k, m))
        if (s.front() == 0 && s.back() == m && std::all_of(s.begin() + 1, s.end(), [&, i = 0](int) mutable {
              ++i;
              return s[i] - s[i - 1] <= 1;
            }))
          levels[k].push_back({static_cast<int>(c), s});
    }
  // d_i (c, s): if s with entry i removed is still onto [m], keep the cell;
  // otherwise it misses j = s[i] and factors through the face d_j c.
  std::function<Key(int, int, const Key&)> face = [&](int, int i, const Key& key) -> Key {
    const auto& [c, s] = key;
    Seq t = s;
    t.erase(t.begin() + i);
    int j = s[i];
    bool onto = std::find(t.begin(), t.end(), j) != t.end();
    if (onto) return {c, t};
    for (auto& v : t)
      if (v > j) --v;
    const auto& f = cells[c].faces[j];
    Seq r(t.size());
    for (std::size_t a = 0; a < t.size(); ++a) r[a] = f.surjection[t[a]];
    return {f.cell, r};
  };
  std::function<Key(int, int, const Key&)> degen = [](int, int i, const Key& key) -> Key {
    Seq t = key.second;
    t.insert(t.begin() + i, t[i]);
    return {key.first, t};
  };
  std::optional<Key> bp;
  if (basepoint_cell) {
    if (cells.at(*basepoint_cell).dim != 0) throw InputError("basepoint cell must be a vertex");
    bp = Key{*basepoint_cell, Seq{0}};
  }
  return build_from_keys<Key>(D, levels, face, degen, bp);
}

FinSimpSet moore_space(int m, int D) {
  if (m < 2 || D < 2) throw InputError("moore_space needs m >= 2 and D >= 2");
  // edges c_1 .. c_{m-1} with c_{i+1} = c_i + c_1 and m c_1 = 0
  std::vector<Cell> cells{{0, {}}};
  for (int i = 1; i < m; ++i) cells.push_back({1, {{0, {0}}, {0, {0}}}});
  auto edge = [](int i) { return CellRef{i, {0, 1}}; };
  for (int i = 1; i + 1 < m; ++i) cells.push_back({2, {edge(1), edge(i + 1), edge(i)}});
  cells.push_back({2, {edge(1), CellRef{0, {0, 0}}, edge(m - 1)}});
  return from_cells(D, cells, 0);
}

FinSimpSet boundary_simplex(int n, int D) {
  if (n < 1 || D < 0) throw InputError("boundary_simplex needs n >= 1");
  std::vector<std::vector<Seq>> levels(D + 1);
  for (int k = 0; k <= D; ++k)
    for (auto& s : monotone_maps(k, n)) {
      std::vector<char> hit(n + 1, 0);
      for (int v : s) hit[v] = 1;
      if (std::count(hit.begin(), hit.end(), 1) <= n) levels[k].push_back(s);
    }
  return build_from_keys<Seq>(D, levels, delete_at, repeat_at);
}

FinSimpSet point(int D) {
  std::vector<std::size_t> sizes(D + 1, 1);
  std::vector<std::vector<Table>> f(D + 1), d(D + 1);
  for (int k = 0; k <= D; ++k) {
    if (k >= 1) f[k].assign(k + 1, Table{0});
    if (k < D) d[k].assign(k + 1, Table{0});
  }
  return FinSimpSet(D, sizes, f, d, Simplex{0});
}

FinSimpSet sphere0(int D) { return add_basepoint(point(D)); }

FinSimpSet sphere(int m, int D) {
  if (m < 1 || D < m) throw InputError("sphere(m, D) needs 1 <= m <= D");
  auto X = standard_simplex(m, D);
  // boundary simplices are exactly the non-surjective sequences
  SubComplex A;
  A.member.resize(D + 1);
  for (int k = 0; k <= D; ++k) {
    auto all = monotone_maps(k, m);
    A.member[k].resize(all.size());
    for (std::size_t a = 0; a < all.size(); ++a) {
      std::vector<char> hit(m + 1, 0);
      for (int v : all[a]) hit[v] = 1;
      A.member[k][a] = std::count(hit.begin(), hit.end(), 1) <= m;
    }
  }
  return quotient(X, A);
}

SubComplex image_of(const SimplicialMap& f, const FinSimpSet& Y) {
  SubComplex A;
  A.member.resize(Y.dim() + 1);
  for (int k = 0; k <= Y.dim(); ++k) {
    A.member[k].assign(Y.size(k), 0);
    if (k <= f.dim())
      for (auto y : f.level_maps()[k]) A.member[k][y] = 1;
  }
  return A;
}

SubComplex basepoint_sub(const FinSimpSet& X) {
  SubComplex A;
  A.member.resize(X.dim() + 1);
  for (int k = 0; k <= X.dim(); ++k) {
    A.member[k].assign(X.size(k), 0);
    A.member[k][X.base_at(k)] = 1;
  }
  return A;
}

void check_closed(const FinSimpSet& X, const SubComplex& A) {
  if (A.member.size() != static_cast<std::size_t>(X.dim() + 1)) fail("subobject has wrong number of levels");
  for (int k = 0; k <= X.dim(); ++k)
    if (A.member[k].size() != X.size(k)) fail(fmt::format("subobject level {} has wrong size", k));
  for (int k = 0; k <= X.dim(); ++k)
    for (std::size_t x = 0; x < X.size(k); ++x) {
      if (!A.contains(k, x)) continue;
      if (k >= 1)
        for (int i = 0; i <= k; ++i)
          if (!A.contains(k - 1, X.face(k, i, x))) fail("subobject is not closed under faces");
      if (k < X.dim())
        for (int i = 0; i <= k; ++i)
          if (!A.contains(k + 1, X.degen(k, i, x))) fail("subobject is not closed under degeneracies");
    }
}

Skeleton sub_simplicial_set(const FinSimpSet& X, const SubComplex& A) {
  check_closed(X, A);
  int D = X.dim();
  std::vector<Table> incl(D + 1), renum(D + 1);
  std::vector<std::size_t> sizes(D + 1);
  for (int k = 0; k <= D; ++k) {
    renum[k].assign(X.size(k), -1);
    for (std::size_t x = 0; x < X.size(k); ++x)
      if (A.contains(k, x)) {
        renum[k][x] = static_cast<Simplex>(incl[k].size());
        incl[k].push_back(static_cast<Simplex>(x));
      }
    sizes[k] = incl[k].size();
  }
  std::vector<std::vector<Table>> f(D + 1), d(D + 1);
  for (int k = 0; k <= D; ++k) {
    if (k >= 1)
      for (int i = 0; i <= k; ++i) {
        Table t(sizes[k]);
        for (std::size_t a = 0; a < sizes[k]; ++a) t[a] = renum[k - 1][X.face(k, i, incl[k][a])];
        f[k].push_back(std::move(t));
      }
    if (k < D)
      for (int i = 0; i <= k; ++i) {
        Table t(sizes[k]);
        for (std::size_t a = 0; a < sizes[k]; ++a) t[a] = renum[k + 1][X.degen(k, i, incl[k][a])];
        d[k].push_back(std::move(t));
      }
  }
  std::optional<Simplex> bp;
  if (X.pointed() && A.contains(0, *X.basepoint())) bp = renum[0][*X.basepoint()];
  FinSimpSet S(D, sizes, std::move(f), std::move(d), bp);
  SimplicialMap inc(S, X, incl);
  return {std::move(S), std::move(inc), A};
}

Skeleton skeleton(const FinSimpSet& X, int p) {
  if (p < 0) throw InputError("skeleton needs p >= 0");
  SubComplex A;
  A.member.resize(X.dim() + 1);
  for (int k = 0; k <= X.dim(); ++k) {
    A.member[k].resize(X.size(k));
    for (std::size_t x = 0; x < X.size(k); ++x) A.member[k][x] = X.root_dim(k, x) <= p;
  }
  return sub_simplicial_set(X, A);
}

Quotient quotient_with_map(const FinSimpSet& X, const SubComplex& A) {
  check_closed(X, A);
  int D = X.dim();
  // basepoint is index 0 in every level; A collapses onto it
  std::vector<Table> proj(D + 1);
  std::vector<std::size_t> sizes(D + 1);
  for (int k = 0; k <= D; ++k) {
    proj[k].resize(X.size(k));
    Simplex next = 1;
    for (std::size_t x = 0; x < X.size(k); ++x) proj[k][x] = A.contains(k, x) ? 0 : next++;
    sizes[k] = static_cast<std::size_t>(next);
  }
  std::vector<std::vector<Simplex>> rep(D + 1);
  for (int k = 0; k <= D; ++k) {
    rep[k].assign(sizes[k], -1);
    for (std::size_t x = 0; x < X.size(k); ++x)
      if (!A.contains(k, x)) rep[k][proj[k][x]] = static_cast<Simplex>(x);
  }
  std::vector<std::vector<Table>> f(D + 1), d(D + 1);
  for (int k = 0; k <= D; ++k) {
    if (k >= 1)
      for (int i = 0; i <= k; ++i) {
        Table t(sizes[k], 0);
        for (std::size_t a = 1; a < sizes[k]; ++a) t[a] = proj[k - 1][X.face(k, i, rep[k][a])];
        f[k].push_back(std::move(t));
      }
    if (k < D)
      for (int i = 0; i <= k; ++i) {
        Table t(sizes[k], 0);
        for (std::size_t a = 1; a < sizes[k]; ++a) t[a] = proj[k + 1][X.degen(k, i, rep[k][a])];
        d[k].push_back(std::move(t));
      }
  }
  FinSimpSet Q(D, sizes, std::move(f), std::move(d), Simplex{0});
  // the projection forgets the basepoint of X unless A contains it
  SimplicialMap p(forget_basepoint(X), Q, proj);
  return {std::move(Q), std::move(p)};
}

FinSimpSet forget_basepoint(const FinSimpSet& X) {
  std::vector<std::vector<Table>> f(X.dim() + 1), d(X.dim() + 1);
  for (int k = 0; k <= X.dim(); ++k) {
    if (k >= 1)
      for (int i = 0; i <= k; ++i) f[k].push_back(X.face_table(k, i));
    if (k < X.dim())
      for (int i = 0; i <= k; ++i) d[k].push_back(X.degen_table(k, i));
  }
  return FinSimpSet(X.dim(), X.sizes(), std::move(f), std::move(d), std::nullopt);
}

FinSimpSet with_basepoint(const FinSimpSet& X, Simplex b) {
  auto j = X.to_json();
  j["basepoint"] = b;
  return FinSimpSet::from_json(j);
}

FinSimpSet quotient(const FinSimpSet& X, const SubComplex& A) { return quotient_with_map(X, A).space; }

FinSimpSet product(const FinSimpSet& X, const FinSimpSet& Y) {
  int D = std::min(X.dim(), Y.dim());
  std::vector<std::size_t> sizes(D + 1);
  for (int k = 0; k <= D; ++k) sizes[k] = X.size(k) * Y.size(k);
  auto idx = [&](int k, Simplex a, Simplex b) { return static_cast<Simplex>(a * Y.size(k) + b); };
  std::vector<std::vector<Table>> f(D + 1), d(D + 1);
  for (int k = 0; k <= D; ++k) {
    if (k >= 1)
      for (int i = 0; i <= k; ++i) {
        Table t(sizes[k]);
        for (std::size_t a = 0; a < X.size(k); ++a)
          for (std::size_t b = 0; b < Y.size(k); ++b)
            t[idx(k, a, b)] = idx(k - 1, X.face(k, i, a), Y.face(k, i, b));
        f[k].push_back(std::move(t));
      }
    if (k < D)
      for (int i = 0; i <= k; ++i) {
        Table t(sizes[k]);
        for (std::size_t a = 0; a < X.size(k); ++a)
          for (std::size_t b = 0; b < Y.size(k); ++b)
            t[idx(k, a, b)] = idx(k + 1, X.degen(k, i, a), Y.degen(k, i, b));
        d[k].push_back(std::move(t));
      }
  }
  std::optional<Simplex> bp;
  if (X.pointed() && Y.pointed()) bp = idx(0, *X.basepoint(), *Y.basepoint());
  return FinSimpSet(D, sizes, std::move(f), std::move(d), bp);
}

FinSimpSet disjoint_union(const FinSimpSet& X, const FinSimpSet& Y) {
  int D = std::min(X.dim(), Y.dim());
  std::vector<std::size_t> sizes(D + 1);
  for (int k = 0; k <= D; ++k) sizes[k] = X.size(k) + Y.size(k);
  std::vector<std::vector<Table>> f(D + 1), d(D + 1);
  auto glue = [&](const Table& tx, const Table& ty, std::size_t offset) {
    Table t = tx;
    for (auto v : ty) t.push_back(static_cast<Simplex>(v + offset));
    return t;
  };
  for (int k = 0; k <= D; ++k) {
    if (k >= 1)
      for (int i = 0; i <= k; ++i) f[k].push_back(glue(X.face_table(k, i), Y.face_table(k, i), X.size(k - 1)));
    if (k < D)
      for (int i = 0; i <= k; ++i)
        d[k].push_back(glue(X.degen_table(k, i), Y.degen_table(k, i), X.size(k + 1)));
  }
  return FinSimpSet(D, sizes, std::move(f), std::move(d), std::nullopt);
}

FinSimpSet add_basepoint(const FinSimpSet& X) {
  return with_basepoint(disjoint_union(point(X.dim()), X), 0);
}

FinSimpSet smash(const FinSimpSet& X, const FinSimpSet& Y) {
  if (!X.pointed() || !Y.pointed()) fail("smash product needs pointed inputs");
  auto P = product(X, Y);
  SubComplex W;
  W.member.resize(P.dim() + 1);
  for (int k = 0; k <= P.dim(); ++k) {
    W.member[k].assign(P.size(k), 0);
    Simplex bx = X.base_at(k), by = Y.base_at(k);
    for (std::size_t a = 0; a < X.size(k); ++a)
      for (std::size_t b = 0; b < Y.size(k); ++b)
        if (static_cast<Simplex>(a) == bx || static_cast<Simplex>(b) == by) W.member[k][a * Y.size(k) + b] = 1;
  }
  return quotient(P, W);
}

std::vector<int> pi0_labels(const FinSimpSet& X) {
  std::vector<int> parent(X.size(0));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  if (X.dim() >= 1)
    for (std::size_t e = 0; e < X.size(1); ++e) {
      int a = find(X.face(1, 0, e)), b = find(X.face(1, 1, e));
      if (a != b) parent[a] = b;
    }
  std::vector<int> label(X.size(0), -1), root_label(X.size(0), -1);
  int next = 0;
  for (std::size_t v = 0; v < X.size(0); ++v) {
    int r = find(static_cast<int>(v));
    if (root_label[r] < 0) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

std::size_t pi0(const FinSimpSet& X) {
  auto l = pi0_labels(X);
  return l.empty() ? 0 : static_cast<std::size_t>(*std::max_element(l.begin(), l.end()) + 1);
}

// ---------------------------------------------------------------------------
// map enumeration

namespace {

struct MapSearch {
  const FinSimpSet& X;
  const FinSimpSet& Y;
  int Dm;
  bool injective;
  std::size_t max_nodes;
  std::size_t nodes = 0;
  std::vector<Table> f;
  std::vector<std::vector<char>> used;
  std::vector<std::vector<Simplex>> nondeg;
  std::vector<std::map<Simplex, std::vector<Simplex>>> by_d0;
  std::vector<SimplicialMap> found;
  bool stop_at_first;

  MapSearch(const FinSimpSet& x, const FinSimpSet& y, bool inj, std::size_t budget, bool first)
      : X(x), Y(y), Dm(std::min(x.dim(), y.dim())), injective(inj), max_nodes(budget), stop_at_first(first) {
    f.resize(Dm + 1);
    used.resize(Dm + 1);
    nondeg.resize(Dm + 1);
    by_d0.resize(Dm + 1);
    for (int k = 0; k <= Dm; ++k) {
      f[k].assign(X.size(k), -1);
      used[k].assign(Y.size(k), 0);
      nondeg[k] = X.nondegenerate(k);
      if (k >= 1)
        for (std::size_t y = 0; y < Y.size(k); ++y) by_d0[k][Y.face(k, 0, y)].push_back(static_cast<Simplex>(y));
    }
  }

  void tick() {
    if (++nodes > max_nodes)
      throw BudgetExceeded(fmt::format("map enumeration exceeded {} search steps", max_nodes));
  }

  // Fills degenerate simplices of level k; false on an injectivity clash.
  bool fill_degenerate(int k, std::vector<Simplex>& touched) {
    for (std::size_t x = 0; x < X.size(k); ++x) {
      if (!X.is_degenerate(k, x)) continue;
      auto [i, z] = X.degeneracy_witness(k, x);
      Simplex y = Y.degen(k - 1, i, f[k - 1][z]);
      if (injective && used[k][y]) return false;
      f[k][x] = y;
      if (injective) used[k][y] = 1;
      touched.push_back(static_cast<Simplex>(x));
    }
    return true;
  }

  void undo(int k, const std::vector<Simplex>& touched) {
    for (auto x : touched) {
      if (injective) used[k][f[k][x]] = 0;
      f[k][x] = -1;
    }
  }

  bool search(int k, std::size_t slot) {
    if (k > Dm) {
      found.emplace_back(X, Y, f);
      return stop_at_first;
    }
    if (slot == 0 && k >= 1) {
      std::vector<Simplex> touched;
      bool ok = fill_degenerate(k, touched);
      bool done = ok && search_slot(k, 0);
      undo(k, touched);
      return done;
    }
    return search_slot(k, slot);
  }

  bool search_slot(int k, std::size_t slot) {
    if (slot == nondeg[k].size()) return search(k + 1, 0);
    Simplex x = nondeg[k][slot];
    auto try_value = [&](Simplex y) {
      tick();
      if (injective && used[k][y]) return false;
      for (int i = 1; i <= k; ++i)
        if (Y.face(k, i, y) != f[k - 1][X.face(k, i, x)]) return false;
      f[k][x] = y;
      if (injective) used[k][y] = 1;
      bool done = search_slot(k, slot + 1);
      if (injective) used[k][y] = 0;
      f[k][x] = -1;
      return done;
    };
    if (k == 0) {
      if (X.pointed() && Y.pointed() && x == *X.basepoint()) return try_value(*Y.basepoint());
      for (std::size_t y = 0; y < Y.size(0); ++y)
        if (try_value(static_cast<Simplex>(y))) return true;
      return false;
    }
    auto it = by_d0[k].find(f[k - 1][X.face(k, 0, x)]);
    if (it == by_d0[k].end()) return false;
    for (auto y : it->second)
      if (try_value(y)) return true;
    return false;
  }
};

}  // namespace

std::vector<SimplicialMap> enumerate_maps(const FinSimpSet& X, const FinSimpSet& Y, std::size_t max_nodes) {
  MapSearch s(X, Y, false, max_nodes, false);
  s.search(0, 0);
  return std::move(s.found);
}

std::vector<SimplicialMap> mapping_space_level(const FinSimpSet& W, const FinSimpSet& Y, int n,
                                               std::size_t max_nodes) {
  if (!W.pointed() || !Y.pointed()) fail("mapping space needs pointed inputs");
  if (n < 0) throw InputError("mapping space level must be >= 0");
  auto source = smash(W, add_basepoint(standard_simplex(n, W.dim())));
  return enumerate_maps(source, Y, max_nodes);
}

std::optional<SimplicialMap> find_isomorphism(const FinSimpSet& X, const FinSimpSet& Y, std::size_t max_nodes) {
  if (X.dim() != Y.dim() || X.sizes() != Y.sizes() || X.pointed() != Y.pointed()) return std::nullopt;
  MapSearch s(X, Y, true, max_nodes, true);
  s.search(0, 0);
  if (s.found.empty()) return std::nullopt;
  return s.found.front();
}

Tower tower_from(const FinSimpSet& X) { return Tower{{X}, {}}; }

SubComplex generated_subcomplex(const FinSimpSet& X, const std::vector<std::pair<int, Simplex>>& seeds) {
  int D = X.dim();
  SubComplex A;
  for (int k = 0; k <= D; ++k) A.member.emplace_back(X.size(k), 0);
  for (auto [k, x] : seeds) {
    if (k < 0 || k > D || x < 0 || static_cast<std::size_t>(x) >= X.size(k)) throw InputError("seed simplex out of range");
    A.member[k][x] = 1;
  }
  // faces downward, then degeneracies upward: the result is closed under both
  for (int k = D; k >= 1; --k)
    for (std::size_t x = 0; x < X.size(k); ++x)
      if (A.member[k][x])
        for (int i = 0; i <= k; ++i) A.member[k - 1][X.face(k, i, static_cast<Simplex>(x))] = 1;
  for (int k = 0; k < D; ++k)
    for (std::size_t x = 0; x < X.size(k); ++x)
      if (A.member[k][x])
        for (int i = 0; i <= k; ++i) A.member[k + 1][X.degen(k, i, static_cast<Simplex>(x))] = 1;
  return A;
}

}  // namespace profet
