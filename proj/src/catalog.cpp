#include "profet/catalog.hpp"

#include <regex>

#include <fmt/format.h>

#include "profet/em_spaces.hpp"
#include "profet/error.hpp"
#include "profet/group.hpp"

namespace profet {

namespace {

std::int64_t ipow64(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

FinAb::Element scale(const FinAb& G, const FinAb::Element& x, std::int64_t k) {
  FinAb::Element y(x.size());
  const auto& f = G.invariant_factors();
  for (std::size_t i = 0; i < x.size(); ++i) {
    __int128 v = static_cast<__int128>(x[i]) * k % f[i];
    y[i] = static_cast<std::int64_t>(v < 0 ? v + f[i] : v);
  }
  return y;
}

void require_in(const FinAb& G, const FinAb::Element& x, const char* what) {
  if (!G.contains(x)) throw InputError(fmt::format("{} is not an element of {}", what, G.to_string()));
}

bool is_prime_power(std::int64_t q) { return q >= 2 && factorize(q).size() == 1; }

}  // namespace

nlohmann::json CatalogEntry::to_json() const {
  static const char* kinds[] = {"simplicial", "tower", "table"};
  return {{"name", name},
          {"model", kinds[static_cast<int>(model)]},
          {"params", {{"n", params.n}, {"q", params.q}, {"m", params.m}, {"D", params.D}}},
          {"citation", citation},
          {"test_space", test_space}};
}

std::vector<std::string> catalog_names() {
  return {"strict_henselian", "Gm", "P1", "Pn", "finite_field", "local_field", "S2", "moore"};
}

CatalogEntry catalog(const std::string& raw, CatalogParams params) {
  std::string name = raw;
  std::smatch m;
  static const std::regex with_arg(R"(^([A-Za-z_0-9]+?)\((-?\d+)\)$)");
  if (std::regex_match(raw, m, with_arg)) {
    name = m[1];
    long v = std::stol(m[2]);
    if (name == "Pn") params.n = static_cast<int>(v);
    else if (name == "finite_field" || name == "local_field") params.q = v;
    else if (name == "moore") params.m = static_cast<int>(v);
    else throw InputError(fmt::format("catalog entry {} takes no parameter", name));
  }
  if (params.D < 2) throw InputError("truncation D must be at least 2");
  CatalogEntry e;
  e.name = name;
  e.params = params;
  if (name == "strict_henselian") {
    e.space = point(params.D);
    e.citation = "etale type of a strictly henselian local ring: contractible";
  } else if (name == "P1" || name == "S2") {
    e.space = sphere(2, std::max(params.D, 3));
    e.citation = name == "P1" ? "etale type of the projective line: the simplicial finite set S^2"
                              : "test space: the 2-sphere";
    e.test_space = name == "S2";
  } else if (name == "finite_field") {
    if (!is_prime_power(params.q)) throw InputError("finite_field needs q a prime power");
    e.space = sphere(1, params.D);
    e.citation = "etale type of Spec F_q: S^1 (profinite completion of Z)";
  } else if (name == "moore") {
    if (params.m < 2) throw InputError("moore needs m >= 2");
    e.space = moore_space(params.m, std::max(params.D, 3));
    e.citation = "test space: Moore space M(Z/m, 1)";
    e.test_space = true;
  } else if (name == "Gm") {
    e.model = CatalogEntry::Model::Tower;
    e.citation = "etale type of the multiplicative group: K(Z_l, 1), as the tower K(Z/l^t, 1)";
  } else if (name == "Pn") {
    if (params.n < 1) throw InputError("Pn needs n >= 1");
    e.model = CatalogEntry::Model::Table;
    e.citation = "projective space over a separably closed field: H^{2i} = Z/l^nu for 0 <= i <= n";
  } else if (name == "local_field") {
    if (!is_prime_power(params.q)) throw InputError("local_field needs q a prime power");
    e.model = CatalogEntry::Model::Table;
    e.citation = "local field with residue field F_q: Galois cohomology of the tame l-quotient";
  } else {
    throw InputError(fmt::format("unknown catalog entry '{}'", raw));
  }
  return e;
}

Tower gm_tower(std::int64_t ell, int depth, int D) {
  if (depth < 1) throw InputError("Gm tower depth must be positive");
  std::vector<EMObject> K;
  Tower T;
  for (int t = 1; t <= depth; ++t) {
    K.push_back(build_K(FinAb::cyclic(ipow64(ell, t)), 1, D));
    T.stages.push_back(K.back().carrier());
  }
  for (int t = 0; t + 1 < depth; ++t) {
    // reduction Z/l^{t+2} -> Z/l^{t+1} applied to every value
    const auto &hi = K[t + 1], &lo = K[t];
    std::int64_t mod = ipow64(ell, t + 1);
    std::vector<Table> maps;
    for (int k = 0; k <= D; ++k) {
      Table tab(hi.carrier().size(k));
      for (std::size_t x = 0; x < tab.size(); ++x) {
        auto v = hi.values(k, static_cast<Simplex>(x));
        for (auto& c : v) c = static_cast<int>(c % mod);
        tab[x] = lo.from_values(k, v);
      }
      maps.push_back(std::move(tab));
    }
    T.bonds.emplace_back(hi.carrier(), lo.carrier(), std::move(maps));
  }
  T.validate();
  return T;
}

CohomologyTable entry_cohomology(const CatalogEntry& e, std::int64_t ell, int nu, bool reduced) {
  if (nu < 1 || ell < 2 || factorize(ell).size() != 1 || factorize(ell)[0].second != 1)
    throw InputError("l must be prime and nu >= 1");
  if (e.params.q != 0 && e.params.q % ell == 0) throw InputError("l must differ from the residue characteristic");
  std::int64_t mod = ipow64(ell, nu);
  FinAb M = FinAb::cyclic(mod);
  CohomologyTable t;
  switch (e.model) {
    case CatalogEntry::Model::Simplicial:
      return cohomology(*e.space, M, reduced);
    case CatalogEntry::Model::Tower: {
      int depth = e.params.depth > 0 ? e.params.depth : nu + 2;
      auto tc = tower_cohomology(gm_tower(ell, depth, 3), M);
      for (std::size_t n = 0; n < tc.stabilized.size(); ++n)
        if (!tc.stabilized[n]) throw StructuralError(fmt::format("Gm tower not stabilized in degree {}", n));
      t = tc.table;
      break;
    }
    case CatalogEntry::Model::Table:
      t.coefficient = M;
      if (e.name == "Pn") {
        t.groups.assign(2 * e.params.n + 1, FinAb::trivial());
        for (int i = 0; i <= e.params.n; ++i) t.groups[2 * i] = M;
        t.vanishes_above = 2 * e.params.n;
        t.provenance = "projective space cohomology table";
      } else {
        auto L = local_field_cohomology(e.params.q, ell, nu, 3);
        for (std::size_t n = 0; n < L.computed.stabilized.size(); ++n)
          if (!L.computed.stabilized[n])
            throw StructuralError(fmt::format("local field tower not stabilized in degree {}", n));
        t = L.computed.table;
        // cohomological dimension 2, confirmed by the computed H^3
        if (t.groups.size() > 3 && t.groups[3].is_trivial()) t.vanishes_above = 2;
      }
      break;
  }
  if (reduced) {
    t.groups[0] = FinAb::trivial();
    t.reduced = true;
  }
  return t;
}

std::vector<AbHom> entry_reduction_maps(const CatalogEntry& e, std::int64_t ell, int nu) {
  if (e.model == CatalogEntry::Model::Simplicial) return reduction_map(*e.space, ell, nu, 1);
  if (e.name != "Pn") throw InputError(fmt::format("no reduction maps for catalog entry {}", e.name));
  std::vector<AbHom> out;
  auto hi = entry_cohomology(e, ell, nu), lo = entry_cohomology(e, ell, 1);
  for (std::size_t n = 0; n < hi.groups.size(); ++n) {
    AbHom h{hi.groups[n].invariant_factors(), lo.groups[n].invariant_factors(), {}};
    h.matrix.assign(h.target.size(), std::vector<std::int64_t>(h.source.size(), 0));
    for (std::size_t i = 0; i < h.target.size(); ++i) h.matrix[i][i] = 1;
    out.push_back(std::move(h));
  }
  return out;
}

AbutmentReport etale_theory(const CatalogEntry& e, const GradedCoefficients& C, int n0, int n1, bool reduced) {
  auto table = entry_cohomology(e, C.prime(), C.nu(), reduced);
  SplittingFlag split;
  if (e.name == "Pn" && C.modulus() == C.prime()) {
    split = {true, "projective bundle formula: free module over the point with Z/l coefficients"};
  }
  auto rep = run_ahss(table, C, n0, n1, split);
  if (e.model == CatalogEntry::Model::Tower)
    rep.notes.push_back(fmt::format("truncated model: degrees above {} are unsupported", table.groups.size() - 1));
  if (e.name == "Pn")
    rep.notes.push_back(fmt::format(
        "Pn indexing: the spectral sequence yields n+1 = {} summands Z/l^nu (x) MU^(m-2i), i = 0..{}; the "
        "reference formula sums i = 0..n-1",
        e.params.n + 1, e.params.n));
  if (e.name == "local_field" && rep.status == "OK") {
    int nu0 = 0;
    while (nu0 < C.nu() && (e.params.q - 1) % ipow64(C.prime(), nu0 + 1) == 0) ++nu0;
    FinAb small = FinAb::cyclic(ipow64(C.prime(), nu0));
    for (auto& d : rep.degrees) {
      int shift = (d.degree % 2 == 0) ? 2 : 1;
      auto ref = small.power(static_cast<std::size_t>(C.rank(d.degree - shift)));
      std::string computed = d.group ? d.group->to_string() : "order " + d.order;
      bool agree = d.group && *d.group == ref;
      if (reduced || d.degree % 2 != 0)
        rep.notes.push_back(fmt::format("degree {}: computed {}; reference value Z/l^nu0 (x) MU^({}) = {}{}",
                                        d.degree, computed, d.degree - shift, ref.to_string(),
                                        agree ? "" : " (differs: H^1 also has the unramified Z/l^nu summand)"));
    }
  }
  return rep;
}

FreeModulePresentation::FreeModulePresentation(std::map<int, FinAb> base, int rank)
    : base_(std::move(base)), rank_(rank) {
  if (rank < 1) throw InputError("bundle rank must be positive");
}

const FinAb& FreeModulePresentation::base(int d) const {
  auto it = base_.find(d);
  if (it == base_.end()) throw InputError(fmt::format("base ring data missing in degree {}", d));
  return it->second;
}

FinAb FreeModulePresentation::group(int m) const {
  FinAb g;
  for (int i = 0; i < rank_; ++i) g = g.direct_sum(base(m - 2 * i));
  return g;
}

std::vector<int> FreeModulePresentation::basis_degrees() const {
  std::vector<int> d;
  for (int i = 0; i < rank_; ++i) d.push_back(2 * i);
  return d;
}

FreeModulePresentation projective_bundle_module(const AbutmentReport& base, int rank) {
  if (base.status != "OK") throw InputError("base report is undetermined");
  std::map<int, FinAb> ring;
  for (auto& d : base.degrees) {
    if (!d.group) throw InputError(fmt::format("base degree {} is not resolved", d.degree));
    ring[d.degree] = *d.group;
  }
  return FreeModulePresentation(std::move(ring), rank);
}

std::vector<BaseElement> chern_classes(const FreeModulePresentation& M, const std::vector<BaseElement>& relation) {
  int n = M.rank();
  if (static_cast<int>(relation.size()) != n) throw InputError("relation needs one coefficient per basis element");
  std::vector<BaseElement> c;
  for (int i = 1; i <= n; ++i) {
    const auto& a = relation[n - i];
    if (a.degree != 2 * i) throw InputError(fmt::format("relation coefficient of xi^{} is not homogeneous", n - i));
    require_in(M.base(2 * i), a.value, "relation coefficient");
    // xi^n - sum a_j xi^j = sum (-1)^i c_i xi^{n-i}  gives  c_i = (-1)^{i+1} a_{n-i}
    c.push_back({2 * i, i % 2 ? a.value : M.base(2 * i).negate(a.value)});
  }
  return c;
}

ModuleElement chern_relation_residue(const FreeModulePresentation& M, const std::vector<BaseElement>& relation,
                                     const std::vector<BaseElement>& c) {
  int n = M.rank();
  ModuleElement x{2 * n, {}};
  for (int k = 0; k < n; ++k) x.coeffs.push_back(M.base(2 * n - 2 * k).zero());
  // xi^n rewritten by the relation
  for (int j = 0; j < n; ++j) x.coeffs[j] = M.base(2 * n - 2 * j).add(x.coeffs[j], relation[j].value);
  for (int i = 1; i <= n; ++i) {
    const auto& G = M.base(2 * i);
    require_in(G, c[i - 1].value, "Chern class");
    auto term = i % 2 ? G.negate(c[i - 1].value) : c[i - 1].value;
    x.coeffs[n - i] = G.add(x.coeffs[n - i], term);
  }
  return x;
}

ModuleElement thom_class(const FreeModulePresentation& Md1, const std::vector<BaseElement>& c,
                         const FinAb::Element& unit) {
  int d = Md1.rank() - 1;
  if (static_cast<int>(c.size()) != d) throw InputError("thom class needs c_1..c_d");
  ModuleElement x{2 * d, std::vector<FinAb::Element>(d + 1)};
  require_in(Md1.base(0), unit, "unit");
  x.coeffs[d] = unit;
  for (int i = 1; i <= d; ++i) {
    if (c[i - 1].degree != 2 * i) throw InputError(fmt::format("c_{} must have degree {}", i, 2 * i));
    const auto& G = Md1.base(2 * i);
    require_in(G, c[i - 1].value, "Chern class");
    x.coeffs[d - i] = i % 2 ? G.negate(c[i - 1].value) : c[i - 1].value;
  }
  return x;
}

ModuleElement thom_image(const FreeModulePresentation& Md, const ModuleElement& x, const std::vector<BaseElement>& c) {
  int d = Md.rank();
  if (static_cast<int>(x.coeffs.size()) != d + 1) throw InputError("element does not live in the rank d+1 module");
  const auto& B0 = Md.base(0);
  if (B0.num_generators() != 1) throw InputError("base(0) must be cyclic");
  std::int64_t s = x.coeffs[d][0];
  ModuleElement y{x.degree, std::vector<FinAb::Element>(x.coeffs.begin(), x.coeffs.begin() + d)};
  // u^d = sum_{i=1}^{d} (-1)^{i+1} c_i u^{d-i}
  for (int i = 1; i <= d; ++i) {
    const auto& G = Md.base(2 * i);
    y.coeffs[d - i] = G.add(y.coeffs[d - i], scale(G, c[i - 1].value, i % 2 ? s : -s));
  }
  return y;
}

bool is_zero(const ModuleElement& x) {
  for (auto& c : x.coeffs)
    for (auto v : c)
      if (v != 0) return false;
  return true;
}

}  // namespace profet
