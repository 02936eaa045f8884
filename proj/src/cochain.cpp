#include "profet/cochain.hpp"

#include <fmt/format.h>

#include "profet/error.hpp"

namespace profet {

namespace {

// Keeps rows keep[n+1] and columns keep[n] of every coboundary.
std::vector<DenseMatrix> restrict_complex(const std::vector<DenseMatrix>& deltas,
                                          const std::vector<std::vector<std::size_t>>& keep) {
  std::vector<DenseMatrix> out;
  for (std::size_t n = 0; n < deltas.size(); ++n) {
    const auto& rows = keep[n + 1];
    const auto& cols = keep[n];
    DenseMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = deltas[n](rows[i], cols[j]);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<std::vector<std::size_t>> complement(const FinSimpSet& X, const SubComplex& A) {
  std::vector<std::vector<std::size_t>> keep(X.dim() + 1);
  for (int k = 0; k <= X.dim(); ++k)
    for (std::size_t x = 0; x < X.size(k); ++x)
      if (!A.contains(k, x)) keep[k].push_back(x);
  return keep;
}

std::vector<std::vector<std::size_t>> all_indices(const FinSimpSet& X) {
  std::vector<std::vector<std::size_t>> keep(X.dim() + 1);
  for (int k = 0; k <= X.dim(); ++k)
    for (std::size_t x = 0; x < X.size(k); ++x) keep[k].push_back(x);
  return keep;
}

std::vector<std::size_t> sizes_of(const std::vector<std::vector<std::size_t>>& keep) {
  std::vector<std::size_t> s;
  for (auto& k : keep) s.push_back(k.size());
  return s;
}

// Cohomology groups in degrees 0..degrees-1 of an integer complex with coefficients M.
std::vector<FinAb> groups_of(const std::vector<DenseMatrix>& deltas, const std::vector<std::size_t>& dims,
                             const FinAb& M, std::size_t degrees) {
  std::vector<FinAb> out(degrees);
  for (auto [p, k] : primary_summands(M)) {
    auto hs = primary_cohomology(deltas, dims, p, k, degrees);
    for (std::size_t n = 0; n < degrees; ++n) out[n] = out[n].direct_sum(hs[n].group());
  }
  return out;
}

AbHom block_sum(const std::vector<AbHom>& parts) {
  AbHom h;
  for (auto& p : parts) {
    h.source.insert(h.source.end(), p.source.begin(), p.source.end());
    h.target.insert(h.target.end(), p.target.begin(), p.target.end());
  }
  h.matrix.assign(h.target.size(), std::vector<std::int64_t>(h.source.size(), 0));
  std::size_t r0 = 0, c0 = 0;
  for (auto& p : parts) {
    for (std::size_t i = 0; i < p.target.size(); ++i)
      for (std::size_t j = 0; j < p.source.size(); ++j) h.matrix[r0 + i][c0 + j] = p.matrix[i][j];
    r0 += p.target.size();
    c0 += p.source.size();
  }
  return h;
}

// Matrix of the restriction C(full) -> C(sub): picks the kept coordinates.
DenseMatrix selection(const std::vector<std::size_t>& kept, std::size_t full) {
  DenseMatrix m(kept.size(), full);
  for (std::size_t i = 0; i < kept.size(); ++i) m(i, kept[i]) = 1;
  return m;
}

}  // namespace

IntMatrix CochainComplex::delta(std::size_t n) const {
  const auto& d = deltas.at(n);
  std::size_t r = coefficient.num_generators();
  IntMatrix m(d.rows * r, d.cols * r);
  for (std::size_t b = 0; b < r; ++b)
    for (std::size_t i = 0; i < d.rows; ++i)
      for (std::size_t j = 0; j < d.cols; ++j) m(b * d.rows + i, b * d.cols + j) = d(i, j);
  return m;
}

nlohmann::json CohomologyTable::to_json() const {
  nlohmann::json j;
  j["coefficient"] = coefficient.invariant_factors();
  j["groups"] = nlohmann::json::object();
  for (std::size_t n = 0; n < groups.size(); ++n) j["groups"][std::to_string(n)] = groups[n].invariant_factors();
  j["reduced"] = reduced;
  j["provenance"] = provenance;
  if (vanishes_above) j["vanishes_above"] = *vanishes_above;
  return j;
}

CohomologyTable CohomologyTable::from_json(const nlohmann::json& j) {
  CohomologyTable t;
  try {
    t.coefficient = FinAb::from_invariant_factors(j.at("coefficient").get<std::vector<std::int64_t>>());
    const auto& g = j.at("groups");
    t.groups.resize(g.size());
    for (auto it = g.begin(); it != g.end(); ++it) {
      std::size_t n = std::stoul(it.key());
      if (n >= t.groups.size()) throw InputError("cohomology table degrees are not contiguous");
      t.groups[n] = FinAb::from_invariant_factors(it.value().get<std::vector<std::int64_t>>());
    }
    t.reduced = j.value("reduced", false);
    t.provenance = j.value("provenance", std::string("direct computation"));
    if (j.contains("vanishes_above")) t.vanishes_above = j.at("vanishes_above").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed cohomology table JSON: ") + e.what());
  }
  return t;
}

std::vector<DenseMatrix> coboundaries(const FinSimpSet& X) {
  std::vector<DenseMatrix> d;
  for (int n = 0; n < X.dim(); ++n) {
    DenseMatrix m(X.size(n + 1), X.size(n));
    for (std::size_t y = 0; y < X.size(n + 1); ++y)
      for (int i = 0; i <= n + 1; ++i) m(y, X.face(n + 1, i, y)) += (i % 2 ? -1 : 1);
    d.push_back(std::move(m));
  }
  return d;
}

CochainComplex build_complex(const FinSimpSet& X, const FinAb& M) {
  CochainComplex c{M, X.sizes(), coboundaries(X)};
  for (std::size_t n = 0; n + 1 < c.deltas.size(); ++n)
    if (!c.deltas[n + 1].multiply_mod(c.deltas[n], 0x7fffffff).is_zero_mod(0x7fffffff))
      throw InvalidComplex(fmt::format("coboundary fails delta^{} delta^{} = 0", n + 1, n));
  return c;
}

std::vector<std::pair<std::int64_t, int>> primary_summands(const FinAb& M) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (auto n : M.invariant_factors())
    for (auto pe : factorize(n)) out.push_back(pe);
  return out;
}

std::vector<PrimaryCohomology> primary_cohomology(const std::vector<DenseMatrix>& deltas,
                                                  const std::vector<std::size_t>& dims, std::int64_t p,
                                                  int k, std::size_t degrees) {
  if (degrees > deltas.size()) throw InputError("not enough coboundaries for the requested degrees");
  std::vector<PrimaryCohomology> out;
  for (std::size_t n = 0; n < degrees; ++n)
    out.emplace_back(n > 0 ? &deltas[n - 1] : nullptr, &deltas[n], dims[n], p, k);
  return out;
}

CohomologyTable cohomology(const FinSimpSet& X, const FinAb& M, bool reduced) {
  if (reduced && !X.pointed()) throw StructuralError("reduced cohomology needs a pointed simplicial set");
  auto c = build_complex(X, M);
  auto deltas = c.deltas;
  auto dims = c.simplices;
  if (reduced) {
    auto keep = complement(X, basepoint_sub(X));
    deltas = restrict_complex(deltas, keep);
    dims = sizes_of(keep);
  }
  CohomologyTable t{M, groups_of(deltas, dims, M, X.dim()), reduced, "direct computation", std::nullopt};
  auto census = X.nondegenerate_census();
  if (census[X.dim()] == 0) {
    std::size_t top = 0;
    for (std::size_t k = 0; k < census.size(); ++k)
      if (census[k]) top = k;
    t.vanishes_above = top;
  }
  return t;
}

std::vector<AbHom> induced_map(const SimplicialMap& f, const FinSimpSet& X, const FinSimpSet& Y,
                               const FinAb& M, bool reduced) {
  int D = std::min(X.dim(), Y.dim());
  auto kx = reduced ? complement(X, basepoint_sub(X)) : all_indices(X);
  auto ky = reduced ? complement(Y, basepoint_sub(Y)) : all_indices(Y);
  if (reduced && !(X.pointed() && Y.pointed())) throw StructuralError("reduced induced map needs pointed spaces");
  auto dx = restrict_complex(coboundaries(X), kx);
  auto dy = restrict_complex(coboundaries(Y), ky);
  std::vector<std::vector<AbHom>> parts(D);
  for (auto [p, k] : primary_summands(M)) {
    auto hx = primary_cohomology(dx, sizes_of(kx), p, k, D);
    auto hy = primary_cohomology(dy, sizes_of(ky), p, k, D);
    for (int n = 0; n < D; ++n) {
      // (f^* a)(x) = a(f x), in the kept coordinates
      std::vector<long> pos(Y.size(n), -1);
      for (std::size_t a = 0; a < ky[n].size(); ++a) pos[ky[n][a]] = static_cast<long>(a);
      DenseMatrix m(kx[n].size(), ky[n].size());
      for (std::size_t a = 0; a < kx[n].size(); ++a) {
        long b = pos[f(n, kx[n][a])];
        if (b >= 0) m(a, b) = 1;
      }
      parts[n].push_back(induced_hom(hy[n], hx[n], m));
    }
  }
  std::vector<AbHom> out;
  for (auto& p : parts) out.push_back(block_sum(p));
  return out;
}

std::vector<AbHom> reduction_map(const FinSimpSet& X, std::int64_t ell, int nu, int mu) {
  if (!is_prime(ell) || mu < 1 || mu > nu) throw InputError("reduction needs a prime and 1 <= mu <= nu");
  auto d = coboundaries(X);
  auto dims = X.sizes();
  auto hi = primary_cohomology(d, dims, ell, nu, X.dim());
  auto lo = primary_cohomology(d, dims, ell, mu, X.dim());
  std::vector<AbHom> out;
  for (int n = 0; n < X.dim(); ++n) out.push_back(induced_hom(hi[n], lo[n], DenseMatrix::identity(dims[n])));
  return out;
}

TorsionWitness no_ell_torsion(const std::vector<AbHom>& reductions) {
  for (std::size_t n = 0; n < reductions.size(); ++n)
    if (!reductions[n].is_surjective()) return {false, n};
  return {true, std::nullopt};
}

TorsionWitness no_ell_torsion(const FinSimpSet& X, std::int64_t ell, int nu) {
  if (nu < 1) throw InputError("nu must be at least 1");
  return no_ell_torsion(reduction_map(X, ell, nu, 1));
}

CohomologyTable relative_cohomology(const FinSimpSet& X, const SubComplex& A, const FinAb& M) {
  auto t = cohomology(quotient(X, A), M, true);
  t.reduced = false;
  t.provenance = "relative: reduced cohomology of the quotient";
  return t;
}

LesReport les_check(const FinSimpSet& X, const SubComplex& A, const FinAb& M) {
  check_closed(X, A);
  int D = X.dim();
  auto dX = coboundaries(X);
  auto kr = complement(X, A);
  std::vector<std::vector<std::size_t>> ka(D + 1);
  for (int k = 0; k <= D; ++k)
    for (std::size_t x = 0; x < X.size(k); ++x)
      if (A.contains(k, x)) ka[k].push_back(x);
  auto dR = restrict_complex(dX, kr);
  auto dA = restrict_complex(dX, ka);
  LesReport rep;
  for (auto [p, k] : primary_summands(M)) {
    auto hR = primary_cohomology(dR, sizes_of(kr), p, k, D);
    auto hX = primary_cohomology(dX, X.sizes(), p, k, D);
    auto hA = primary_cohomology(dA, sizes_of(ka), p, k, D);
    // j*, i*, and the connecting map (extend by zero, apply delta, keep the relative part)
    std::vector<AbHom> seq;
    std::vector<std::string> names;
    for (int n = 0; n < D; ++n) {
      DenseMatrix j(X.size(n), kr[n].size());
      for (std::size_t a = 0; a < kr[n].size(); ++a) j(kr[n][a], a) = 1;
      seq.push_back(induced_hom(hR[n], hX[n], j));
      names.push_back(fmt::format("H^{}(X)", n));
      seq.push_back(induced_hom(hX[n], hA[n], selection(ka[n], X.size(n))));
      names.push_back(fmt::format("H^{}(A)", n));
      if (n + 1 < D) {
        DenseMatrix ext(X.size(n), ka[n].size());
        for (std::size_t a = 0; a < ka[n].size(); ++a) ext(ka[n][a], a) = 1;
        auto conn = selection(kr[n + 1], X.size(n + 1)).multiply_mod(dX[n].multiply_mod(ext, hR[n].ring().q),
                                                                     hR[n].ring().q);
        seq.push_back(induced_hom(hA[n], hR[n + 1], conn));
        names.push_back(fmt::format("H^{}(X,A)", n + 1));
      }
    }
    // injectivity at the start, exactness at every interior position
    ++rep.positions_checked;
    if (!seq.front().is_injective()) {
      rep.exact = false;
      rep.failures.push_back(fmt::format("H^0(X,A) -> H^0(X) not injective (Z/{}^{})", p, k));
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      const auto& f = seq[i];
      const auto& g = seq[i + 1];
      ++rep.positions_checked;
      bool ok = g.after(f).is_zero() && f.image().order() * g.image().order() == f.target_group().order();
      if (!ok) {
        rep.exact = false;
        rep.failures.push_back(fmt::format("not exact at {} (Z/{}^{})", names[i], p, k));
      }
    }
  }
  return rep;
}

ColimitEstimate colimit_estimate(const std::vector<FinAb>& groups, const std::vector<AbHom>& maps) {
  if (groups.empty()) throw InputError("colimit of an empty system");
  if (maps.size() + 1 != groups.size()) throw InputError("direct system needs one map per step");
  std::size_t T = groups.size() - 1;
  if (T == 0) return {groups[0], true, 0};
  // composite[s] : H_s -> H_{T-1}, then one more step to H_T
  auto identity_on = [](const std::vector<std::int64_t>& orders) {
    AbHom h{orders, orders, {}};
    h.matrix.assign(orders.size(), std::vector<std::int64_t>(orders.size(), 0));
    for (std::size_t i = 0; i < orders.size(); ++i) h.matrix[i][i] = 1;
    return h;
  };
  std::vector<AbHom> to_prev(T);
  to_prev[T - 1] = identity_on(maps[T - 1].source);
  for (std::size_t s = T - 1; s-- > 0;) to_prev[s] = to_prev[s + 1].after(maps[s]);
  for (std::size_t s = T; s-- > 0;) {
    auto to_last = maps[T - 1].after(to_prev[s]);
    FinAb img_last = to_last.image();
    if (img_last.order() == to_prev[s].image().order()) return {img_last, true, s};
  }
  return {groups[T], false, T};
}

nlohmann::json TowerCohomology::to_json() const {
  auto j = table.to_json();
  j["stabilized"] = stabilized;
  j["stages"] = nlohmann::json::array();
  for (auto& s : stage_groups) {
    nlohmann::json g = nlohmann::json::array();
    for (auto& h : s) g.push_back(h.invariant_factors());
    j["stages"].push_back(g);
  }
  return j;
}

TowerCohomology tower_cohomology(const Tower& T, const FinAb& M) {
  T.validate();
  int D = T.stages.front().dim();
  for (auto& s : T.stages) D = std::min(D, s.dim());
  std::size_t S = T.stages.size();
  TowerCohomology out;
  out.table.coefficient = M;
  out.table.provenance = "tower colimit";
  out.table.groups.assign(D, FinAb::trivial());
  out.stabilized.assign(D, true);
  out.stage_groups.assign(S, std::vector<FinAb>(D));
  for (auto [p, k] : primary_summands(M)) {
    std::vector<std::vector<PrimaryCohomology>> h;
    for (std::size_t t = 0; t < S; ++t) {
      h.push_back(primary_cohomology(coboundaries(T.stages[t]), T.stages[t].sizes(), p, k, D));
      for (int n = 0; n < D; ++n) out.stage_groups[t][n] = out.stage_groups[t][n].direct_sum(h[t][n].group());
    }
    for (int n = 0; n < D; ++n) {
      std::vector<FinAb> groups;
      std::vector<AbHom> maps;
      for (std::size_t t = 0; t < S; ++t) groups.push_back(h[t][n].group());
      for (std::size_t t = 0; t + 1 < S; ++t) {
        // the bond X_{t+1} -> X_t pulls cochains back from stage t to stage t+1
        const auto& bond = T.bonds[t];
        DenseMatrix m(T.stages[t + 1].size(n), T.stages[t].size(n));
        for (std::size_t x = 0; x < T.stages[t + 1].size(n); ++x) m(x, bond(n, x)) = 1;
        maps.push_back(induced_hom(h[t][n], h[t + 1][n], m));
      }
      auto est = colimit_estimate(groups, maps);
      out.table.groups[n] = out.table.groups[n].direct_sum(est.group);
      out.stabilized[n] = out.stabilized[n] && est.stabilized;
    }
  }
  return out;
}

}  // namespace profet
