#include "profet/ahss.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "profet/error.hpp"

namespace profet {

namespace {

// Beyond the computed range an unbounded page is probed this far; every
// supported rank function is either supported at q = 0 alone or has a nonzero
// value in each window of this length.
constexpr int kProbe = 64;

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

const FinAb& SSPage::entry(int p, int q) const {
  if (p < 0 || p > p_max_ || q < q_min_ || q > q_max_)
    throw InputError(fmt::format("cell ({},{}) lies outside the page window", p, q));
  return cells_[p][q - q_min_];
}

std::optional<FinAb> SSPage::known(int p, int q) const {
  if (p < 0 || C_.rank(q) == 0) return FinAb::trivial();
  if (p > p_max_) {
    if (bounded_) return FinAb::trivial();
    return std::nullopt;
  }
  if (q >= q_min_ && q <= q_max_) return cells_[p][q - q_min_];
  return base_[p].power(static_cast<std::size_t>(C_.rank(q)));
}

SSPage build_e2(const CohomologyTable& base, const GradedCoefficients& C, int n0, int n1) {
  if (n0 > n1) throw InputError("empty degree range");
  if (base.groups.empty()) throw InputError("empty base cohomology table");
  if (!(base.coefficient == FinAb::cyclic(C.modulus())))
    throw InputError(fmt::format("base coefficients {} do not match the theory modulus {}",
                                 base.coefficient.to_string(), C.modulus()));
  SSPage page(C);
  page.reduced_ = base.reduced;
  int last = static_cast<int>(base.groups.size()) - 1;
  if (base.vanishes_above && static_cast<int>(*base.vanishes_above) <= last) {
    page.bounded_ = true;
    page.p_max_ = static_cast<int>(*base.vanishes_above);
  } else {
    page.p_max_ = last;
  }
  page.q_min_ = n0 - page.p_max_ - 1;  // one extra row feeds differentials into degree n0
  page.q_max_ = n1 + 1;
  page.base_.assign(base.groups.begin(), base.groups.begin() + page.p_max_ + 1);
  page.cells_.resize(page.p_max_ + 1);
  for (int p = 0; p <= page.p_max_; ++p)
    for (int q = page.q_min_; q <= page.q_max_; ++q)
      page.cells_[p].push_back(page.base_[p].power(static_cast<std::size_t>(C.rank(q))));
  return page;
}

CollapseCertificate analyze_differentials(const SSPage& page, int n0, int n1) {
  CollapseCertificate cert;
  // pieces of the requested degrees beyond the computed range
  if (!page.bounded()) {
    for (int n = n0; n <= n1; ++n)
      for (int p = page.p_max() + 1; p <= page.p_max() + kProbe; ++p)
        if (!page.known(p, n - p)) {
          cert.undetermined = fmt::format("E_2^({},{}) lies beyond the computed base range", p, n - p);
          return cert;
        }
  }
  for (int n = n0 - 1; n <= n1; ++n)
    for (int p = 0; p <= page.p_max(); ++p) {
      int q = n - p;
      if (page.entry(p, q).is_trivial()) continue;
      std::vector<int> by_rank, by_base;
      int r_end = page.p_max() - p + (page.bounded() ? 0 : kProbe);
      for (int r = 2; r <= r_end; ++r) {
        int tp = p + r, tq = q - r + 1;
        auto t = page.known(tp, tq);
        if (!t) {
          cert.undetermined = fmt::format("d_{} : ({},{}) -> ({},{}) has an undetermined target", r, p, q, tp, tq);
          return cert;
        }
        if (!t->is_trivial()) {
          cert.undetermined = fmt::format("d_{} : ({},{}) -> ({},{}) is not forced to vanish", r, p, q, tp, tq);
          return cert;
        }
        (page.coefficients().rank(tq) == 0 ? by_rank : by_base).push_back(r);
      }
      std::string why = fmt::format("({},{}): d_r = 0 for r >= 2;", p, q);
      if (!by_rank.empty()) why += " target rank zero for r in {" + join_ints(by_rank) + "};";
      if (!by_base.empty()) why += " target base group zero for r in {" + join_ints(by_base) + "};";
      if (page.bounded()) why += fmt::format(" target beyond support for r > {}", std::max(1, page.p_max() - p));
      cert.reasons.push_back(why);
    }
  cert.collapses = true;
  return cert;
}

std::vector<ConvergenceCertificate> convergence_check(const CohomologyTable& base, const GradedCoefficients&) {
  // every group in a CohomologyTable is finite by construction
  std::vector<ConvergenceCertificate> out{ConvergenceCertificate::FiniteGroups};
  if (base.vanishes_above) out.push_back(ConvergenceCertificate::BoundedSupport);
  return out;
}

std::string to_string(ConvergenceCertificate c) {
  return c == ConvergenceCertificate::FiniteGroups ? "finite-groups" : "bounded-support";
}

const DegreeReport& AbutmentReport::at(int n) const {
  for (auto& d : degrees)
    if (d.degree == n) return d;
  throw InputError(fmt::format("degree {} not in the report", n));
}

AbutmentReport assemble_abutment(const SSPage& page, const CollapseCertificate& cert, int n0, int n1,
                                 const SplittingFlag& split) {
  if (!cert.collapses) throw InputError("assembling the abutment needs a collapse certificate");
  AbutmentReport rep;
  rep.theory = page.coefficients().name();
  rep.ell = page.coefficients().prime();
  rep.nu = page.coefficients().nu();
  rep.reduced = page.reduced();
  rep.splitting = split;
  rep.certificates.push_back("collapse-at-E2");
  for (int n = n0; n <= n1; ++n) {
    DegreeReport d;
    d.degree = n;
    mpz_class order = 1;
    bool elementary = true;
    FinAb sum;
    for (int p = 0; p <= page.p_max(); ++p) {
      const FinAb& g = page.entry(p, n - p);
      if (g.is_trivial()) continue;
      d.pieces.push_back({p, n - p, g});
      order *= g.order();
      elementary = elementary && g.exponent() == page.coefficients().prime();
      sum = sum.direct_sum(g);
    }
    d.order = order.get_str();
    if (d.pieces.size() <= 1 || (split.split && elementary)) {
      d.resolved = true;
      d.group = sum;
    }
    rep.degrees.push_back(std::move(d));
  }
  return rep;
}

AbutmentReport run_ahss(const CohomologyTable& base, const GradedCoefficients& C, int n0, int n1,
                        const SplittingFlag& split) {
  auto page = build_e2(base, C, n0, n1);
  auto cert = analyze_differentials(page, n0, n1);
  if (!cert.collapses) {
    AbutmentReport rep;
    rep.status = "UNDETERMINED";
    rep.theory = C.name();
    rep.ell = C.prime();
    rep.nu = C.nu();
    rep.reduced = base.reduced;
    rep.notes.push_back("collapse not provable: " + cert.undetermined.value_or("unknown"));
    return rep;
  }
  auto rep = assemble_abutment(page, cert, n0, n1, split);
  for (auto c : convergence_check(base, C)) rep.certificates.push_back(to_string(c));
  return rep;
}

nlohmann::json AbutmentReport::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["status"] = status;
  j["theory"] = theory;
  j["l"] = ell;
  j["nu"] = nu;
  j["reduced"] = reduced;
  j["certificates"] = certificates;
  j["notes"] = notes;
  j["splitting"] = {{"split", splitting.split}, {"justification", splitting.justification}};
  j["degrees"] = nlohmann::json::array();
  for (auto& d : degrees) {
    nlohmann::json e;
    e["degree"] = d.degree;
    e["pieces"] = nlohmann::json::array();
    for (auto& pc : d.pieces)
      e["pieces"].push_back({{"p", pc.p}, {"q", pc.q}, {"group", pc.group.invariant_factors()}});
    e["resolved"] = d.resolved;
    e["group"] = d.group ? nlohmann::json(d.group->invariant_factors()) : nlohmann::json(nullptr);
    e["order"] = d.order;
    e["certificates"] = certificates;
    j["degrees"].push_back(e);
  }
  return j;
}

AbutmentReport AbutmentReport::from_json(const nlohmann::json& j) {
  AbutmentReport r;
  try {
    if (j.at("schema").get<int>() != 1) throw InputError("unsupported report schema");
    r.status = j.at("status").get<std::string>();
    r.theory = j.at("theory").get<std::string>();
    r.ell = j.at("l").get<std::int64_t>();
    r.nu = j.at("nu").get<int>();
    r.reduced = j.at("reduced").get<bool>();
    r.certificates = j.at("certificates").get<std::vector<std::string>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.splitting.split = j.at("splitting").at("split").get<bool>();
    r.splitting.justification = j.at("splitting").at("justification").get<std::string>();
    for (auto& e : j.at("degrees")) {
      DegreeReport d;
      d.degree = e.at("degree").get<int>();
      for (auto& pc : e.at("pieces"))
        d.pieces.push_back({pc.at("p").get<int>(), pc.at("q").get<int>(),
                            FinAb::from_invariant_factors(pc.at("group").get<std::vector<std::int64_t>>())});
      d.resolved = e.at("resolved").get<bool>();
      if (!e.at("group").is_null())
        d.group = FinAb::from_invariant_factors(e.at("group").get<std::vector<std::int64_t>>());
      d.order = e.at("order").get<std::string>();
      r.degrees.push_back(std::move(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(fmt::format("malformed report: {}", e.what()));
  }
  return r;
}

}  // namespace profet
