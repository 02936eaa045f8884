// profet: cohomology tables, spectral-sequence reports and property suites.
// Exit codes: 0 success (UNDETERMINED included), 1 verification failure,
// 2 input error, 3 budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "profet/ahss.hpp"
#include "profet/catalog.hpp"
#include "profet/cochain.hpp"
#include "profet/em_spaces.hpp"
#include "profet/error.hpp"
#include "suites.hpp"

using namespace profet;

namespace {

struct RunConfig {
  std::string catalog_name, input_file, coeff = "Z/2", theory = "MU", degrees = "0..4", format = "table";
  std::int64_t ell = 2, q = 0;
  int nu = 1, n = 1, D = 4;
  bool reduced = false;
  std::size_t budget = kDefaultLevelBudget;
};

/// "Z/4", "Z/2+Z/4" or "Z/2xZ/4".
FinAb parse_coefficients(const std::string& s) {
  static const std::regex part(R"(\s*Z/(\d+)\s*)");
  std::vector<std::int64_t> orders;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find_first_of("+x", start);
    std::string piece = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::smatch m;
    if (!std::regex_match(piece, m, part)) throw InputError(fmt::format("cannot parse coefficients '{}'", s));
    orders.push_back(std::stoll(m[1]));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  if (orders.empty()) throw InputError("empty coefficient group");
  for (auto o : orders)
    if (o < 1) throw InputError("coefficient orders must be positive");
  return FinAb::from_cyclic(orders);
}

std::pair<int, int> parse_degrees(const std::string& s) {
  static const std::regex range(R"((-?\d+)\.\.(-?\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, range)) throw InputError(fmt::format("degree range '{}' is not of the form a..b", s));
  int a = std::stoi(m[1]), b = std::stoi(m[2]);
  if (a > b) throw InputError("empty degree range");
  return {a, b};
}

CatalogEntry entry_for(const RunConfig& c) {
  CatalogParams p;
  p.n = c.n;
  p.q = c.q;
  p.D = c.D;
  return catalog(c.catalog_name, p);
}

FinSimpSet read_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(fmt::format("malformed JSON in '{}': {}", path, e.what()));
  }
  try {
    return FinSimpSet::from_json(j);
  } catch (const StructuralError& e) {
    throw InputError(fmt::format("invalid simplicial set in '{}': {}", path, e.what()));
  }
}

// Z/l^nu as (l, nu); throws when M is not cyclic of prime-power order.
std::pair<std::int64_t, int> prime_power_of(const FinAb& M) {
  if (M.num_generators() != 1) throw InputError("catalog tables need cyclic coefficients Z/l^nu");
  auto f = factorize(M.invariant_factors()[0]);
  if (f.size() != 1) throw InputError("catalog tables need coefficients Z/l^nu with l prime");
  return {f[0].first, f[0].second};
}

int cmd_cohomology(const RunConfig& c) {
  FinAb M = parse_coefficients(c.coeff);
  CohomologyTable t;
  std::vector<std::string> notes;
  if (!c.input_file.empty()) {
    t = cohomology(read_space(c.input_file), M, c.reduced);
  } else {
    auto e = entry_for(c);
    if (e.model == CatalogEntry::Model::Simplicial) {
      t = cohomology(*e.space, M, c.reduced);
    } else {
      auto [ell, nu] = prime_power_of(M);
      t = entry_cohomology(e, ell, nu, c.reduced);
    }
    if (e.model == CatalogEntry::Model::Tower)
      notes.push_back(fmt::format("degrees above {} are unsupported", t.groups.size() - 1));
  }
  if (c.format == "json") {
    auto j = t.to_json();
    j["schema"] = 1;
    j["notes"] = notes;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fmt::format("coefficients {}{}\n", M.to_string(), c.reduced ? " (reduced)" : "");
    for (std::size_t n = 0; n < t.groups.size(); ++n) std::cout << fmt::format("H^{} = {}\n", n, t.groups[n].to_string());
    for (auto& s : notes) std::cout << "note: " << s << "\n";
  }
  return 0;
}

int cmd_ahss(const RunConfig& c) {
  auto [n0, n1] = parse_degrees(c.degrees);
  auto C = GradedCoefficients::parse(c.theory, c.ell, c.nu);
  AbutmentReport rep;
  if (!c.input_file.empty()) {
    rep = run_ahss(cohomology(read_space(c.input_file), FinAb::cyclic(C.modulus()), c.reduced), C, n0, n1);
  } else {
    rep = etale_theory(entry_for(c), C, n0, n1, c.reduced);
  }
  if (c.format == "json") {
    std::cout << rep.to_json().dump(2) << "\n";
    return 0;
  }
  std::cout << fmt::format("theory {} mod {}^{}{}: {}\n", rep.theory, rep.ell, rep.nu, rep.reduced ? " (reduced)" : "",
                           rep.status);
  for (auto& d : rep.degrees) {
    std::string pieces;
    for (auto& p : d.pieces) pieces += fmt::format(" ({},{}):{}", p.p, p.q, p.group.to_string());
    std::cout << fmt::format("n = {:>3}  {}  order {}  pieces{}\n", d.degree,
                             d.group ? d.group->to_string() : std::string("unresolved"), d.order,
                             pieces.empty() ? " none" : pieces);
  }
  for (auto& s : rep.certificates) std::cout << "certificate: " << s << "\n";
  for (auto& s : rep.notes) std::cout << "note: " << s << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, const RunConfig& c) {
  auto results = cli::run_suite(suite, c.budget);
  bool ok = true;
  if (c.format == "json") {
    nlohmann::json j{{"schema", 1}, {"suite", suite}, {"checks", nlohmann::json::array()}};
    for (auto& r : results) {
      j["checks"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      ok = ok && r.passed;
    }
    j["passed"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto& r : results) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << (r.detail.empty() ? "" : " (" + r.detail + ")") << "\n";
      ok = ok && r.passed;
    }
    std::cout << fmt::format("{}: {}\n", suite, ok ? "all checks passed" : "FAILED");
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"profet: cohomology of finite simplicial sets, spectral sequences and catalog computations"};
  app.require_subcommand(1);
  RunConfig c;
  if (const char* b = std::getenv("PROFET_BUDGET")) {
    try {
      c.budget = std::stoull(b);
    } catch (const std::exception&) {
      std::cerr << "error: PROFET_BUDGET must be a positive integer\n";
      return 2;
    }
  }
  auto add_source = [&](CLI::App* s) {
    auto* cat = s->add_option("--catalog", c.catalog_name, "catalog entry (strict_henselian, Gm, P1, Pn, finite_field, local_field, S2, moore)");
    auto* in = s->add_option("--input", c.input_file, "simplicial set JSON file");
    cat->excludes(in);
    in->excludes(cat);
    s->add_option("--q", c.q, "residue field size for finite_field / local_field");
    s->add_option("--n", c.n, "dimension for Pn");
    s->add_option("--D", c.D, "truncation of simplicial catalog models")->check(CLI::Range(2, 12));
    s->add_flag("--reduced", c.reduced, "reduced theory");
    s->add_option("--format", c.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  };
  auto* coh = app.add_subcommand("cohomology", "cohomology table");
  add_source(coh);
  coh->add_option("--coeff", c.coeff, "coefficient group, e.g. Z/4 or Z/2+Z/4");
  auto* ah = app.add_subcommand("ahss", "spectral sequence report");
  add_source(ah);
  ah->add_option("--theory", c.theory, "MU, KU, HZ or K(n)");
  ah->add_option("--l", c.ell, "prime l");
  ah->add_option("--nu", c.nu, "exponent nu")->check(CLI::PositiveNumber);
  ah->add_option("--degrees", c.degrees, "total degrees a..b");
  auto* ver = app.add_subcommand("verify", "run a property suite");
  std::string suite;
  ver->add_option("suite", suite, "simplicial, algebra, cochain, em, galois, ahss or catalog")->required();
  ver->add_option("--format", c.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  ver->add_option("--budget", c.budget, "enumeration budget (also PROFET_BUDGET)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if ((coh->parsed() || ah->parsed()) && c.catalog_name.empty() && c.input_file.empty())
      throw InputError("give --catalog or --input");
    if (coh->parsed()) return cmd_cohomology(c);
    if (ah->parsed()) return cmd_ahss(c);
    return cmd_verify(suite, c);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
