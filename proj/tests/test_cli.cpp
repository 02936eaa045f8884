#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "profet/ahss.hpp"
#include "profet/cochain.hpp"
#include "profet/simplicial.hpp"

using namespace profet;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " PROFET_CLI " " + args + " 2>/dev/null";
  Run r{0, ""};
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("cohomology command") {
  auto r = run("cohomology --catalog P1 --coeff Z/5 --format json");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  auto t = CohomologyTable::from_json(j);
  CHECK(t[0] == FinAb::cyclic(5));
  CHECK(t[1].is_trivial());
  CHECK(t[2] == FinAb::cyclic(5));
  auto pt = CohomologyTable::from_json(nlohmann::json::parse(run("cohomology --catalog strict_henselian --format json").out));
  for (std::size_t n = 1; n < pt.groups.size(); ++n) CHECK(pt[n].is_trivial());

  std::ofstream("cli_bad.json") << "{not json";
  CHECK(run("cohomology --input cli_bad.json").code == 2);
  std::ofstream("cli_s2.json") << sphere(2, 3).to_json().dump();
  auto s2 = run("cohomology --input cli_s2.json --coeff Z/2+Z/3 --format json");
  CHECK(s2.code == 0);
  CHECK(CohomologyTable::from_json(nlohmann::json::parse(s2.out))[2] == FinAb::cyclic(6));
  CHECK(run("cohomology --catalog nowhere").code == 2);
  CHECK(run("cohomology --catalog Pn --n 2 --coeff Z/6").code == 2);
  CHECK(run("cohomology").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("ahss command") {
  auto r = run("ahss --catalog finite_field --q 7 --theory MU --l 2 --nu 3 --reduced --degrees -4..4 --format json");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  auto rep = AbutmentReport::from_json(j);
  CHECK(rep.to_json() == j);
  CHECK(*rep.at(1).group == FinAb::cyclic(8));
  CHECK(*rep.at(-1).group == FinAb::cyclic(8));
  CHECK(rep.at(0).group->is_trivial());
  // gcd(4, 4) = 4 in even degrees
  auto lf = AbutmentReport::from_json(
      nlohmann::json::parse(run("ahss --catalog local_field --q 5 --theory MU --l 2 --nu 2 --reduced --degrees 0..2 --format json").out));
  CHECK(*lf.at(2).group == FinAb::cyclic(4));
  CHECK_FALSE(lf.notes.empty());
  // HZ reproduces the entry's own table
  auto hz = AbutmentReport::from_json(
      nlohmann::json::parse(run("ahss --catalog P1 --theory HZ --l 3 --degrees 0..2 --format json").out));
  CHECK(*hz.at(2).group == FinAb::cyclic(3));
  CHECK(hz.at(1).group->is_trivial());
  // undetermined is a status, not an error
  CHECK(run("ahss --catalog Pn --n 2 --theory MU --l 2 --degrees x").code == 2);
  // determinism
  auto a = run("ahss --catalog Pn --n 3 --theory MU --l 3 --degrees -6..6 --format json");
  auto b = run("ahss --catalog Pn --n 3 --theory MU --l 3 --degrees -6..6 --format json");
  CHECK(a.out == b.out);
}

TEST_CASE("undetermined status") {
  // top level with a nondegenerate simplex: no support bound
  std::ofstream("cli_delta.json") << boundary_simplex(3, 2).to_json().dump();
  auto r = run("ahss --input cli_delta.json --theory MU --l 2 --degrees 0..1 --format json");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["status"] == "UNDETERMINED");
}

TEST_CASE("verify command") {
  for (auto s : {"simplicial", "algebra", "cochain", "em", "galois", "ahss", "catalog"}) {
    auto r = run(std::string("verify ") + s + " --format json");
    INFO(s);
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["passed"] == true);
  }
  CHECK(run("verify unknown").code == 2);
  CHECK(run("verify em", "PROFET_BUDGET=10").code == 3);
}
