#include "profet/coefficients.hpp"

#include <regex>
#include <vector>

#include "profet/error.hpp"

namespace profet {

std::int64_t mu_rank(int q) {
  if (q > 0 || q % 2 != 0) return 0;
  const int n = -q / 2;
  if (n > 400) throw BudgetExceeded("partition number exceeds 64-bit range");
  // Euler's pentagonal recurrence.
  std::vector<std::int64_t> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::int64_t acc = 0;
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2;
      if (g1 > m) break;
      int g2 = k * (3 * k + 1) / 2;
      std::int64_t s = (k % 2) ? 1 : -1;
      acc += s * p[m - g1];
      if (g2 <= m) acc += s * p[m - g2];
    }
    p[m] = acc;
  }
  return p[n];
}

GradedCoefficients::GradedCoefficients(Theory t, std::int64_t ell, int nu, int height)
    : theory_(t), ell_(ell), nu_(nu), height_(height) {
  if (!is_prime(ell)) throw InputError("l must be prime");
  if (nu < 1) throw InputError("nu must be >= 1");
  modulus_ = ipow(ell, nu);
}

GradedCoefficients GradedCoefficients::mu(std::int64_t ell, int nu) { return {Theory::MU, ell, nu, 0}; }
GradedCoefficients GradedCoefficients::ku(std::int64_t ell, int nu) { return {Theory::KU, ell, nu, 0}; }
GradedCoefficients GradedCoefficients::hz(std::int64_t ell, int nu) { return {Theory::HZ, ell, nu, 0}; }

GradedCoefficients GradedCoefficients::morava_k(std::int64_t ell, int n) {
  if (n < 1) throw InputError("Morava K(n) needs n >= 1");
  return {Theory::MoravaK, ell, 1, n};
}

GradedCoefficients GradedCoefficients::parse(const std::string& name, std::int64_t ell, int nu) {
  if (name == "MU") return mu(ell, nu);
  if (name == "KU") return ku(ell, nu);
  if (name == "HZ") return hz(ell, nu);
  static const std::regex morava(R"((?:MoravaK|K)\((\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, morava)) return morava_k(ell, std::stoi(m[1]));
  throw InputError("unknown theory '" + name + "'");
}

std::string GradedCoefficients::name() const {
  switch (theory_) {
    case Theory::MU: return "MU";
    case Theory::KU: return "KU";
    case Theory::HZ: return "HZ";
    case Theory::MoravaK: return "K(" + std::to_string(height_) + ")";
  }
  return "?";
}

std::int64_t GradedCoefficients::rank(int q) const {
  switch (theory_) {
    case Theory::MU: return mu_rank(q);
    case Theory::KU: return q % 2 == 0 ? 1 : 0;
    case Theory::HZ: return q == 0 ? 1 : 0;
    case Theory::MoravaK: {
      // deg v_n = -2(l^n - 1)
      int per = period();
      return q % per == 0 ? 1 : 0;
    }
  }
  return 0;
}

int GradedCoefficients::period() const {
  switch (theory_) {
    case Theory::KU: return 2;
    case Theory::MoravaK: return static_cast<int>(2 * (ipow(ell_, height_) - 1));
    default: return 0;
  }
}

FinAb GradedCoefficients::group(int q) const {
  return FinAb::cyclic(modulus_).power(static_cast<std::size_t>(rank(q)));
}

}  // namespace profet
