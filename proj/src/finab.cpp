#include "profet/finab.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "profet/error.hpp"

namespace profet {

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  if (n < 2) return out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(std::int64_t n) {
  auto f = factorize(n);
  return f.size() == 1 && f.front().second == 1;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

FinAb FinAb::from_invariant_factors(std::vector<std::int64_t> factors) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2)
      throw StructuralError("invariant factor must be >= 2");
    if (i > 0 && factors[i] % factors[i - 1] != 0)
      throw StructuralError("invariant factors must form a divisibility chain");
  }
  return FinAb(std::move(factors));
}

FinAb FinAb::from_cyclic(const std::vector<std::int64_t>& orders) {
  // Collect prime powers per prime, then stack the largest ones into the
  // last invariant factor.
  std::map<std::int64_t, std::vector<std::int64_t>> by_prime;
  for (auto c : orders) {
    if (c <= 0) throw StructuralError("cyclic order must be positive");
    for (auto [p, e] : factorize(c)) by_prime[p].push_back(ipow(p, e));
  }
  std::size_t len = 0;
  for (auto& [p, v] : by_prime) {
    std::sort(v.begin(), v.end());
    len = std::max(len, v.size());
  }
  std::vector<std::int64_t> f(len, 1);
  for (auto& [p, v] : by_prime) {
    std::size_t off = len - v.size();
    for (std::size_t i = 0; i < v.size(); ++i) f[off + i] *= v[i];
  }
  return FinAb(std::move(f));
}

mpz_class FinAb::order() const {
  mpz_class r = 1;
  for (auto f : factors_) r *= static_cast<long>(f);
  return r;
}

std::vector<std::int64_t> FinAb::elementary_divisors() const {
  std::vector<std::int64_t> out;
  for (auto f : factors_)
    for (auto [p, e] : factorize(f)) out.push_back(ipow(p, e));
  std::sort(out.begin(), out.end());
  return out;
}

FinAb FinAb::direct_sum(const FinAb& other) const {
  std::vector<std::int64_t> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return from_cyclic(all);
}

FinAb FinAb::power(std::size_t r) const {
  std::vector<std::int64_t> all;
  for (std::size_t i = 0; i < r; ++i) all.insert(all.end(), factors_.begin(), factors_.end());
  return from_cyclic(all);
}

bool FinAb::is_free_over(std::int64_t m) const {
  return std::all_of(factors_.begin(), factors_.end(), [m](auto f) { return f == m; });
}

FinAb::Element FinAb::add(const Element& a, const Element& b) const {
  Element r(factors_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (a[i] + b[i]) % factors_[i];
  return r;
}

FinAb::Element FinAb::negate(const Element& a) const {
  Element r(factors_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (factors_[i] - a[i]) % factors_[i];
  return r;
}

bool FinAb::contains(const Element& a) const {
  if (a.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < 0 || a[i] >= factors_[i]) return false;
  return true;
}

std::string FinAb::to_string() const {
  if (factors_.empty()) return "0";
  std::string s;
  std::size_t i = 0;
  while (i < factors_.size()) {
    std::size_t j = i;
    while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
    if (!s.empty()) s += " + ";
    s += "Z/" + std::to_string(factors_[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

}  // namespace profet
