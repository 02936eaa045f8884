#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "profet/coefficients.hpp"
#include "profet/cochain.hpp"
#include "profet/finab.hpp"

namespace profet {

/// E_r^{p,q} = H^p(X; E^q (x) Z/l^nu) on the rectangle p in [0, p_max],
/// q in [q_min, q_max].  d_r has bidegree (r, 1 - r).
class SSPage {
 public:
  int page() const { return r_; }
  int p_max() const { return p_max_; }
  int q_min() const { return q_min_; }
  int q_max() const { return q_max_; }
  /// True when H^p = 0 is certified for p > p_max.
  bool bounded() const { return bounded_; }
  bool reduced() const { return reduced_; }
  const GradedCoefficients& coefficients() const { return C_; }

  /// Entry inside the window; throws InputError outside it.
  const FinAb& entry(int p, int q) const;
  /// Entry anywhere in the plane when it is determined: zero for p < 0, for
  /// rank(q) = 0, and for p > p_max on a bounded page; nullopt when unknown.
  std::optional<FinAb> known(int p, int q) const;

  friend SSPage build_e2(const CohomologyTable& base, const GradedCoefficients& C, int n0, int n1);

 private:
  SSPage(const GradedCoefficients& C) : C_(C) {}
  int r_ = 2;
  int p_max_ = 0, q_min_ = 0, q_max_ = 0;
  bool bounded_ = false, reduced_ = false;
  GradedCoefficients C_;
  std::vector<FinAb> base_;                // H^p(X; Z/l^nu), p = 0..p_max
  std::vector<std::vector<FinAb>> cells_;  // [p][q - q_min]
};

/// E_2 page for total degrees [n0, n1]: p_max is the support bound of the base
/// when known (else its last computed degree) and q runs over [n0 - p_max, n1].
SSPage build_e2(const CohomologyTable& base, const GradedCoefficients& C, int n0, int n1);

struct CollapseCertificate {
  bool collapses = false;
  std::vector<std::string> reasons;           // one line per source cell
  std::optional<std::string> undetermined;   // first differential not forced to vanish
};
/// Marks d_r : (p,q) -> (p+r, q-r+1) zero when source or target vanishes, for
/// every differential touching total degrees [n0, n1].
CollapseCertificate analyze_differentials(const SSPage& page, int n0, int n1);

enum class ConvergenceCertificate { FiniteGroups, BoundedSupport };
std::vector<ConvergenceCertificate> convergence_check(const CohomologyTable& base, const GradedCoefficients& C);
std::string to_string(ConvergenceCertificate c);

struct Piece {
  int p = 0, q = 0;
  FinAb group;
};

struct DegreeReport {
  int degree = 0;
  std::vector<Piece> pieces;  // nonzero E_infinity pieces, increasing p
  bool resolved = false;
  std::optional<FinAb> group;
  std::string order;  // product of piece orders, decimal
};

/// Splitting of the extension problem, licensed by the caller.
struct SplittingFlag {
  bool split = false;
  std::string justification;
};

struct AbutmentReport {
  std::string status = "OK";  // OK or UNDETERMINED
  std::string theory;
  std::int64_t ell = 2;
  int nu = 1;
  bool reduced = false;
  std::vector<DegreeReport> degrees;
  std::vector<std::string> certificates;
  std::vector<std::string> notes;
  SplittingFlag splitting;

  const DegreeReport& at(int n) const;
  nlohmann::json to_json() const;
  static AbutmentReport from_json(const nlohmann::json& j);
};

/// Associated graded of the abutment in total degrees [n0, n1]; requires a
/// collapse certificate.  With the splitting flag, a degree whose pieces are
/// all Z/l-vector spaces is resolved to their direct sum.
AbutmentReport assemble_abutment(const SSPage& page, const CollapseCertificate& cert, int n0, int n1,
                                 const SplittingFlag& split = {});

/// Full pipeline; an unprovable collapse gives status UNDETERMINED and no groups.
AbutmentReport run_ahss(const CohomologyTable& base, const GradedCoefficients& C, int n0, int n1,
                        const SplittingFlag& split = {});

}  // namespace profet
