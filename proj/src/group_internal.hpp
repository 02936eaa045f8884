#pragma once

#include <vector>

#include "profet/cochain.hpp"
#include "profet/modular.hpp"

namespace profet::detail {

/// Cohomology groups in degrees 0..deltas.size()-1 of a trivial-coefficient
/// complex (cochain dimension per degree is dims[n] copies of M).
std::vector<FinAb> groups_of_complex(const std::vector<DenseMatrix>& deltas,
                                     const std::vector<std::size_t>& dims, const FinAb& M,
                                     std::size_t degrees);

/// Colimit over stages with cochain maps inf[t][n] : C^n(stage t) -> C^n(stage t+1).
TowerCohomology colimit_of_complexes(const std::vector<std::vector<DenseMatrix>>& deltas,
                                     const std::vector<std::vector<std::size_t>>& dims,
                                     const std::vector<std::vector<DenseMatrix>>& inf, const FinAb& M,
                                     int top, const char* provenance);

}  // namespace profet::detail
