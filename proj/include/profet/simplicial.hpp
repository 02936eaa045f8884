#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "profet/error.hpp"

namespace profet {

using Simplex = std::int32_t;
using Table = std::vector<Simplex>;

/// Levelwise-finite simplicial set truncated at dimension D.
/// Simplices are dense indices per level; faces and degeneracies are tables.
class FinSimpSet {
 public:
  FinSimpSet() = default;
  /// faces[k][i] : X_k -> X_{k-1} for 1 <= k <= D (faces[0] empty);
  /// degens[k][i] : X_k -> X_{k+1} for 0 <= k < D.
  /// Validates every simplicial identity; throws StructuralError.
  FinSimpSet(int D, std::vector<std::size_t> sizes, std::vector<std::vector<Table>> faces,
             std::vector<std::vector<Table>> degens, std::optional<Simplex> basepoint);

  int dim() const { return D_; }
  std::size_t size(int k) const { return sizes_[k]; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  Simplex face(int k, int i, Simplex x) const { return faces_[k][i][x]; }
  Simplex degen(int k, int i, Simplex x) const { return degens_[k][i][x]; }
  const Table& face_table(int k, int i) const { return faces_[k][i]; }
  const Table& degen_table(int k, int i) const { return degens_[k][i]; }
  const std::optional<Simplex>& basepoint() const { return basepoint_; }
  bool pointed() const { return basepoint_.has_value(); }
  /// Iterated degeneracy of the basepoint in level k.
  Simplex base_at(int k) const;

  bool is_degenerate(int k, Simplex x) const { return witness_[k][x].first >= 0; }
  /// For degenerate x in level k: (i, z) with x = s_i z.
  std::pair<int, Simplex> degeneracy_witness(int k, Simplex x) const { return witness_[k][x]; }
  /// Dimension of the nondegenerate simplex x is a degeneracy of.
  int root_dim(int k, Simplex x) const { return root_dim_[k][x]; }
  std::vector<Simplex> nondegenerate(int k) const;
  std::vector<std::size_t> nondegenerate_census() const;

  /// Same simplicial set with truncation lowered to D' <= D.
  FinSimpSet truncate(int D) const;

  bool operator==(const FinSimpSet& o) const {
    return D_ == o.D_ && sizes_ == o.sizes_ && faces_ == o.faces_ && degens_ == o.degens_ &&
           basepoint_ == o.basepoint_;
  }

  nlohmann::json to_json() const;
  static FinSimpSet from_json(const nlohmann::json& j);

 private:
  int D_ = 0;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<Table>> faces_, degens_;
  std::optional<Simplex> basepoint_;
  std::vector<std::vector<std::pair<int, Simplex>>> witness_;
  std::vector<std::vector<int>> root_dim_;
};

/// Levelwise functions commuting with faces and degeneracies.
class SimplicialMap {
 public:
  SimplicialMap() = default;
  /// level_maps[k] : X_k -> Y_k for k <= min(D_X, D_Y). Validated.
  SimplicialMap(const FinSimpSet& source, const FinSimpSet& target, std::vector<Table> level_maps);
  const std::vector<Table>& level_maps() const { return maps_; }
  Simplex operator()(int k, Simplex x) const { return maps_[k][x]; }
  int dim() const { return static_cast<int>(maps_.size()) - 1; }
  std::size_t source_size(int k) const { return maps_[k].size(); }
  /// (*this) after first.
  SimplicialMap after(const SimplicialMap& first) const;
  bool operator==(const SimplicialMap& o) const { return maps_ == o.maps_; }

 private:
  std::vector<Table> maps_;
};

/// Levelwise membership flags of a sub-simplicial set.
struct SubComplex {
  std::vector<std::vector<char>> member;
  bool contains(int k, Simplex x) const { return member[k][x] != 0; }
  std::size_t count(int k) const;
};

/// Inverse system of finite stages; bonds[t] : stages[t+1] -> stages[t].
struct Tower {
  std::vector<FinSimpSet> stages;
  std::vector<SimplicialMap> bonds;
  std::size_t size() const { return stages.size(); }
  /// Checks bond shapes and basepoint preservation.
  void validate() const;
  nlohmann::json to_json() const;
  static Tower from_json(const nlohmann::json& j);
};

/// Builds a simplicial set from explicit per-level key lists and structure functions.
template <class Key>
FinSimpSet build_from_keys(int D, const std::vector<std::vector<Key>>& levels,
                           const std::function<Key(int, int, const Key&)>& face,
                           const std::function<Key(int, int, const Key&)>& degen,
                           std::optional<Key> basepoint = std::nullopt) {
  std::vector<std::map<Key, Simplex>> index(D + 1);
  std::vector<std::size_t> sizes(D + 1);
  for (int k = 0; k <= D; ++k) {
    sizes[k] = levels[k].size();
    for (std::size_t a = 0; a < levels[k].size(); ++a) index[k][levels[k][a]] = static_cast<Simplex>(a);
  }
  auto lookup = [&](int k, const Key& key) {
    auto it = index[k].find(key);
    if (it == index[k].end()) throw StructuralError("structure map leaves the declared level");
    return it->second;
  };
  std::vector<std::vector<Table>> faces(D + 1), degens(D + 1);
  for (int k = 0; k <= D; ++k) {
    if (k >= 1)
      for (int i = 0; i <= k; ++i) {
        Table t(sizes[k]);
        for (std::size_t a = 0; a < sizes[k]; ++a) t[a] = lookup(k - 1, face(k, i, levels[k][a]));
        faces[k].push_back(std::move(t));
      }
    if (k < D)
      for (int i = 0; i <= k; ++i) {
        Table t(sizes[k]);
        for (std::size_t a = 0; a < sizes[k]; ++a) t[a] = lookup(k + 1, degen(k, i, levels[k][a]));
        degens[k].push_back(std::move(t));
      }
  }
  std::optional<Simplex> bp;
  if (basepoint) bp = lookup(0, *basepoint);
  return FinSimpSet(D, std::move(sizes), std::move(faces), std::move(degens), bp);
}

/// Monotone maps [k] -> [n] as value sequences, in lexicographic order.
std::vector<std::vector<int>> monotone_maps(int k, int n);

/// A simplex given as a degeneracy of a generating cell: the monotone
/// surjection [k] -> [dim cell] is listed by its values.
struct CellRef {
  int cell = 0;
  std::vector<int> surjection;
};
/// Nondegenerate generating cell with its faces (each possibly degenerate).
struct Cell {
  int dim = 0;
  std::vector<CellRef> faces;
};
/// Simplicial set freely generated by cells, with all degeneracies up to D.
/// Cells must be listed so that faces refer to earlier cells.
FinSimpSet from_cells(int D, const std::vector<Cell>& cells, std::optional<int> basepoint_cell);

FinSimpSet standard_simplex(int n, int D);
/// Point (one simplex per level), pointed.
FinSimpSet point(int D);
/// Two points, one of them the basepoint.
FinSimpSet sphere0(int D);
/// Delta[m] / boundary: one nondegenerate simplex in dimensions 0 and m.
FinSimpSet sphere(int m, int D);
/// Moore space S^1 with a 2-cell attached along a loop of degree m (m >= 2):
/// H_1 = Z/m, H_2 = 0.
FinSimpSet moore_space(int m, int D);
/// Boundary of Delta[n] as a simplicial set.
FinSimpSet boundary_simplex(int n, int D);

/// Sub-simplicial set generated by simplices of dimension <= p, with its inclusion.
struct Skeleton {
  FinSimpSet space;
  SimplicialMap inclusion;
  SubComplex members;
};
Skeleton skeleton(const FinSimpSet& X, int p);

/// Sub-simplicial set of X given by the image of an injective map (or any map).
SubComplex image_of(const SimplicialMap& f, const FinSimpSet& target);
/// The sub-simplicial set consisting of the basepoint and its degeneracies.
SubComplex basepoint_sub(const FinSimpSet& X);
/// Throws StructuralError unless A is closed under faces and degeneracies.
void check_closed(const FinSimpSet& X, const SubComplex& A);
/// Smallest sub-simplicial set containing the given (level, simplex) seeds.
SubComplex generated_subcomplex(const FinSimpSet& X, const std::vector<std::pair<int, Simplex>>& seeds);
/// Extracts A as a simplicial set with its inclusion.
Skeleton sub_simplicial_set(const FinSimpSet& X, const SubComplex& A);

/// X/A with A collapsed to the basepoint (X_+ when A is empty). Also returns the projection.
struct Quotient {
  FinSimpSet space;
  SimplicialMap projection;
};
Quotient quotient_with_map(const FinSimpSet& X, const SubComplex& A);
FinSimpSet quotient(const FinSimpSet& X, const SubComplex& A);

FinSimpSet product(const FinSimpSet& X, const FinSimpSet& Y);
FinSimpSet disjoint_union(const FinSimpSet& X, const FinSimpSet& Y);
FinSimpSet forget_basepoint(const FinSimpSet& X);
FinSimpSet with_basepoint(const FinSimpSet& X, Simplex b);
/// X with a disjoint basepoint added.
FinSimpSet add_basepoint(const FinSimpSet& X);
FinSimpSet smash(const FinSimpSet& X, const FinSimpSet& Y);

/// Connected components: class label per vertex, labels dense from 0.
std::vector<int> pi0_labels(const FinSimpSet& X);
std::size_t pi0(const FinSimpSet& X);

/// Exhaustive enumeration of (pointed, when both are pointed) simplicial maps
/// X -> Y on levels <= min(D_X, D_Y). Throws BudgetExceeded past max_nodes search steps.
std::vector<SimplicialMap> enumerate_maps(const FinSimpSet& X, const FinSimpSet& Y,
                                          std::size_t max_nodes = 1000000);
/// Pointed maps W smash Delta[n]_+ -> Y.
std::vector<SimplicialMap> mapping_space_level(const FinSimpSet& W, const FinSimpSet& Y, int n,
                                               std::size_t max_nodes = 1000000);
/// A levelwise bijective simplicial map X -> Y, if one exists.
std::optional<SimplicialMap> find_isomorphism(const FinSimpSet& X, const FinSimpSet& Y,
                                              std::size_t max_nodes = 1000000);

Tower tower_from(const FinSimpSet& X);

}  // namespace profet
