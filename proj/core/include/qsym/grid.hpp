#pragma once

#include <array>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qsym/star_domain.hpp"

namespace qsym {

// Arm directions of a grid node.
enum Dir : int { East = 0, West = 1, North = 2, South = 3 };

// Cartesian grid of spacing h on the bounding box of a star domain, with
// the nodes strictly inside the domain as unknowns. Nodes sit at integer
// multiples of h, so the origin is a node.
class Grid {
 public:
  struct Unknown {
    int i = 0, j = 0;
    std::array<double, 4> frac{1, 1, 1, 1};  // arm length / h
    std::array<bool, 4> cut{false, false, false, false};
    std::array<Vec2, 4> cut_point;
    bool irregular() const { return cut[0] || cut[1] || cut[2] || cut[3]; }
  };

  struct Cell {
    double area = 0;
    std::array<int, 4> corner{-1, -1, -1, -1};  // unknown index or -1
    int fallback = -1;  // nearest unknown when no corner is inside
  };

  // Throws GridTooCoarse when the inside region is disconnected, has fewer
  // than 25 nodes, or a boundary cut along a grid line is ambiguous.
  Grid(const StarDomain2D& domain, double h);

  const StarDomain2D& domain() const { return domain_; }
  double h() const { return h_; }
  int half_width() const { return n_; }  // node indices run over [-n, n]

  Vec2 position(int i, int j) const { return Vec2(h_ * i, h_ * j); }
  Vec2 position(int k) const { return position(unknowns_[k].i, unknowns_[k].j); }

  // Unknown index of node (i, j) or -1.
  int index(int i, int j) const;

  const std::vector<Unknown>& unknowns() const { return unknowns_; }
  std::size_t size() const { return unknowns_.size(); }

  // Integration cells (lazily built, thread-safe).
  const std::vector<Cell>& cells() const;
  double domain_area() const { return area_; }
  // 1 - (covered area / |Omega|).
  double excluded_fraction() const;

  // delta_Gamma at every unknown (lazily built, thread-safe).
  const std::vector<double>& boundary_distance() const;

 private:
  StarDomain2D domain_;
  double h_;
  int n_;
  double area_;
  std::vector<int> index_;
  std::vector<Unknown> unknowns_;

  mutable std::once_flag cells_once_, dist_once_;
  mutable std::vector<Cell> cells_;
  mutable std::vector<double> dist_;

  void build_cells() const;
};

enum class Provenance { Solved, Analytic, Derived };

// Values at the unknowns of a grid plus, optionally, values at the
// boundary cut points (per unknown and arm; NaN when the arm is regular).
struct DiscreteField {
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;
  std::vector<std::array<double, 4>> boundary;  // empty when unknown
  Provenance provenance = Provenance::Derived;

  bool has_boundary() const { return !boundary.empty(); }
};

// Samples f at the unknowns and cut points.
DiscreteField sample_field(std::shared_ptr<const Grid> grid,
                           const std::function<double(const Vec2&)>& f,
                           Provenance provenance = Provenance::Analytic);

// Unnormalized integral over Omega of nodal data, cellwise.
double integrate_nodal(const Grid& grid, const std::vector<double>& nodal);

enum class Weight { None, DeltaGamma };

// Normalized L^p norm (dx / |Omega|) of nodal magnitudes. With
// Weight::DeltaGamma the magnitude is multiplied by delta_Gamma^alpha.
double lp_norm_domain(const Grid& grid, const std::vector<double>& magnitude, double p,
                      Weight weight = Weight::None, double alpha = 0.0);

// Writes x,y,value rows for every unknown.
void dump_field_csv(const DiscreteField& field, const std::string& path);

}  // namespace qsym
