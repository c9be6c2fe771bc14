#include "qsym/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>

#include "qsym/errors.hpp"

namespace qsym {
namespace {

const int kDi[4] = {1, -1, 0, 0};
const int kDj[4] = {0, 0, 1, -1};

using Polygon = std::vector<Vec2>;

// Sutherland-Hodgman against the half-plane  s * (p[axis] - c) <= 0.
Polygon clip_half(const Polygon& in, int axis, double c, double s) {
  Polygon out;
  if (in.empty()) return out;
  auto inside = [&](const Vec2& p) { return s * (p[axis] - c) <= 0.0; };
  for (std::size_t k = 0; k < in.size(); ++k) {
    const Vec2& cur = in[k];
    const Vec2& prev = in[(k + in.size() - 1) % in.size()];
    const bool ci = inside(cur), pi = inside(prev);
    if (ci != pi) {
      const double t = (c - prev[axis]) / (cur[axis] - prev[axis]);
      out.push_back(prev + t * (cur - prev));
    }
    if (ci) out.push_back(cur);
  }
  return out;
}

double shoelace(const Polygon& p) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Vec2& a = p[k];
    const Vec2& b = p[(k + 1) % p.size()];
    s += a.x() * b.y() - a.y() * b.x();
  }
  return 0.5 * std::abs(s);
}

double wrap_angle(double t) {
  while (t > kPi) t -= 2.0 * kPi;
  while (t <= -kPi) t += 2.0 * kPi;
  return t;
}

// |Omega  cap  [x0, x0+h] x [y0, y0+h]| via a polygonal fan over the angular
// sector covering the cell.
double cut_cell_area(const StarDomain2D& domain, double x0, double y0, double h) {
  Polygon fan;
  const bool holds_origin = x0 <= 0.0 && 0.0 <= x0 + h && y0 <= 0.0 && 0.0 <= y0 + h;
  if (holds_origin) {
    const int m = 4096;
    for (int k = 0; k < m; ++k) fan.push_back(domain.point(2.0 * kPi * k / m));
  } else {
    const Vec2 corners[4] = {{x0, y0}, {x0 + h, y0}, {x0, y0 + h}, {x0 + h, y0 + h}};
    const double pc = std::atan2(y0 + 0.5 * h, x0 + 0.5 * h);
    double lo = 0.0, hi = 0.0;
    for (const Vec2& c : corners) {
      const double d = wrap_angle(std::atan2(c.y(), c.x()) - pc);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    const int m = 64;
    fan.push_back(Vec2(0.0, 0.0));
    for (int k = 0; k <= m; ++k) fan.push_back(domain.point(pc + lo + (hi - lo) * k / m));
  }
  fan = clip_half(fan, 0, x0, -1.0);
  fan = clip_half(fan, 0, x0 + h, 1.0);
  fan = clip_half(fan, 1, y0, -1.0);
  fan = clip_half(fan, 1, y0 + h, 1.0);
  return fan.size() < 3 ? 0.0 : shoelace(fan);
}

}  // namespace

Grid::Grid(const StarDomain2D& domain, double h) : domain_(domain), h_(h) {
  if (!(h > 0.0)) throw DomainError("grid spacing must be > 0");
  domain_.validate();
  area_ = area(domain_);
  const double R = domain_.max_radius();
  if (R / h > 4000.0) throw DomainError("grid spacing too small for the domain size");
  n_ = static_cast<int>(std::ceil(1.02 * R / h)) + 2;
  const int w = 2 * n_ + 1;
  index_.assign(static_cast<std::size_t>(w) * w, -1);
  const double inside_tol = 1e-10 * h;

  for (int j = -n_; j <= n_; ++j) {
    for (int i = -n_; i <= n_; ++i) {
      if (domain_.level(position(i, j)) < -inside_tol) {
        index_[(i + n_) + static_cast<std::size_t>(j + n_) * w] = static_cast<int>(unknowns_.size());
        Unknown u;
        u.i = i;
        u.j = j;
        unknowns_.push_back(u);
      }
    }
  }
  if (unknowns_.size() < 25) {
    throw GridTooCoarse("grid resolves only " + std::to_string(unknowns_.size()) +
                        " interior nodes (need >= 25); decrease grid.h");
  }

  for (Unknown& u : unknowns_) {
    const Vec2 p = position(u.i, u.j);
    for (int d = 0; d < 4; ++d) {
      const Vec2 dir(kDi[d], kDj[d]);
      auto F = [&](double t) { return domain_.level(p + t * h * dir); };
      int sign_changes = 0;
      bool prev_in = true;
      for (int k = 1; k <= 8; ++k) {
        const bool in = F(k / 8.0) < -inside_tol;
        if (in != prev_in) ++sign_changes;
        prev_in = in;
      }
      const bool neighbor_in = index(u.i + kDi[d], u.j + kDj[d]) >= 0;
      if (neighbor_in) {
        if (sign_changes != 0) {
          throw GridTooCoarse("boundary crosses a grid segment between two interior nodes near (" +
                              std::to_string(p.x()) + ", " + std::to_string(p.y()) + ")");
        }
        continue;
      }
      if (sign_changes > 1) {
        throw GridTooCoarse("boundary crosses a grid segment more than once near (" +
                            std::to_string(p.x()) + ", " + std::to_string(p.y()) + ")");
      }
      double t = 1.0;
      if (F(1.0) > 0.0) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (F(mid) < 0.0) lo = mid; else hi = mid;
        }
        t = std::max(0.5 * (lo + hi), 1e-12);
      }
      u.cut[d] = true;
      u.frac[d] = t;
      u.cut_point[d] = p + t * h * dir;
    }
  }

  // connectivity
  std::vector<char> seen(unknowns_.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const int k = queue.front();
    queue.pop_front();
    for (int d = 0; d < 4; ++d) {
      const int nb = index(unknowns_[k].i + kDi[d], unknowns_[k].j + kDj[d]);
      if (nb >= 0 && !seen[nb]) {
        seen[nb] = 1;
        ++reached;
        queue.push_back(nb);
      }
    }
  }
  if (reached != unknowns_.size()) {
    throw GridTooCoarse("interior grid region is disconnected (" + std::to_string(reached) +
                        " of " + std::to_string(unknowns_.size()) + " nodes reachable)");
  }
}

int Grid::index(int i, int j) const {
  if (i < -n_ || i > n_ || j < -n_ || j > n_) return -1;
  return index_[(i + n_) + static_cast<std::size_t>(j + n_) * (2 * n_ + 1)];
}

void Grid::build_cells() const {
  cells_.clear();
  for (int j = -n_; j < n_; ++j) {
    for (int i = -n_; i < n_; ++i) {
      Cell c;
      c.corner = {index(i, j), index(i + 1, j), index(i, j + 1), index(i + 1, j + 1)};
      const int inside = static_cast<int>(std::count_if(c.corner.begin(), c.corner.end(),
                                                         [](int k) { return k >= 0; }));
      if (inside == 4) {
        c.area = h_ * h_;
        cells_.push_back(c);
        continue;
      }
      if (inside == 0) {
        double lmin = std::numeric_limits<double>::infinity();
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) lmin = std::min(lmin, domain_.level(position(i + a, j + b)));
        if (lmin > 1.5 * h_) continue;
      }
      c.area = cut_cell_area(domain_, h_ * i, h_ * j, h_);
      if (c.area <= 0.0) continue;
      if (inside == 0) {
        const Vec2 center = position(i, j) + Vec2(0.5 * h_, 0.5 * h_);
        double best = std::numeric_limits<double>::infinity();
        for (int b = -1; b <= 2; ++b) {
          for (int a = -1; a <= 2; ++a) {
            const int k = index(i + a, j + b);
            if (k < 0) continue;
            const double d = (position(i + a, j + b) - center).squaredNorm();
            if (d < best) {
              best = d;
              c.fallback = k;
            }
          }
        }
        if (c.fallback < 0) continue;
      }
      cells_.push_back(c);
    }
  }
}

const std::vector<Grid::Cell>& Grid::cells() const {
  std::call_once(cells_once_, [this] { build_cells(); });
  return cells_;
}

double Grid::excluded_fraction() const {
  double covered = 0.0;
  for (const Cell& c : cells()) covered += c.area;
  return std::max(0.0, 1.0 - covered / area_);
}

const std::vector<double>& Grid::boundary_distance() const {
  std::call_once(dist_once_, [this] {
    const BoundaryDistance dist(domain_, 1024);
    dist_.resize(unknowns_.size());
    for (std::size_t k = 0; k < unknowns_.size(); ++k) {
      dist_[k] = dist(position(static_cast<int>(k)));
    }
  });
  return dist_;
}

DiscreteField sample_field(std::shared_ptr<const Grid> grid,
                           const std::function<double(const Vec2&)>& f,
                           Provenance provenance) {
  DiscreteField out;
  out.provenance = provenance;
  const auto& unk = grid->unknowns();
  out.values.resize(unk.size());
  out.boundary.resize(unk.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < unk.size(); ++k) {
    out.values[k] = f(grid->position(static_cast<int>(k)));
    for (int d = 0; d < 4; ++d) out.boundary[k][d] = unk[k].cut[d] ? f(unk[k].cut_point[d]) : nan;
  }
  out.grid = std::move(grid);
  return out;
}

double integrate_nodal(const Grid& grid, const std::vector<double>& nodal) {
  if (nodal.size() != grid.size()) throw DomainError("integrate_nodal: size mismatch");
  double total = 0.0;
  for (const Grid::Cell& c : grid.cells()) {
    double sum = 0.0;
    int count = 0;
    for (int k : c.corner) {
      if (k >= 0) {
        sum += nodal[k];
        ++count;
      }
    }
    total += c.area * (count > 0 ? sum / count : nodal[c.fallback]);
  }
  return total;
}

double lp_norm_domain(const Grid& grid, const std::vector<double>& magnitude, double p,
                      Weight weight, double alpha) {
  if (!(p >= 1.0)) throw DomainError("lp_norm_domain: p must be >= 1");
  std::vector<double> m(magnitude.size());
  const std::vector<double>* dist = weight == Weight::DeltaGamma ? &grid.boundary_distance() : nullptr;
  for (std::size_t k = 0; k < m.size(); ++k) {
    m[k] = std::abs(magnitude[k]);
    if (dist) m[k] *= std::pow((*dist)[k], alpha);
  }
  if (is_infinite(p)) return m.empty() ? 0.0 : *std::max_element(m.begin(), m.end());
  for (double& v : m) v = std::pow(v, p);
  return std::pow(integrate_nodal(grid, m) / grid.domain_area(), 1.0 / p);
}

void dump_field_csv(const DiscreteField& field, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  std::fprintf(f, "x,y,value\n");
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    const Vec2 x = field.grid->position(static_cast<int>(k));
    std::fprintf(f, "%.17g,%.17g,%.17g\n", x.x(), x.y(), field.values[k]);
  }
  std::fclose(f);
}

}  // namespace qsym
