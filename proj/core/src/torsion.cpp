#include "qsym/torsion.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "qsym/errors.hpp"

namespace qsym {
namespace {

const int kDi[4] = {1, -1, 0, 0};
const int kDj[4] = {0, 0, 1, -1};

// Shortley-Weller coefficients of the unknown k: [E, W, N, S] and centre.
struct Stencil {
  std::array<double, 4> c;
  double center;
};

Stencil stencil_of(const Grid::Unknown& u, double h) {
  Stencil s;
  const double hE = u.frac[East] * h, hW = u.frac[West] * h;
  const double hN = u.frac[North] * h, hS = u.frac[South] * h;
  s.c[East] = 2.0 / (hE * (hE + hW));
  s.c[West] = 2.0 / (hW * (hE + hW));
  s.c[North] = 2.0 / (hN * (hN + hS));
  s.c[South] = 2.0 / (hS * (hN + hS));
  s.center = -(s.c[0] + s.c[1] + s.c[2] + s.c[3]);
  return s;
}

constexpr std::size_t kDirectLimit = 1000000;

}  // namespace

std::pair<DiscreteField, SolveReport> solve_poisson(
    std::shared_ptr<const Grid> grid, const std::function<double(const Vec2&)>& rhs,
    const std::function<double(const Vec2&)>& dirichlet) {
  const auto& unk = grid->unknowns();
  const std::size_t n = unk.size();
  const double h = grid->h();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(5 * n);
  Eigen::VectorXd b(n);
  DiscreteField out;
  out.provenance = Provenance::Solved;
  out.boundary.resize(n);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t k = 0; k < n; ++k) {
    const Grid::Unknown& u = unk[k];
    const Stencil s = stencil_of(u, h);
    // rows scaled by the diagonal
    const double scale = 1.0 / std::abs(s.center);
    double rhs_k = rhs(grid->position(static_cast<int>(k)));
    trips.emplace_back(static_cast<int>(k), static_cast<int>(k), s.center * scale);
    for (int d = 0; d < 4; ++d) {
      if (u.cut[d]) {
        const double g = dirichlet(u.cut_point[d]);
        out.boundary[k][d] = g;
        rhs_k -= s.c[d] * g;
      } else {
        out.boundary[k][d] = nan;
        trips.emplace_back(static_cast<int>(k), grid->index(u.i + kDi[d], u.j + kDj[d]), s.c[d] * scale);
      }
    }
    b(k) = rhs_k * scale;
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();

  SolveReport rep;
  rep.h = h;
  rep.unknowns = n;
  Eigen::VectorXd x;
  if (n < kDirectLimit) {
    rep.method = "sparse-lu";
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw NumericalError("sparse LU factorization failed: " + lu.lastErrorMessage());
    x = lu.solve(b);
    // one step of iterative refinement
    const Eigen::VectorXd r = b - A * x;
    x += lu.solve(r);
  } else {
    rep.method = "bicgstab-diagonal";
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::DiagonalPreconditioner<double>> it;
    it.setTolerance(1e-12);
    it.setMaxIterations(20000);
    it.compute(A);
    x = it.solve(b);
    if (it.info() != Eigen::Success) throw NumericalError("BiCGSTAB did not converge");
  }
  const double bn = b.norm();
  rep.residual = (A * x - b).norm() / (bn > 0.0 ? bn : 1.0);
  if (!(rep.residual <= 1e-10)) {
    throw NumericalError("linear solve residual " + std::to_string(rep.residual) + " exceeds 1e-10");
  }
  out.values.assign(x.data(), x.data() + n);
  out.grid = std::move(grid);
  return {std::move(out), rep};
}

std::pair<DiscreteField, SolveReport> solve_torsion(const StarDomain2D& domain, double h) {
  auto grid = std::make_shared<const Grid>(domain, h);
  return solve_poisson(grid, [](const Vec2&) { return 2.0; }, [](const Vec2&) { return 0.0; });
}

AnalyticField exact_ellipse_torsion(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ellipse semi-axes must be > 0");
  const double c = a * a * b * b / (a * a + b * b);
  AnalyticField f;
  f.label = "ellipse_torsion";
  f.dim = 2;
  f.value = [=](const VecN& x) { return c * (x(0) * x(0) / (a * a) + x(1) * x(1) / (b * b) - 1.0); };
  f.gradient = [=](const VecN& x) {
    VecN g(2);
    g << 2.0 * c * x(0) / (a * a), 2.0 * c * x(1) / (b * b);
    return g;
  };
  f.hessian = [=](const VecN&) {
    MatN H = MatN::Zero(2, 2);
    H(0, 0) = 2.0 * b * b / (a * a + b * b);
    H(1, 1) = 2.0 * a * a / (a * a + b * b);
    return H;
  };
  return f;
}

Vec2 locate_min(const DiscreteField& u) {
  const Grid& g = *u.grid;
  const auto& unk = g.unknowns();
  const auto it = std::min_element(u.values.begin(), u.values.end());
  const int k = static_cast<int>(it - u.values.begin());
  const Grid::Unknown& c = unk[k];
  if (c.irregular()) {
    throw DegenerateGeometry("torsion minimum sits on a node adjacent to the boundary");
  }
  // least-squares quadratic on the 3x3 block, local coordinates in units of h
  Eigen::Matrix<double, Eigen::Dynamic, 6> M(0, 6);
  Eigen::VectorXd rhs(0);
  std::vector<std::array<double, 6>> rows;
  std::vector<double> vals;
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      const int q = g.index(c.i + di, c.j + dj);
      if (q < 0) continue;
      rows.push_back({1.0, double(di), double(dj), 0.5 * di * di, double(di * dj), 0.5 * dj * dj});
      vals.push_back(u.values[q]);
    }
  }
  M.resize(static_cast<int>(rows.size()), 6);
  rhs.resize(static_cast<int>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int j = 0; j < 6; ++j) M(r, j) = rows[r][j];
    rhs(r) = vals[r];
  }
  const Eigen::Matrix<double, 6, 1> coef = M.colPivHouseholderQr().solve(rhs);
  Eigen::Matrix2d H;
  H << coef(3), coef(4), coef(4), coef(5);
  const Eigen::Vector2d grad(coef(1), coef(2));
  const Vec2 base = g.position(k);
  if (H.determinant() <= 0.0 || H(0, 0) <= 0.0) return base;
  const Eigen::Vector2d step = -H.inverse() * grad;
  if (step.cwiseAbs().maxCoeff() > 1.0) return base;
  return base + g.h() * step;
}

DiscreteField h_field(const DiscreteField& u, const Vec2& z) {
  const Grid& g = *u.grid;
  const auto& unk = g.unknowns();
  DiscreteField out;
  out.grid = u.grid;
  out.provenance = Provenance::Derived;
  out.values.resize(u.values.size());
  auto Q = [&](const Vec2& x) { return 0.5 * (x - z).squaredNorm(); };
  for (std::size_t k = 0; k < unk.size(); ++k) out.values[k] = Q(g.position(static_cast<int>(k))) - u.values[k];
  if (u.has_boundary()) {
    out.boundary.resize(unk.size());
    for (std::size_t k = 0; k < unk.size(); ++k) {
      for (int d = 0; d < 4; ++d) {
        out.boundary[k][d] = unk[k].cut[d] ? Q(unk[k].cut_point[d]) - u.boundary[k][d]
                                          : std::numeric_limits<double>::quiet_NaN();
      }
    }
  }
  return out;
}

std::vector<double> discrete_laplacian(const DiscreteField& f) {
  if (!f.has_boundary()) throw DomainError("discrete_laplacian needs boundary values");
  const Grid& g = *f.grid;
  const auto& unk = g.unknowns();
  std::vector<double> out(unk.size());
  for (std::size_t k = 0; k < unk.size(); ++k) {
    const Stencil s = stencil_of(unk[k], g.h());
    double v = s.center * f.values[k];
    for (int d = 0; d < 4; ++d) {
      v += s.c[d] * (unk[k].cut[d] ? f.boundary[k][d]
                                   : f.values[g.index(unk[k].i + kDi[d], unk[k].j + kDj[d])]);
    }
    out[k] = v;
  }
  return out;
}

double max_nodal_error(const DiscreteField& f, const std::function<double(const Vec2&)>& exact) {
  double e = 0.0;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    e = std::max(e, std::abs(f.values[k] - exact(f.grid->position(static_cast<int>(k)))));
  }
  return e;
}

double observed_order(double e1, double e2, double h1, double h2) {
  if (!(e1 > 0.0) || !(e2 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log(e1 / e2) / std::log(h1 / h2);
}

}  // namespace qsym
