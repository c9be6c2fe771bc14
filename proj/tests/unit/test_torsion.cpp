#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "../oracles.hpp"
#include "qsym/analysis.hpp"
#include "qsym/errors.hpp"
#include "qsym/torsion.hpp"

using namespace qsym;

namespace {

double manufactured(const Vec2& x) { return std::sin(2 * x.x()) * std::cos(x.y()) + x.x() * x.x() * x.x() / 3; }
double manufactured_lap(const Vec2& x) { return -5 * std::sin(2 * x.x()) * std::cos(x.y()) + 2 * x.x(); }

}  // namespace

TEST_CASE("grid construction") {
  const auto d = StarDomain2D::ellipse(1.2, 1.0 / 1.2);
  const Grid g(d, 1.0 / 16);
  CHECK(g.index(0, 0) >= 0);
  CHECK(g.index(g.half_width(), 0) == -1);
  CHECK(static_cast<double>(g.size()) == doctest::Approx(area(d) * 256).epsilon(0.05));
  for (const auto& u : g.unknowns()) {
    CHECK(d.contains(g.position(u.i, u.j)));
    for (int k = 0; k < 4; ++k) {
      CHECK(u.frac[k] > 0.0);
      CHECK(u.frac[k] <= 1.0);
      if (u.cut[k]) CHECK(std::abs(d.level(u.cut_point[k])) <= 1e-11);
    }
  }
  double cover = 0;
  for (const auto& c : g.cells()) cover += c.area;
  CHECK(cover == doctest::Approx(area(d)).epsilon(1e-5));
  CHECK(g.excluded_fraction() <= 1e-5);
  CHECK_THROWS_AS(Grid(d, 0.5), GridTooCoarse);
}

TEST_CASE("nodal integration and normalized norms") {
  const auto d = StarDomain2D::circle(1.0);
  auto g = std::make_shared<const Grid>(d, 1.0 / 64);
  std::vector<double> one(g->size(), 1.0), r2(g->size());
  for (std::size_t k = 0; k < g->size(); ++k) r2[k] = g->position(static_cast<int>(k)).squaredNorm();
  CHECK(integrate_nodal(*g, one) == doctest::Approx(oracle::kPi).epsilon(1e-5));
  // int |x|^2 over the unit disk = pi/2
  CHECK(integrate_nodal(*g, r2) == doctest::Approx(oracle::kPi / 2).epsilon(1e-3));
  std::vector<double> c(g->size(), 0.7);
  CHECK(lp_norm_domain(*g, c, 3.0) == doctest::Approx(0.7).epsilon(1e-5));
  CHECK(lp_norm_domain(*g, c, kInf) == 0.7);
  // distance to the unit circle is 1 - |x|; mean over the disk = 1/3
  std::vector<double> id(g->size(), 1.0);
  CHECK(lp_norm_domain(*g, id, 1.0, Weight::DeltaGamma, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("Shortley-Weller reproduces the exact ellipse torsion") {
  const double a = 1.2, b = 1.0 / 1.2;
  const oracle::EllipseTorsion ex{a, b};
  for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    const auto [u, rep] = solve_torsion(StarDomain2D::ellipse(a, b), h);
    CHECK(rep.residual <= 1e-10);
    CHECK(max_nodal_error(u, [&](const Vec2& x) { return ex.u(x.x(), x.y()); }) <= 1e-9);
    const Vec2 z = locate_min(u);
    CHECK(z.norm() <= 1e-8);
  }
  const auto f = exact_ellipse_torsion(a, b);
  VecN p(2);
  p << 0.3, -0.2;
  CHECK(f.value(p) == doctest::Approx(ex.u(0.3, -0.2)));
}

TEST_CASE("manufactured solution converges at second order") {
  const auto d = StarDomain2D::ellipse(1.2, 1.0 / 1.2);
  double prev = 0, ph = 0;
  for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    auto g = std::make_shared<const Grid>(d, h);
    const auto [w, rep] = solve_poisson(g, manufactured_lap, manufactured);
    const double e = max_nodal_error(w, manufactured);
    if (prev > 0) CHECK(observed_order(prev, e, ph, h) >= 1.8);
    prev = e;
    ph = h;
  }
  CHECK(std::isnan(observed_order(0.0, 1.0, 1.0, 0.5)));
}

TEST_CASE("h field is discretely harmonic and its trace is exact on the ellipse") {
  const double a = 1.2, b = 1.0 / 1.2;
  const auto [u, rep] = solve_torsion(StarDomain2D::ellipse(a, b), 1.0 / 32);
  const auto hf = h_field(u, Vec2::Zero());
  double lap = 0;
  for (double v : discrete_laplacian(hf)) lap = std::max(lap, std::abs(v));
  CHECK(lap <= 1e-8);
  const auto tr = normal_derivative(u, StarDomain2D::ellipse(a, b), 512);
  const double c = oracle::EllipseTorsion{a, b}.c();
  for (std::size_t s = 0; s < tr.values.size(); ++s) {
    if (!tr.valid[s]) continue;
    const Vec2 x = tr.samples[s].pos;
    const Vec2 grad(2 * c * x.x() / (a * a), 2 * c * x.y() / (b * b));
    CHECK(std::abs(tr.values[s] - grad.dot(tr.samples[s].normal)) <= 1e-9);
  }
  CHECK(tr.excluded_fraction == 0.0);
}

TEST_CASE("derived fields of a quadratic are exact") {
  const auto d = StarDomain2D::cosine(3, 0.15, true);
  auto g = std::make_shared<const Grid>(d, 1.0 / 32);
  const auto f = sample_field(g, [](const Vec2& x) { return x.x() * x.x() - 3 * x.x() * x.y() + 0.5 * x.y(); });
  const auto gr = gradient(f);
  const auto he = hessian(f);
  for (std::size_t k = 0; k < g->size(); ++k) {
    const Vec2 x = g->position(static_cast<int>(k));
    CHECK(gr.x.values[k] == doctest::Approx(2 * x.x() - 3 * x.y()).epsilon(1e-8));
    CHECK(gr.y.values[k] == doctest::Approx(-3 * x.x() + 0.5).epsilon(1e-8));
    CHECK(he.xx.values[k] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(he.xy.values[k] == doctest::Approx(-3.0).epsilon(1e-6));
    CHECK(std::abs(he.yy.values[k]) <= 1e-6);
  }
}

TEST_CASE("field dump format") {
  const auto [u, rep] = solve_torsion(StarDomain2D::circle(1.0), 1.0 / 8);
  const auto path = (std::filesystem::temp_directory_path() / "qsym_dump_test.csv").string();
  dump_field_csv(u, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,y,value");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == u.values.size());
  std::filesystem::remove(path);
}
