#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qsym {

// Points and vectors in R^N, N <= 3, without heap allocation.
using VecN = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using MatN = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

struct AnalyticField {
  std::string label;
  int dim = 2;
  std::function<double(const VecN&)> value;
  std::function<VecN(const VecN&)> gradient;
  std::optional<std::function<MatN(const VecN&)>> hessian;
};

// Largest relative discrepancy between `gradient` and central differences
// of `value` over `samples` pseudo-random points of the box [-extent, extent]^N
// shifted by `center`.
double gradient_self_test(const AnalyticField& field, const VecN& center,
                          double extent, int samples = 100,
                          std::uint64_t seed = 20240611);

inline constexpr int kFieldCatalogVersion = 1;

// Fixed catalog of closed-form test fields in R^N (N = 2, 3), built around
// an anchor point and a unit axis: every gradient is either nonvanishing on
// the half-space {<y - anchor, axis> >= 0} or vanishes only at the anchor,
// so |grad f| is smooth in polar coordinates centred at the anchor.
std::vector<AnalyticField> field_catalog(int N, const VecN& anchor, const VecN& axis);

// Planar fields used for the domain oscillation sweep (anchored at origin).
std::vector<AnalyticField> planar_field_catalog();

// f(y) = <w, y - anchor>; odd under reflection across any line through
// `anchor` along a direction orthogonal to w.
AnalyticField linear_field(const VecN& w, const VecN& anchor, std::string label);

}  // namespace qsym
