#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace qsym {

// Lebesgue exponents are plain doubles; the value +inf stands for the
// L^inf endpoint and every formula below implements its limit there.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_infinite(double p) { return std::isinf(p) && p > 0; }

// Hoelder conjugate p' = p/(p-1), with 1' = inf and inf' = 1.
inline double conjugate(double p) {
  if (is_infinite(p)) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

// 1/p with 1/inf = 0.
inline double reciprocal(double p) { return is_infinite(p) ? 0.0 : 1.0 / p; }

std::string format_exponent(double p);

struct ExponentPair {
  double p = 1.0;
  double q = kInf;
  int N = 2;

  // 1 <= p <= N < q <= inf
  bool admissible_for_interpolation() const {
    return N >= 2 && p >= 1.0 && p <= N && q > N;
  }
  bool admissible_for_morrey() const { return N >= 2 && p > N; }
};

}  // namespace qsym
