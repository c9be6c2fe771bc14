#include "qsym/special.hpp"

#include <cmath>
#include <string>

#include "qsym/errors.hpp"

namespace qsym {
namespace {

void require_positive(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("euler_beta: arguments must be positive and finite, got (" +
                      std::to_string(x) + ", " + std::to_string(y) + ")");
  }
}

}  // namespace

double log_euler_beta(double x, double y) {
  require_positive(x, y);
  return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

double euler_beta(double x, double y) {
  require_positive(x, y);
  // tgamma stays accurate and finite well below its overflow point at ~171;
  // beyond that only the log form is usable.
  if (x + y < 150.0) {
    return std::tgamma(x) * std::tgamma(y) / std::tgamma(x + y);
  }
  return std::exp(log_euler_beta(x, y));
}

}  // namespace qsym
