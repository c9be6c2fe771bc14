#pragma once

namespace qsym {

// Euler's beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y).
// Throws DomainError unless x, y > 0. Relative accuracy ~1e-14.
double euler_beta(double x, double y);

// log B(x, y), safe for large arguments.
double log_euler_beta(double x, double y);

}  // namespace qsym
