#pragma once

#include <cstddef>
#include <vector>

namespace qsym {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached per order; the returned reference stays valid for the process.
const GaussRule& gauss_legendre(int order);

// Maps the rule to [lo, hi]; node i at out_nodes[i] with weight out_weights[i].
void gauss_legendre_on(int order, double lo, double hi,
                       std::vector<double>& out_nodes,
                       std::vector<double>& out_weights);

// Radical inverse of `index` in `base` (Halton coordinate).
double halton(std::size_t index, int base);

}  // namespace qsym
