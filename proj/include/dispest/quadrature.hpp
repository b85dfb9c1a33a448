#pragma once

#include <vector>

namespace dispest {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes and weights of the n-point Gauss-Legendre rule (Newton iteration
/// on the Legendre recurrence).
GaussLegendre gauss_legendre(int n);

}  // namespace dispest
