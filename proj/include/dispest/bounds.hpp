#pragma once

namespace dispest {

/// The classical benchmark: the estimation error of the same dual-homodyne
/// scheme run with vacuum probe and ancilla. Every reported error is
/// normalized by this value.
struct ClassicalLimit {
    double v = 0.0;
    double v_prime_c = 0.0;
};

/// Computes the vacuum-probe error by the same quadrature used for all
/// configurations. For a vacuum pair the posterior is Gaussian with
/// outcome-independent variance, so the result equals 2v / (v + 2) and does
/// not depend on the selection radius r.
ClassicalLimit classical_limit(double v, double r);

/// The closed form 2v / (v + 2) of the vacuum-probe error, used as an
/// independent check of the quadrature route.
double classical_limit_closed_form(double v);

}  // namespace dispest
