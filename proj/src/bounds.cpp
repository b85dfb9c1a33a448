#include "dispest/bounds.hpp"

#include <stdexcept>

#include "dispest/estimation.hpp"
#include "dispest/wigner.hpp"

namespace dispest {

ClassicalLimit classical_limit(double v, double r) {
    if (!(v > 0.0)) throw std::domain_error("classical_limit: v must be > 0");
    if (!(r > 0.0)) throw std::domain_error("classical_limit: r must be > 0");
    const LikelihoodKernel vacuum =
        build_likelihood(PhotonMixture::fock(0), PhotonMixture::fock(0));
    const ExpectedError e = expected_error_quadrature(PriorModel(v), vacuum, r);
    return ClassicalLimit{v, e.v_prime};
}

double classical_limit_closed_form(double v) {
    return 2.0 * v / (v + 2.0);
}

}  // namespace dispest
