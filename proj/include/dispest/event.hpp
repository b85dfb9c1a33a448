#pragma once

#include <limits>

namespace dispest {

/// One shot of the experiment: the true displacement drawn from the prior,
/// the dual-homodyne outcome, the post-selection flag, and (for selected
/// events) the posterior-mean estimates and their squared error.
/// Estimate fields are NaN while no estimate has been computed.
struct EventRecord {
    double xi = 0.0;
    double eta = 0.0;
    double y_x = 0.0;
    double y_p = 0.0;
    bool selected = false;
    double est_xi = std::numeric_limits<double>::quiet_NaN();
    double est_eta = std::numeric_limits<double>::quiet_NaN();
    double sq_err = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace dispest
