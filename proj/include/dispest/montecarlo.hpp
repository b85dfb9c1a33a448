#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dispest/estimation.hpp"
#include "dispest/event.hpp"
#include "dispest/rng.hpp"
#include "dispest/wigner.hpp"

namespace dispest {

/// Full description of one simulated run.
struct RunConfig {
    double v = 0.0;
    double r = 0.0;
    PhotonMixture probe = PhotonMixture::fock(1);
    PhotonMixture ancilla = PhotonMixture::fock(1);
    std::uint64_t n_events = 0;
    std::uint64_t seed = 0;
};

/// Exponential dominating envelope for the radial outcome density:
/// scale * exp(-rate * s) >= poly(s) * exp(-lambda * s) for all s >= 0.
struct RadialEnvelope {
    double rate = 0.0;
    double scale = 0.0;
};

/// Envelope with rate lambda/2; the scale bounds the polynomial factor
/// through per-monomial maxima of |c_k| s^k exp(-lambda s / 2), padded by a
/// 1.1 safety factor. Throws CapabilityError if the bound is not finite.
RadialEnvelope build_envelope(const RadialPolyGaussian& kernel);

/// Draws (xi, eta) from the isotropic Gaussian prior (variance v/2 per axis).
Displacement sample_displacement(const PriorModel& prior, RngStream& rng);

/// Draws a dual-homodyne outcome from p(y | d) by exact rejection sampling:
/// the squared kernel radius is proposed from the exponential envelope and
/// accepted against the polynomial factor, so the sampler carries no
/// discretization error.
Outcome sample_outcome(const LikelihoodKernel& k, const Displacement& d, RngStream& rng);

/// Replays the experiment: per event, draw a displacement from the prior,
/// draw an outcome, apply post-selection, and for selected events compute
/// the posterior-mean estimate and its squared error. Event i uses the
/// dedicated substream (seed, i), so the result is bit-for-bit reproducible
/// for any thread count (n_threads = 0 picks the hardware default).
/// Events whose posterior degenerates are recorded as unselected.
std::vector<EventRecord> run_experiment(const RunConfig& cfg, unsigned n_threads = 0);

/// Rejection-resamples events so the surviving displacements follow the
/// prior with variance v_target (accept with probability
/// p_target / (M p_source), M = v_source / v_target), then recomputes the
/// estimates of selected survivors under the v_target prior. Only downward
/// retargeting (v_target <= v_source) keeps the density ratio bounded;
/// anything else throws RetargetDirectionError.
std::vector<EventRecord> retarget_variance(std::span<const EventRecord> events, double v_source,
                                           double v_target, const LikelihoodKernel& k,
                                           RngStream& rng);

}  // namespace dispest
