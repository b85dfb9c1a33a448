#include "dispest/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "dispest/errors.hpp"

namespace dispest {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void validate(const RunConfig& cfg) {
    if (!(cfg.v > 0.0)) throw std::invalid_argument("RunConfig: v must be > 0");
    if (!(cfg.r >= 0.0)) throw std::invalid_argument("RunConfig: r must be >= 0");
    if (cfg.n_events < 1) throw std::invalid_argument("RunConfig: n_events must be >= 1");
}

void simulate_event(EventRecord& rec, const PriorModel& prior, const LikelihoodKernel& kernel,
                    double r, std::uint64_t seed, std::uint64_t index) {
    RngStream rng(seed, index);
    const Displacement d = sample_displacement(prior, rng);
    const Outcome y = sample_outcome(kernel, d, rng);
    rec.xi = d.xi;
    rec.eta = d.eta;
    rec.y_x = y.y_x;
    rec.y_p = y.y_p;
    rec.selected = post_select(y, r);
    if (!rec.selected) return;
    try {
        const PosteriorSummary ps = posterior_mean(prior, kernel, y);
        rec.est_xi = ps.mean_xi;
        rec.est_eta = ps.mean_eta;
        const double dx = d.xi - ps.mean_xi;
        const double dy = d.eta - ps.mean_eta;
        rec.sq_err = dx * dx + dy * dy;
    } catch (const DegeneratePosteriorError&) {
        rec.selected = false;  // rejected event, kept in the record unselected
    }
}

}  // namespace

RadialEnvelope build_envelope(const RadialPolyGaussian& kernel) {
    const double lambda = kernel.lambda();
    const double rate = 0.5 * lambda;
    const double gap = lambda - rate;
    double bound = 0.0;
    for (int k = 0; k < static_cast<int>(kernel.coeffs().size()); ++k) {
        // max over s of s^k exp(-gap s) is (k / (gap e))^k
        const double mono = (k == 0) ? 1.0 : std::pow(k / (gap * std::numbers::e), k);
        bound += std::abs(kernel.coeffs()[k]) * mono;
    }
    bound *= 1.1;
    if (!(bound > 0.0) || !std::isfinite(bound))
        throw CapabilityError("build_envelope: no finite dominating bound");
    return RadialEnvelope{rate, bound};
}

Displacement sample_displacement(const PriorModel& prior, RngStream& rng) {
    const auto [g1, g2] = rng.next_gaussian_pair();
    const double sigma = std::sqrt(0.5 * prior.v);
    return Displacement{sigma * g1, sigma * g2};
}

Outcome sample_outcome(const LikelihoodKernel& k, const Displacement& d, RngStream& rng) {
    const RadialPolyGaussian& kernel = k.kernel();
    const RadialEnvelope env = build_envelope(kernel);
    const double gap = kernel.lambda() - env.rate;
    const auto& coeffs = kernel.coeffs();

    // s = |u|^2 with u the kernel displacement; p(s) ds = pi K(s) ds.
    double s = 0.0;
    for (;;) {
        s = -std::log(rng.next_unit()) / env.rate;
        double poly = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) poly = poly * s + *it;
        const double accept = poly * std::exp(-gap * s) / env.scale;
        if (rng.next_unit() <= accept) break;
    }
    const double theta = 2.0 * std::numbers::pi * rng.next_unit();
    const double rad = std::sqrt(s);
    const double ux = rad * std::cos(theta);
    const double uy = rad * std::sin(theta);
    return Outcome{(ux + d.xi) / kSqrt2, (uy + d.eta) / kSqrt2};
}

std::vector<EventRecord> run_experiment(const RunConfig& cfg, unsigned n_threads) {
    validate(cfg);
    const PriorModel prior(cfg.v);
    const LikelihoodKernel kernel = build_likelihood(cfg.probe, cfg.ancilla);

    std::vector<EventRecord> records(cfg.n_events);
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<std::uint64_t>(n_threads, cfg.n_events);

    auto worker = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i)
            simulate_event(records[i], prior, kernel, cfg.r, cfg.seed, i);
    };

    if (n_threads == 1) {
        worker(0, cfg.n_events);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        const std::uint64_t chunk = (cfg.n_events + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t) {
            const std::uint64_t begin = t * chunk;
            const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, cfg.n_events);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return records;
}

std::vector<EventRecord> retarget_variance(std::span<const EventRecord> events, double v_source,
                                           double v_target, const LikelihoodKernel& k,
                                           RngStream& rng) {
    if (!(v_source > 0.0) || !(v_target > 0.0))
        throw std::invalid_argument("retarget_variance: variances must be > 0");
    if (v_target > v_source)
        throw RetargetDirectionError("retarget_variance: only downward retargeting "
                                     "(v_target <= v_source) is supported");

    const double slope = 1.0 / v_target - 1.0 / v_source;
    const PriorModel target_prior(v_target);

    std::vector<EventRecord> out;
    out.reserve(events.size());
    for (const EventRecord& e : events) {
        const double s = e.xi * e.xi + e.eta * e.eta;
        if (rng.next_unit() > std::exp(-slope * s)) continue;
        EventRecord kept = e;
        if (kept.selected) {
            try {
                const PosteriorSummary ps =
                    posterior_mean(target_prior, k, Outcome{kept.y_x, kept.y_p});
                kept.est_xi = ps.mean_xi;
                kept.est_eta = ps.mean_eta;
                const double dx = kept.xi - ps.mean_xi;
                const double dy = kept.eta - ps.mean_eta;
                kept.sq_err = dx * dx + dy * dy;
            } catch (const DegeneratePosteriorError&) {
                kept.selected = false;
            }
        }
        out.push_back(kept);
    }
    return out;
}

}  // namespace dispest
