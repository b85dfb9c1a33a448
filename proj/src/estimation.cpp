#include "dispest/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dispest/errors.hpp"
#include "dispest/quadrature.hpp"

namespace dispest {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Fixed product rule for posterior integrals: Gauss-Legendre in radius,
// uniform in angle. The angular rule integrates the trigonometric
// polynomial part exactly (its degree never exceeds kMaxConvolvedDegree + 2,
// far below kAngularNodes).
constexpr int kRadialNodes = 32;
constexpr int kAngularNodes = 32;

struct PolarRule {
    std::vector<double> r01;  // radial nodes mapped to [0, 1]
    std::vector<double> wr;
    std::vector<double> cos_t;
    std::vector<double> sin_t;
    double w_angle;
};

const PolarRule& polar_rule() {
    static const PolarRule rule = [] {
        PolarRule r;
        const GaussLegendre gl = gauss_legendre(kRadialNodes);
        r.r01.resize(kRadialNodes);
        r.wr.resize(kRadialNodes);
        for (int i = 0; i < kRadialNodes; ++i) {
            r.r01[i] = 0.5 * (gl.nodes[i] + 1.0);
            r.wr[i] = 0.5 * gl.weights[i];
        }
        r.cos_t.resize(kAngularNodes);
        r.sin_t.resize(kAngularNodes);
        for (int j = 0; j < kAngularNodes; ++j) {
            const double t = 2.0 * std::numbers::pi * j / kAngularNodes;
            r.cos_t[j] = std::cos(t);
            r.sin_t[j] = std::sin(t);
        }
        r.w_angle = 2.0 * std::numbers::pi / kAngularNodes;
        return r;
    }();
    return rule;
}

// The unnormalized posterior in centered coordinates u = d - m:
//
//   q(d) = prior(d) * p(y|d)
//        = (2 / (pi v)) exp(log_shift) exp(-alpha |u|^2) P(|c - u|^2)
//
// with z = sqrt(2) y, alpha = 1/v + lambda, m = (lambda/alpha) z,
// c = z - m, and P the kernel polynomial. The raw moments of
// exp(-alpha |u|^2) P(|c - u|^2) over the 8-sigma disk are everything
// posterior_mean, posterior_density and the outcome marginal need.
struct PosteriorGeometry {
    double alpha;
    double mx, my;    // Gaussian-factor mean
    double cx, cy;    // kernel center in u coordinates
    double log_shift; // -( |m|^2 / v + lambda |c|^2 )
};

PosteriorGeometry geometry(const PriorModel& prior, const RadialPolyGaussian& kernel,
                           const Outcome& y) {
    PosteriorGeometry g{};
    const double lambda = kernel.lambda();
    const double zx = kSqrt2 * y.y_x;
    const double zy = kSqrt2 * y.y_p;
    g.alpha = 1.0 / prior.v + lambda;
    g.mx = lambda * zx / g.alpha;
    g.my = lambda * zy / g.alpha;
    g.cx = zx - g.mx;
    g.cy = zy - g.my;
    g.log_shift = -((g.mx * g.mx + g.my * g.my) / prior.v +
                    lambda * (g.cx * g.cx + g.cy * g.cy));
    return g;
}

struct RawMoments {
    double s = 0.0;             // integral of the centered integrand
    double sx = 0.0, sy = 0.0;  // first moments in u
    double sxx = 0.0, syy = 0.0;
};

RawMoments raw_moments(const PosteriorGeometry& g, const RadialPolyGaussian& kernel) {
    const PolarRule& rule = polar_rule();
    const auto& coeffs = kernel.coeffs();
    const double radius = 8.0 / std::sqrt(2.0 * g.alpha);

    RawMoments m;
    for (int i = 0; i < kRadialNodes; ++i) {
        const double r = radius * rule.r01[i];
        const double base = std::exp(-g.alpha * r * r) * r * radius * rule.wr[i] * rule.w_angle;
        for (int j = 0; j < kAngularNodes; ++j) {
            const double ux = r * rule.cos_t[j];
            const double uy = r * rule.sin_t[j];
            const double dx = g.cx - ux;
            const double dy = g.cy - uy;
            const double s_arg = dx * dx + dy * dy;
            double poly = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) poly = poly * s_arg + *it;
            const double q = base * poly;
            m.s += q;
            m.sx += q * ux;
            m.sy += q * uy;
            m.sxx += q * ux * ux;
            m.syy += q * uy * uy;
        }
    }
    return m;
}

double log_evidence_from(const PriorModel& prior, const PosteriorGeometry& g,
                         const RawMoments& m) {
    // evidence = (2 / (pi v)) exp(log_shift) * integral
    return std::log(2.0 / (std::numbers::pi * prior.v)) + g.log_shift + std::log(m.s);
}

}  // namespace

PriorModel::PriorModel(double v_in) : v(v_in) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("PriorModel: variance must be positive");
}

LikelihoodKernel::LikelihoodKernel(RadialPolyGaussian kernel) : kernel_(std::move(kernel)) {
    if (std::abs(kernel_.integral() - 1.0) > 1e-9)
        throw std::invalid_argument("LikelihoodKernel: kernel mass differs from 1");
    for (int i = 0; i <= 2000; ++i) {
        const double s = 100.0 * i / 2000.0;
        if (kernel_.value_at(s) < -1e-12)
            throw std::invalid_argument("LikelihoodKernel: kernel is negative at s = " +
                                        std::to_string(s));
    }
}

double prior_density(const PriorModel& prior, const Displacement& d) {
    const double s = d.xi * d.xi + d.eta * d.eta;
    return std::exp(-s / prior.v) / (std::numbers::pi * prior.v);
}

LikelihoodKernel build_likelihood(const PhotonMixture& probe, const PhotonMixture& ancilla) {
    return LikelihoodKernel(convolve(mixture_wigner(probe), mixture_wigner(ancilla)));
}

double likelihood_density(const LikelihoodKernel& k, const Outcome& y, const Displacement& d) {
    const double ux = kSqrt2 * y.y_x - d.xi;
    const double up = kSqrt2 * y.y_p - d.eta;
    return std::max(0.0, 2.0 * k.kernel().value_at(ux * ux + up * up));
}

double posterior_density(const PriorModel& prior, const LikelihoodKernel& k, const Outcome& y,
                         const Displacement& d) {
    const PosteriorGeometry g = geometry(prior, k.kernel(), y);
    const RawMoments m = raw_moments(g, k.kernel());
    if (!(m.s > 0.0) || !std::isfinite(m.s) || !std::isfinite(g.log_shift))
        throw DegeneratePosteriorError("posterior_density: evidence vanished");
    const double log_z = log_evidence_from(prior, g, m);

    // log q(d) computed analytically so large |d| cannot underflow first.
    const double lik = likelihood_density(k, y, d);
    if (lik == 0.0) return 0.0;
    const double log_q = std::log(lik) - std::log(std::numbers::pi * prior.v) -
                         (d.xi * d.xi + d.eta * d.eta) / prior.v;
    return std::exp(log_q - log_z);
}

PosteriorSummary posterior_mean(const PriorModel& prior, const LikelihoodKernel& k,
                                const Outcome& y) {
    const PosteriorGeometry g = geometry(prior, k.kernel(), y);
    const RawMoments m = raw_moments(g, k.kernel());
    if (!(m.s > 0.0) || !std::isfinite(m.s) || !std::isfinite(g.log_shift))
        throw DegeneratePosteriorError("posterior_mean: evidence vanished");

    PosteriorSummary out;
    const double ex = m.sx / m.s;
    const double ey = m.sy / m.s;
    out.mean_xi = g.mx + ex;
    out.mean_eta = g.my + ey;
    out.var_xi = std::max(0.0, m.sxx / m.s - ex * ex);
    out.var_eta = std::max(0.0, m.syy / m.s - ey * ey);
    out.log_evidence = log_evidence_from(prior, g, m);
    return out;
}

bool post_select(const Outcome& y, double r) {
    if (!(r >= 0.0)) throw std::domain_error("post_select: radius must be nonnegative");
    return y.y_x * y.y_x + y.y_p * y.y_p < r * r;
}

ErrorStats estimation_error(std::span<const EventRecord> events) {
    // Compensated summation keeps the reduction order-independent in
    // practice and accurate for millions of events.
    double sum = 0.0, comp = 0.0;
    std::uint64_t n = 0;
    for (const EventRecord& e : events) {
        if (!e.selected) continue;
        const double t = e.sq_err - comp;
        const double next = sum + t;
        comp = (next - sum) - t;
        sum = next;
        ++n;
    }
    if (n == 0) throw NoEventsError("estimation_error: no selected events");

    ErrorStats stats;
    stats.n_selected = n;
    stats.v_prime = sum / static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0, sc = 0.0;
        for (const EventRecord& e : events) {
            if (!e.selected) continue;
            const double d = e.sq_err - stats.v_prime;
            const double t = d * d - sc;
            const double next = ss + t;
            sc = (next - ss) - t;
            ss = next;
        }
        stats.std_error = std::sqrt(ss / (static_cast<double>(n) - 1.0) /
                                    static_cast<double>(n));
    }
    return stats;
}

ExpectedError expected_error_quadrature(const PriorModel& prior, const LikelihoodKernel& k,
                                        double r) {
    if (!(r > 0.0)) throw std::domain_error("expected_error_quadrature: radius must be > 0");

    // The outcome marginal and the posterior variance depend on y only
    // through |y| (radial kernel, isotropic prior), so the disk integral
    // collapses to one radial Gauss-Legendre pass.
    const GaussLegendre gl = gauss_legendre(64);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double rho = 0.5 * r * (gl.nodes[i] + 1.0);
        const double w = 0.5 * r * gl.weights[i] * 2.0 * std::numbers::pi * rho;
        const Outcome y{rho, 0.0};
        const PosteriorGeometry g = geometry(prior, k.kernel(), y);
        const RawMoments m = raw_moments(g, k.kernel());
        if (!(m.s > 0.0) || !std::isfinite(m.s)) continue;
        const double evidence = std::exp(log_evidence_from(prior, g, m));
        const double ex = m.sx / m.s;
        const double ey = m.sy / m.s;
        const double tot_var = std::max(0.0, m.sxx / m.s - ex * ex) +
                               std::max(0.0, m.syy / m.s - ey * ey);
        num += w * evidence * tot_var;
        den += w * evidence;
    }
    if (!(den > 1e-12))
        throw DegenerateSelectionError("expected_error_quadrature: selection probability " +
                                       std::to_string(den));
    return ExpectedError{num / den, den};
}

}  // namespace dispest
