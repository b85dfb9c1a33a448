#include "dispest/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dispest/errors.hpp"

namespace dispest {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

// Drop trailing coefficients that are zero relative to the largest one.
void trim(std::vector<double>& c) {
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    const double tol = scale * 1e-14;
    while (c.size() > 1 && std::abs(c.back()) <= tol) c.pop_back();
}

}  // namespace

PhotonMixture::PhotonMixture(std::vector<std::pair<int, double>> weights) {
    double total = 0.0;
    for (const auto& [n, w] : weights) {
        if (n < 0) throw std::invalid_argument("PhotonMixture: negative photon number");
        if (!(w >= 0.0)) throw std::invalid_argument("PhotonMixture: negative weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("PhotonMixture: weights must sum to 1");
    std::sort(weights.begin(), weights.end());
    for (std::size_t i = 1; i < weights.size(); ++i)
        if (weights[i].first == weights[i - 1].first)
            throw std::invalid_argument("PhotonMixture: duplicate photon number");
    std::erase_if(weights, [](const auto& e) { return e.second == 0.0; });
    if (weights.empty()) throw std::invalid_argument("PhotonMixture: empty mixture");
    weights_ = std::move(weights);
}

PhotonMixture PhotonMixture::fock(int n) {
    return PhotonMixture({{n, 1.0}});
}

double PhotonMixture::weight(int n) const {
    for (const auto& [m, w] : weights_)
        if (m == n) return w;
    return 0.0;
}

RadialPolyGaussian::RadialPolyGaussian(double lambda, std::vector<double> coeffs)
    : lambda_(lambda), coeffs_(std::move(coeffs)) {
    if (!(lambda_ > 0.0) || !std::isfinite(lambda_))
        throw std::invalid_argument("RadialPolyGaussian: lambda must be positive");
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    for (double c : coeffs_)
        if (!std::isfinite(c))
            throw std::invalid_argument("RadialPolyGaussian: non-finite coefficient");
}

double RadialPolyGaussian::integral() const {
    double sum = 0.0;
    for (int k = 0; k < static_cast<int>(coeffs_.size()); ++k)
        sum += coeffs_[k] * factorial(k) / std::pow(lambda_, k + 1);
    return std::numbers::pi * sum;
}

double RadialPolyGaussian::value_at(double s) const {
    // Horner first, then the exponential: the polynomial magnitude stays
    // below ~|c|_max * s^deg, far from overflow for any physical s.
    double poly = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) poly = poly * s + *it;
    return poly * std::exp(-lambda_ * s);
}

RadialPolyGaussian fock_wigner(int n) {
    if (n < 0 || n > kMaxFockNumber)
        throw CapabilityError("fock_wigner: photon number " + std::to_string(n) +
                              " outside supported range [0, " +
                              std::to_string(kMaxFockNumber) + "]");
    // ((-1)^n / pi) L_n(2s) e^{-s}; L_n(y) = sum_k C(n,k) (-1)^k y^k / k!
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    std::vector<double> c(n + 1);
    for (int k = 0; k <= n; ++k)
        c[k] = sign / std::numbers::pi * binomial(n, k) * std::pow(-2.0, k) / factorial(k);
    return RadialPolyGaussian(1.0, std::move(c));
}

RadialPolyGaussian mixture_wigner(const PhotonMixture& mix) {
    std::vector<double> c(mix.max_photon() + 1, 0.0);
    for (const auto& [n, w] : mix.weights()) {
        const RadialPolyGaussian wn = fock_wigner(n);
        for (std::size_t k = 0; k < wn.coeffs().size(); ++k) c[k] += w * wn.coeffs()[k];
    }
    trim(c);
    return RadialPolyGaussian(1.0, std::move(c));
}

PhotonMixture apply_loss(const PhotonMixture& mix, double loss) {
    if (!(loss >= 0.0 && loss <= 1.0))
        throw std::domain_error("apply_loss: loss must lie in [0, 1]");
    const double keep = 1.0 - loss;
    std::vector<double> acc(mix.max_photon() + 1, 0.0);
    for (const auto& [n, w] : mix.weights())
        for (int k = 0; k <= n; ++k)
            acc[k] += w * binomial(n, k) * std::pow(keep, k) * std::pow(loss, n - k);
    std::vector<std::pair<int, double>> out;
    double total = 0.0;
    for (int k = 0; k < static_cast<int>(acc.size()); ++k) {
        if (acc[k] > 0.0) out.emplace_back(k, acc[k]);
        total += acc[k];
    }
    // Binomial weights sum to 1 exactly up to rounding; renormalize the dust.
    for (auto& [k, w] : out) w /= total;
    return PhotonMixture(std::move(out));
}

RadialPolyGaussian fourier_transform(const RadialPolyGaussian& f) {
    const double lambda = f.lambda();
    const double cap = 1.0 / (4.0 * lambda);
    std::vector<double> out(f.coeffs().size(), 0.0);
    for (int k = 0; k < static_cast<int>(f.coeffs().size()); ++k) {
        const double pref =
            f.coeffs()[k] * std::numbers::pi * factorial(k) / std::pow(lambda, k + 1);
        // L_k(cap * t) expanded in powers of t
        for (int m = 0; m <= k; ++m)
            out[m] += pref * binomial(k, m) * std::pow(-cap, m) / factorial(m);
    }
    return RadialPolyGaussian(cap, std::move(out));
}

RadialPolyGaussian convolve(const RadialPolyGaussian& a, const RadialPolyGaussian& b) {
    const RadialPolyGaussian fa = fourier_transform(a);
    const RadialPolyGaussian fb = fourier_transform(b);

    std::vector<double> prod(fa.coeffs().size() + fb.coeffs().size() - 1, 0.0);
    for (std::size_t i = 0; i < fa.coeffs().size(); ++i)
        for (std::size_t j = 0; j < fb.coeffs().size(); ++j)
            prod[i + j] += fa.coeffs()[i] * fb.coeffs()[j];

    RadialPolyGaussian back =
        fourier_transform(RadialPolyGaussian(fa.lambda() + fb.lambda(), std::move(prod)));

    constexpr double inv_4pi2 = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
    std::vector<double> c(back.coeffs());
    for (double& v : c) v *= inv_4pi2;
    trim(c);
    if (static_cast<int>(c.size()) - 1 > kMaxConvolvedDegree)
        throw CapabilityError("convolve: result degree " + std::to_string(c.size() - 1) +
                              " exceeds cap " + std::to_string(kMaxConvolvedDegree));
    return RadialPolyGaussian(back.lambda(), std::move(c));
}

double evaluate(const RadialPolyGaussian& f, QuadraturePoint pt) {
    return f.value(pt);
}

std::vector<std::pair<double, double>> radial_profile(const RadialPolyGaussian& f,
                                                      std::span<const double> radii) {
    std::vector<std::pair<double, double>> out;
    out.reserve(radii.size());
    for (double r : radii) {
        if (r < 0.0) throw std::domain_error("radial_profile: negative radius");
        out.emplace_back(r, f.value_at(r * r));
    }
    return out;
}

}  // namespace dispest
