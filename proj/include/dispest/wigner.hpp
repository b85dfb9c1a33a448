#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dispest {

/// Largest Fock number with a built-in Wigner function.
inline constexpr int kMaxFockNumber = 6;

/// Largest polynomial degree a convolution result may carry.
inline constexpr int kMaxConvolvedDegree = 8;

/// A point in phase space. Convention: [x, p] = i, so the vacuum state has
/// variance 1/2 per quadrature and Wigner function (1/pi) exp(-(x^2 + p^2)).
struct QuadraturePoint {
    double x = 0.0;
    double p = 0.0;
};

/// Photon-number distribution: weights on Fock states |0>, |1>, |2>, ...
/// Used to describe both ideal and imperfect probe/ancilla states.
///
/// Invariants: weights nonnegative, photon numbers distinct, total weight 1
/// (within 1e-12). Zero-weight entries are dropped on construction.
class PhotonMixture {
  public:
    explicit PhotonMixture(std::vector<std::pair<int, double>> weights);

    /// Pure Fock state |n>.
    static PhotonMixture fock(int n);

    /// Entries sorted by photon number, all weights > 0.
    const std::vector<std::pair<int, double>>& weights() const { return weights_; }

    /// Weight on |n>; zero if absent.
    double weight(int n) const;

    int max_photon() const { return weights_.empty() ? 0 : weights_.back().first; }

  private:
    std::vector<std::pair<int, double>> weights_;
};

/// Radially symmetric phase-space function in exact closed form:
///
///     f(x, p) = exp(-lambda * s) * sum_k coeffs[k] * s^k,   s = x^2 + p^2.
///
/// Every object this library needs (Fock-state Wigner functions, their
/// mixtures, and convolutions of two of them) lives in this family, so all
/// phase-space algebra is free of discretization error.
class RadialPolyGaussian {
  public:
    RadialPolyGaussian(double lambda, std::vector<double> coeffs);

    double lambda() const { return lambda_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// Total integral over the plane: pi * sum_k c_k k! / lambda^(k+1).
    double integral() const;

    /// Value at squared radius s >= 0.
    double value_at(double s) const;

    double value(QuadraturePoint pt) const { return value_at(pt.x * pt.x + pt.p * pt.p); }

  private:
    double lambda_;
    std::vector<double> coeffs_;
};

/// Wigner function of the Fock state |n> as a RadialPolyGaussian with
/// lambda = 1:  W_n(x, p) = ((-1)^n / pi) L_n(2 s) exp(-s).
/// Throws CapabilityError for n outside [0, kMaxFockNumber].
RadialPolyGaussian fock_wigner(int n);

/// Convex combination of Fock Wigner functions with the mixture weights.
RadialPolyGaussian mixture_wigner(const PhotonMixture& mix);

/// Pure loss channel with loss fraction `loss` in [0, 1]: each n-photon
/// component becomes the binomial mixture over k = 0..n surviving photons,
/// p_k = C(n, k) (1 - loss)^k loss^(n-k).
PhotonMixture apply_loss(const PhotonMixture& mix, double loss);

/// Exact 2D convolution (f*g)(u) = integral f(w) g(u - w) d^2 w.
///
/// Computed through the 2D Fourier transform, which maps the family onto
/// itself: the transform of s^k exp(-lambda s) is
/// (pi k! / lambda^(k+1)) L_k(t / (4 lambda)) exp(-t / (4 lambda)) with
/// t the squared frequency radius. Transform both factors, multiply, and
/// transform back (the inverse is the forward map scaled by 1/(4 pi^2)).
///
/// The result has lambda' = lambda_a lambda_b / (lambda_a + lambda_b) and
/// total integral equal to the product of the input integrals. Throws
/// CapabilityError if the result degree exceeds kMaxConvolvedDegree.
RadialPolyGaussian convolve(const RadialPolyGaussian& a, const RadialPolyGaussian& b);

/// 2D Fourier transform of f, expressed in the same closed form as a
/// function of the squared frequency radius t = w_x^2 + w_p^2.
RadialPolyGaussian fourier_transform(const RadialPolyGaussian& f);

/// Value of f at `pt`.
double evaluate(const RadialPolyGaussian& f, QuadraturePoint pt);

/// f evaluated along a ray: pairs (radius, f(radius, 0)).
/// Radii must be nonnegative.
std::vector<std::pair<double, double>> radial_profile(const RadialPolyGaussian& f,
                                                      std::span<const double> radii);

}  // namespace dispest
