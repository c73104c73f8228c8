#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fracstab/linalg.hpp"

namespace fracstab {

/// Catalog nonlinearity f(t, x) with its certified Lipschitz constant L and
/// zero-state offset m = ||f(t, 0)|| in the uniform norm. Use the factories;
/// they derive L and m analytically for each kind.
struct NonlinDescriptor {
    enum class Kind { Zero, Tanh, SinPlusOffset, Linear };

    Kind kind = Kind::Zero;
    std::vector<double> scale;   ///< per-component, Tanh / SinPlusOffset
    std::vector<double> offset;  ///< SinPlusOffset
    Mat matrix;                  ///< Linear
    double lipschitz_L = 0.0;
    double offset_m = 0.0;

    static NonlinDescriptor zero();
    static NonlinDescriptor tanh_scaled(std::vector<double> scale);
    static NonlinDescriptor sin_plus_offset(std::vector<double> scale,
                                            std::vector<double> offset);
    static NonlinDescriptor linear(Mat m);

    std::vector<double> eval(double t, std::span<const double> x) const;
    std::size_t dim() const;  ///< state dimension implied by the parameters
                              ///< (0 for Zero: any dimension)
};

/// Catalog input signal u(t) with its exact uniform-norm supremum.
struct InputSignal {
    enum class Kind { Zero, ConstantVec, Sinusoid };

    Kind kind = Kind::Zero;
    std::vector<double> v;       ///< constant value or sinusoid amplitude
    double omega = 0.0;          ///< sinusoid angular frequency

    static InputSignal zero();
    static InputSignal constant(std::vector<double> v);
    static InputSignal sinusoid(std::vector<double> amplitude, double omega);

    std::vector<double> eval(double t, std::size_t m_in) const;
    double sup_norm() const;
};

/// Catalog history function psi(t) on [-tau, 0].
struct HistoryFn {
    enum class Kind { ConstantVec, Polynomial, Sinusoid };

    Kind kind = Kind::ConstantVec;
    std::vector<double> v;                         ///< constant / amplitude
    std::vector<std::vector<double>> poly_coeffs;  ///< c0, c1, ... (vectors)
    double omega = 0.0;
    double phase = 0.0;

    static HistoryFn constant(std::vector<double> v);
    static HistoryFn polynomial(std::vector<std::vector<double>> coeffs);
    static HistoryFn sinusoid(std::vector<double> amplitude, double omega,
                              double phase);

    std::vector<double> eval(double t) const;
    /// Supremum of the per-time uniform norm over [-tau, 0]; exact for
    /// constants and sinusoids, a certified upper bound for polynomials.
    double sup_norm(double tau) const;
    std::size_t dim() const;
};

/// The full problem datum of the semilinear fractional multi-delay system
///   D^q x(t) = A0 x(t) + sum_i Ai x(t - tau_i) + B0 u(t) + f(t, x),
///   x(t) = psi(t) on [-tau, 0],
/// Caputo derivative of order q in (0, 1].
struct SystemSpec {
    double q = 1.0;
    std::size_t n = 0;            ///< state dimension
    std::size_t p = 0;            ///< delay count
    Mat a0;                       ///< n x n
    std::vector<Mat> a_delays;    ///< p matrices, n x n
    std::vector<double> taus;     ///< p positive delays
    Mat b0;                       ///< n x m_in
    NonlinDescriptor nonlinearity;
    std::string name;
    std::string description;

    std::size_t input_dim() const { return b0.cols; }
    double tau_max() const;

    /// Checks every structural invariant; throws ValidationError naming the
    /// violated field.
    void validate() const;
};

}  // namespace fracstab
