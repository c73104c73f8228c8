#include "fracstab/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracstab/errors.hpp"

namespace fracstab {

namespace {

double vec_max_abs(const std::vector<double>& v) {
    double best = 0.0;
    for (double x : v) {
        best = std::max(best, std::fabs(x));
    }
    return best;
}

}  // namespace

// --- NonlinDescriptor ---

NonlinDescriptor NonlinDescriptor::zero() {
    return {};
}

NonlinDescriptor NonlinDescriptor::tanh_scaled(std::vector<double> scale) {
    NonlinDescriptor d;
    d.kind = Kind::Tanh;
    d.lipschitz_L = vec_max_abs(scale);  // |d/dx tanh| <= 1
    d.offset_m = 0.0;                    // tanh(0) = 0
    d.scale = std::move(scale);
    return d;
}

NonlinDescriptor NonlinDescriptor::sin_plus_offset(std::vector<double> scale,
                                                   std::vector<double> offset) {
    if (scale.size() != offset.size()) {
        throw InvalidArgument("sin_plus_offset: scale/offset size mismatch");
    }
    NonlinDescriptor d;
    d.kind = Kind::SinPlusOffset;
    d.lipschitz_L = vec_max_abs(scale);
    d.offset_m = vec_max_abs(offset);  // f(t, 0) = offset
    d.scale = std::move(scale);
    d.offset = std::move(offset);
    return d;
}

NonlinDescriptor NonlinDescriptor::linear(Mat m) {
    NonlinDescriptor d;
    d.kind = Kind::Linear;
    d.lipschitz_L = m.empty() ? 0.0 : max_row_sum(m);  // induced max norm
    d.offset_m = 0.0;
    d.matrix = std::move(m);
    return d;
}

std::vector<double> NonlinDescriptor::eval(double /*t*/,
                                           std::span<const double> x) const {
    switch (kind) {
        case Kind::Zero:
            return std::vector<double>(x.size(), 0.0);
        case Kind::Tanh: {
            std::vector<double> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                y[i] = scale[i] * std::tanh(x[i]);
            }
            return y;
        }
        case Kind::SinPlusOffset: {
            std::vector<double> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                y[i] = scale[i] * std::sin(x[i]) + offset[i];
            }
            return y;
        }
        case Kind::Linear:
            return mat_vec(matrix, x);
    }
    return {};
}

std::size_t NonlinDescriptor::dim() const {
    switch (kind) {
        case Kind::Zero:
            return 0;
        case Kind::Tanh:
            return scale.size();
        case Kind::SinPlusOffset:
            return scale.size();
        case Kind::Linear:
            return matrix.rows;
    }
    return 0;
}

// --- InputSignal ---

InputSignal InputSignal::zero() {
    return {};
}

InputSignal InputSignal::constant(std::vector<double> v) {
    InputSignal u;
    u.kind = Kind::ConstantVec;
    u.v = std::move(v);
    return u;
}

InputSignal InputSignal::sinusoid(std::vector<double> amplitude, double omega) {
    InputSignal u;
    u.kind = Kind::Sinusoid;
    u.v = std::move(amplitude);
    u.omega = omega;
    return u;
}

std::vector<double> InputSignal::eval(double t, std::size_t m_in) const {
    switch (kind) {
        case Kind::Zero:
            return std::vector<double>(m_in, 0.0);
        case Kind::ConstantVec:
            return v;
        case Kind::Sinusoid: {
            std::vector<double> u(v.size());
            const double s = std::sin(omega * t);
            for (std::size_t i = 0; i < v.size(); ++i) {
                u[i] = v[i] * s;
            }
            return u;
        }
    }
    return {};
}

double InputSignal::sup_norm() const {
    return kind == Kind::Zero ? 0.0 : vec_max_abs(v);
}

// --- HistoryFn ---

HistoryFn HistoryFn::constant(std::vector<double> v) {
    HistoryFn h;
    h.kind = Kind::ConstantVec;
    h.v = std::move(v);
    return h;
}

HistoryFn HistoryFn::polynomial(std::vector<std::vector<double>> coeffs) {
    if (coeffs.empty()) {
        throw InvalidArgument("HistoryFn::polynomial: needs >= 1 coefficient");
    }
    for (const auto& c : coeffs) {
        if (c.size() != coeffs.front().size()) {
            throw InvalidArgument(
                "HistoryFn::polynomial: coefficient vectors must share one "
                "dimension");
        }
    }
    HistoryFn h;
    h.kind = Kind::Polynomial;
    h.poly_coeffs = std::move(coeffs);
    return h;
}

HistoryFn HistoryFn::sinusoid(std::vector<double> amplitude, double omega,
                              double phase) {
    HistoryFn h;
    h.kind = Kind::Sinusoid;
    h.v = std::move(amplitude);
    h.omega = omega;
    h.phase = phase;
    return h;
}

std::vector<double> HistoryFn::eval(double t) const {
    switch (kind) {
        case Kind::ConstantVec:
            return v;
        case Kind::Polynomial: {
            // Horner over vector coefficients
            std::vector<double> y = poly_coeffs.back();
            for (std::size_t d = poly_coeffs.size() - 1; d-- > 0;) {
                for (std::size_t i = 0; i < y.size(); ++i) {
                    y[i] = y[i] * t + poly_coeffs[d][i];
                }
            }
            return y;
        }
        case Kind::Sinusoid: {
            std::vector<double> y(v.size());
            const double s = std::sin(omega * t + phase);
            for (std::size_t i = 0; i < v.size(); ++i) {
                y[i] = v[i] * s;
            }
            return y;
        }
    }
    return {};
}

double HistoryFn::sup_norm(double tau) const {
    switch (kind) {
        case Kind::ConstantVec:
            return vec_max_abs(v);
        case Kind::Polynomial: {
            // certified upper bound: sum_d ||c_d||_max tau^d
            double bound = 0.0;
            double tp = 1.0;
            for (const auto& c : poly_coeffs) {
                bound += vec_max_abs(c) * tp;
                tp *= tau;
            }
            return bound;
        }
        case Kind::Sinusoid:
            return vec_max_abs(v);
    }
    return 0.0;
}

std::size_t HistoryFn::dim() const {
    switch (kind) {
        case Kind::ConstantVec:
            return v.size();
        case Kind::Polynomial:
            return poly_coeffs.front().size();
        case Kind::Sinusoid:
            return v.size();
    }
    return 0;
}

// --- SystemSpec ---

double SystemSpec::tau_max() const {
    double best = 0.0;
    for (double t : taus) {
        best = std::max(best, t);
    }
    return best;
}

void SystemSpec::validate() const {
    if (!(q > 0.0) || q > 1.0) {
        throw ValidationError("q: must be in (0, 1]");
    }
    if (n == 0) {
        throw ValidationError("n: must be >= 1");
    }
    if (a0.rows != n || a0.cols != n) {
        throw ValidationError("A0: must be n x n");
    }
    if (a_delays.size() != p) {
        std::ostringstream os;
        os << "delays: expected p = " << p << " entries, got "
           << a_delays.size();
        throw ValidationError(os.str());
    }
    if (taus.size() != p) {
        throw ValidationError("delays: tau count must equal p");
    }
    for (std::size_t i = 0; i < p; ++i) {
        if (a_delays[i].rows != n || a_delays[i].cols != n) {
            std::ostringstream os;
            os << "delays[" << i << "].A: must be n x n";
            throw ValidationError(os.str());
        }
        if (!(taus[i] > 0.0) || !std::isfinite(taus[i])) {
            std::ostringstream os;
            os << "delays[" << i << "].tau: must be > 0";
            throw ValidationError(os.str());
        }
    }
    if (b0.rows != n || b0.cols == 0) {
        throw ValidationError("B0: must have n rows and >= 1 column");
    }
    const std::size_t fd = nonlinearity.dim();
    if (fd != 0 && fd != n) {
        throw ValidationError("nonlinearity: parameter dimension must equal n");
    }
}

}  // namespace fracstab
