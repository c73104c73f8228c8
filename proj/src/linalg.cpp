#include "fracstab/linalg.hpp"

#include <cmath>
#include <sstream>

#include "fracstab/errors.hpp"

namespace fracstab {

namespace {

void check_finite(const std::vector<double>& e) {
    for (double v : e) {
        if (!std::isfinite(v)) {
            throw InvalidArgument("Mat: entries must be finite");
        }
    }
}

}  // namespace

Mat::Mat(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0.0) {}

Mat::Mat(std::size_t r, std::size_t c, std::vector<double> e)
    : rows(r), cols(c), entries(std::move(e)) {
    if (entries.size() != rows * cols) {
        std::ostringstream os;
        os << "Mat: " << rows << "x" << cols << " needs " << rows * cols
           << " entries, got " << entries.size();
        throw DimensionMismatch(os.str());
    }
    check_finite(entries);
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows_init) {
    rows = rows_init.size();
    cols = rows ? rows_init.begin()->size() : 0;
    entries.reserve(rows * cols);
    for (const auto& r : rows_init) {
        if (r.size() != cols) {
            throw DimensionMismatch("Mat: ragged initializer rows");
        }
        entries.insert(entries.end(), r.begin(), r.end());
    }
    check_finite(entries);
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = 1.0;
    }
    return m;
}

Mat Mat::diag(std::initializer_list<double> d) {
    Mat m(d.size(), d.size());
    std::size_t i = 0;
    for (double v : d) {
        m.at(i, i) = v;
        ++i;
    }
    check_finite(m.entries);
    return m;
}

double sigma_max(const Mat& a) {
    if (a.empty()) {
        throw EmptyMatrix("sigma_max: empty matrix");
    }
    // Work on a tall copy (singular values are transpose-invariant) and
    // orthogonalize column pairs until all dot products are negligible.
    const bool transpose = a.rows < a.cols;
    const std::size_t m = transpose ? a.cols : a.rows;
    const std::size_t n = transpose ? a.rows : a.cols;
    std::vector<double> w(m * n);  // column-major work array
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) {
            const double v = a.at(i, j);
            if (transpose) {
                w[i * m + j] = v;  // column i of w = row i of a
            } else {
                w[j * m + i] = v;
            }
        }
    }

    constexpr double kOrthTol = 1e-15;
    constexpr int kMaxSweeps = 60;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t r = p + 1; r < n; ++r) {
                double* cp = &w[p * m];
                double* cr = &w[r * m];
                double app = 0.0, arr = 0.0, apr = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    app += cp[i] * cp[i];
                    arr += cr[i] * cr[i];
                    apr += cp[i] * cr[i];
                }
                if (std::fabs(apr) <= kOrthTol * std::sqrt(app * arr)) {
                    continue;
                }
                rotated = true;
                const double zeta = (arr - app) / (2.0 * apr);
                const double t =
                    (zeta >= 0.0 ? 1.0 : -1.0) /
                    (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double vp = cp[i];
                    const double vr = cr[i];
                    cp[i] = c * vp - s * vr;
                    cr[i] = s * vp + c * vr;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }

    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            norm2 += w[j * m + i] * w[j * m + i];
        }
        best = std::max(best, norm2);
    }
    return std::sqrt(best);
}

double sigma_bound(std::span<const Mat> mats) {
    if (mats.empty()) {
        throw EmptyMatrix("sigma_bound: empty matrix list");
    }
    const std::size_t dim = mats.front().rows;
    double best = 0.0;
    for (const Mat& m : mats) {
        if (!m.square() || m.rows != dim) {
            throw DimensionMismatch(
                "sigma_bound: matrices must be square and of equal dimension");
        }
        best = std::max(best, sigma_max(m));
    }
    return best;
}

double vec_norm_max(std::span<const double> x) {
    if (x.empty()) {
        throw EmptyVector("vec_norm_max: empty vector");
    }
    double best = 0.0;
    for (double v : x) {
        best = std::max(best, std::fabs(v));
    }
    return best;
}

double max_row_sum(const Mat& a) {
    if (a.empty()) {
        throw EmptyMatrix("max_row_sum: empty matrix");
    }
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) {
            row += std::fabs(a.at(i, j));
        }
        best = std::max(best, row);
    }
    return best;
}

std::vector<double> mat_vec(const Mat& a, std::span<const double> x) {
    if (x.size() != a.cols) {
        throw DimensionMismatch("mat_vec: size mismatch");
    }
    std::vector<double> y(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) {
            acc += a.at(i, j) * x[j];
        }
        y[i] = acc;
    }
    return y;
}

}  // namespace fracstab
