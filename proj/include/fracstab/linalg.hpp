#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fracstab {

/// Small dense row-major matrix. All entries must be finite.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries;  ///< rows * cols, row-major

    Mat() = default;
    Mat(std::size_t r, std::size_t c);  ///< zero-filled
    Mat(std::size_t r, std::size_t c, std::vector<double> e);
    Mat(std::initializer_list<std::initializer_list<double>> rows_init);

    static Mat identity(std::size_t n);
    static Mat diag(std::initializer_list<double> d);

    double& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    bool empty() const { return rows == 0 || cols == 0; }
    bool square() const { return rows == cols; }
};

/// Largest singular value (spectral norm) via one-sided Jacobi, relative
/// accuracy ~1e-14. Throws EmptyMatrix.
double sigma_max(const Mat& a);

/// max over the list of sigma_max. All matrices must be square and of equal
/// dimension. Throws EmptyMatrix on an empty list, DimensionMismatch.
double sigma_bound(std::span<const Mat> mats);

/// Uniform (max-component-magnitude) vector norm. Throws EmptyVector.
double vec_norm_max(std::span<const double> x);

/// Induced max-norm of a matrix (largest absolute row sum). Diagnostic
/// companion to sigma_max; not used by the criteria.
double max_row_sum(const Mat& a);

/// y = A x. Throws DimensionMismatch.
std::vector<double> mat_vec(const Mat& a, std::span<const double> x);

}  // namespace fracstab
