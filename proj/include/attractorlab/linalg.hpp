#pragma once

// Dense linear algebra at desk scale (q <= 4 in every shipped scenario).
// Storage is row-major double precision; no expression templates.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace attractorlab {

using Point = std::vector<double>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    /// Row-major nested literal, e.g. {{0.5, 0.0}, {0.0, 2.0}}.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> entries);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> data() const { return data_; }
    std::vector<std::vector<double>> to_rows() const;

    Matrix transposed() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Point operator*(const Matrix& a, std::span<const double> x);
Matrix operator-(const Matrix& a, const Matrix& b);

Point add(std::span<const double> a, std::span<const double> b);
Point subtract(std::span<const double> a, std::span<const double> b);
Point scaled(std::span<const double> a, double s);
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double distance(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);

/// Largest entrywise |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_entry(const Matrix& a);

/// Determinant by partial-pivot elimination.
double determinant(const Matrix& a);

/// Largest singular value. Closed form for q <= 2, cyclic Jacobi on A^T A
/// otherwise (throws ConvergenceFailure past the sweep cap).
double operator_norm(const Matrix& a);

/// Largest eigenvalue modulus. Closed form for q <= 2, Hessenberg + shifted QR
/// otherwise with a cap of 10^4 iterations (throws ConvergenceFailure).
double spectral_radius(const Matrix& a);

struct SymmetricEigen {
    std::vector<double> values;  // descending
    Matrix vectors;              // column j pairs with values[j]
};

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
SymmetricEigen symmetric_eigen(const Matrix& s);

/// Result of solving a square system with rank detection.
struct SolveResult {
    enum class Status { Unique, Underdetermined, Inconsistent };
    Status status;
    Point x;  // valid only when status == Unique
};

/// Full-pivot Gaussian elimination. Pivots below rel_tol * max|entry| are
/// treated as zero; a zero-rank tail is then tested for consistency.
SolveResult solve_with_rank(const Matrix& a, std::span<const double> b, double rel_tol = 1e-12);

}  // namespace attractorlab
