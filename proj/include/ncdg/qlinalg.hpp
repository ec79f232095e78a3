/**
 * @file qlinalg.hpp
 * @brief Dense exact linear algebra over Q(q): multiplication, inversion,
 *        and linear-system solving by fraction-field Gaussian elimination.
 *
 * Matrices here are tiny (4x4 and 8x8 at most), so plain Gaussian
 * elimination with first-nonzero pivoting is exact and fast.
 */
#pragma once

#include "ncdg/scalars.hpp"

#include <optional>
#include <vector>

namespace ncdg {

class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static QMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    ScalarQ& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const ScalarQ& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix scaled(const ScalarQ& c) const;
    bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool is_zero() const;

    ScalarQ determinant() const;
    /// Throws std::domain_error when the matrix is singular.
    QMatrix inverse() const;

private:
    int rows_, cols_;
    std::vector<ScalarQ> a_;
};

/// Exact solution of A x = b (A may be rectangular). Returns nullopt when the
/// system is inconsistent; free variables, if any, are set to zero.
std::optional<std::vector<ScalarQ>> solve_linear(const QMatrix& A,
                                                 const std::vector<ScalarQ>& b);

}  // namespace ncdg
