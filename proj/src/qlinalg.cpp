#include "ncdg/qlinalg.hpp"

#include <stdexcept>

namespace ncdg {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ScalarQ::integer(1);
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw std::domain_error("QMatrix: dimension mismatch in *");
    QMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::domain_error("QMatrix: dimension mismatch in +");
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::domain_error("QMatrix: dimension mismatch in -");
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

QMatrix QMatrix::scaled(const ScalarQ& c) const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

bool QMatrix::is_zero() const {
    for (const ScalarQ& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

ScalarQ QMatrix::determinant() const {
    if (rows_ != cols_) throw std::domain_error("QMatrix: determinant of non-square matrix");
    QMatrix m = *this;
    ScalarQ det = ScalarQ::integer(1);
    for (int col = 0; col < cols_; ++col) {
        int pivot = -1;
        for (int r = col; r < rows_; ++r)
            if (!m.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return ScalarQ();
        if (pivot != col) {
            for (int c = 0; c < cols_; ++c) std::swap(m.at(pivot, c), m.at(col, c));
            det = -det;
        }
        det *= m.at(col, col);
        const ScalarQ inv = m.at(col, col).inverse();
        for (int r = col + 1; r < rows_; ++r) {
            if (m.at(r, col).is_zero()) continue;
            const ScalarQ f = m.at(r, col) * inv;
            for (int c = col; c < cols_; ++c) m.at(r, c) -= f * m.at(col, c);
        }
    }
    return det;
}

QMatrix QMatrix::inverse() const {
    if (rows_ != cols_) throw std::domain_error("QMatrix: inverse of non-square matrix");
    const int n = rows_;
    QMatrix m = *this, inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!m.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::domain_error("QMatrix: singular matrix");
        if (pivot != col)
            for (int c = 0; c < n; ++c) {
                std::swap(m.at(pivot, c), m.at(col, c));
                std::swap(inv.at(pivot, c), inv.at(col, c));
            }
        const ScalarQ d = m.at(col, col).inverse();
        for (int c = 0; c < n; ++c) {
            m.at(col, c) *= d;
            inv.at(col, c) *= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || m.at(r, col).is_zero()) continue;
            const ScalarQ f = m.at(r, col);
            for (int c = 0; c < n; ++c) {
                m.at(r, c) -= f * m.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

std::optional<std::vector<ScalarQ>> solve_linear(const QMatrix& A,
                                                 const std::vector<ScalarQ>& b) {
    if (static_cast<int>(b.size()) != A.rows())
        throw std::domain_error("solve_linear: size mismatch");
    const int n = A.rows(), m = A.cols();
    QMatrix aug(n, m + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, m) = b[static_cast<size_t>(i)];
    }
    std::vector<int> pivot_col_of_row(static_cast<size_t>(n), -1);
    int row = 0;
    for (int col = 0; col < m && row < n; ++col) {
        int pivot = -1;
        for (int r = row; r < n; ++r)
            if (!aug.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row)
            for (int c = 0; c <= m; ++c) std::swap(aug.at(pivot, c), aug.at(row, c));
        const ScalarQ d = aug.at(row, col).inverse();
        for (int c = 0; c <= m; ++c) aug.at(row, c) *= d;
        for (int r = 0; r < n; ++r) {
            if (r == row || aug.at(r, col).is_zero()) continue;
            const ScalarQ f = aug.at(r, col);
            for (int c = 0; c <= m; ++c) aug.at(r, c) -= f * aug.at(row, c);
        }
        pivot_col_of_row[static_cast<size_t>(row)] = col;
        ++row;
    }
    // Inconsistent when a zero row has nonzero RHS.
    for (int r = row; r < n; ++r)
        if (!aug.at(r, m).is_zero()) return std::nullopt;
    std::vector<ScalarQ> x(static_cast<size_t>(m));
    for (int r = 0; r < row; ++r)
        x[static_cast<size_t>(pivot_col_of_row[static_cast<size_t>(r)])] = aug.at(r, m);
    return x;
}

}  // namespace ncdg
