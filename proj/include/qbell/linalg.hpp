#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qbell {

using cxd = std::complex<double>;
using CVec = std::vector<cxd>;

/// Dense complex matrix, row-major. Dimensions here never exceed 8, so
/// plain O(n^3) arithmetic is used throughout.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cxd{0.0, 0.0}) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cxd& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cxd& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator*(cxd scalar) const;

    Matrix adjoint() const;
    cxd trace() const;

    /// Largest entry magnitude (entrywise L-infinity).
    double max_abs() const;

    CVec apply(const CVec& v) const;
    CVec column(std::size_t j) const;

    bool is_hermitian(double tolerance) const;

    /// Entrywise max |this - rhs|.
    double distance(const Matrix& rhs) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cxd> a_;
};

/// Kronecker product; the first factor is the most significant one
/// (qubit 0 of a word is the leftmost tensor factor).
Matrix kron(const Matrix& a, const Matrix& b);

cxd inner(const CVec& u, const CVec& v);  // conjugate-linear in u
double norm(const CVec& v);
CVec normalized(const CVec& v);

}  // namespace qbell
