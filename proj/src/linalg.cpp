#include "qbell/linalg.hpp"

#include <cmath>

#include "qbell/errors.hpp"

namespace qbell {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw DimensionError("matrix multiply: " + std::to_string(cols_) +
                             " columns vs " + std::to_string(rhs.rows_) + " rows");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cxd aik = at(i, k);
            if (aik == cxd{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.at(i, j) += aik * rhs.at(k, j);
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionError("matrix add: shape mismatch");
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + rhs.a_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionError("matrix subtract: shape mismatch");
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
    return out;
}

Matrix Matrix::operator*(cxd scalar) const {
    Matrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * scalar;
    return out;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out.at(j, i) = std::conj(at(i, j));
    return out;
}

cxd Matrix::trace() const {
    cxd t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const cxd& x : a_) m = std::max(m, std::abs(x));
    return m;
}

CVec Matrix::apply(const CVec& v) const {
    if (v.size() != cols_)
        throw DimensionError("matrix apply: vector length " + std::to_string(v.size()) +
                             " vs " + std::to_string(cols_) + " columns");
    CVec out(rows_, cxd{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[i] += at(i, j) * v[j];
    return out;
}

CVec Matrix::column(std::size_t j) const {
    CVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
    return out;
}

bool Matrix::is_hermitian(double tolerance) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tolerance) return false;
    return true;
}

double Matrix::distance(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionError("matrix distance: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
        m = std::max(m, std::abs(a_[i] - rhs.a_[i]));
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
    return out;
}

cxd inner(const CVec& u, const CVec& v) {
    if (u.size() != v.size())
        throw DimensionError("inner product: length mismatch");
    cxd s{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

double norm(const CVec& v) { return std::sqrt(std::abs(inner(v, v))); }

CVec normalized(const CVec& v) {
    const double n = norm(v);
    if (n == 0.0) throw ProbabilityError("normalize: zero vector");
    CVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / n;
    return out;
}

}  // namespace qbell
