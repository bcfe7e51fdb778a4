#include "qcap/matrix.hpp"

#include <cmath>
#include <limits>

namespace qcap {

static void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("Matrix: shape mismatch");
}

Matrix& Matrix::operator+=(const Matrix& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Matrix& Matrix::operator*=(Cx s) {
    for (auto& x : a_) x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return mul(a, b, Exec::serial); }

Matrix mul(const Matrix& a, const Matrix& b, Exec ex) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mul: inner dimension mismatch");
    Matrix c(a.rows(), b.cols());
    const int n = a.rows(), k = a.cols(), m = b.cols();
    parallel_for(static_cast<std::size_t>(n), ex, [&](std::size_t i) {
        for (int l = 0; l < k; ++l) {
            const Cx av = a(static_cast<int>(i), l);
            if (av == Cx(0.0, 0.0)) continue;
            for (int j = 0; j < m; ++j) c(static_cast<int>(i), j) += av * b(l, j);
        }
    });
    return c;
}

Matrix Matrix::adjoint() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Matrix Matrix::conjugate() const {
    Matrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

Cx Matrix::trace() const {
    if (!square()) throw std::invalid_argument("trace: matrix not square");
    Cx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double s = 0.0;
    for (const auto& x : a_) s = std::max(s, std::abs(x));
    return s;
}

double Matrix::hermiticity_defect() const {
    if (!square()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ia = 0; ia < a.rows(); ++ia)
        for (int ja = 0; ja < a.cols(); ++ja) {
            const Cx av = a(ia, ja);
            if (av == Cx(0.0, 0.0)) continue;
            for (int ib = 0; ib < b.rows(); ++ib)
                for (int jb = 0; jb < b.cols(); ++jb)
                    r(ia * b.rows() + ib, ja * b.cols() + jb) = av * b(ib, jb);
        }
    return r;
}

std::vector<Cx> matvec(const Matrix& m, const std::vector<Cx>& x) {
    if (static_cast<std::size_t>(m.cols()) != x.size())
        throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<Cx> y(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        Cx s = 0.0;
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

double vec_norm(const std::vector<Cx>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

Cx vec_dot(const std::vector<Cx>& a, const std::vector<Cx>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vec_dot: length mismatch");
    Cx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

std::vector<Cx> kron_vec(const std::vector<Cx>& a, const std::vector<Cx>& b) {
    std::vector<Cx> r(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
    return r;
}

Matrix outer(const std::vector<Cx>& u, const std::vector<Cx>& v) {
    Matrix r(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            r(static_cast<int>(i), static_cast<int>(j)) = u[i] * std::conj(v[j]);
    return r;
}

void require_hermitian(const Matrix& m, double tol) {
    if (!m.square()) throw std::invalid_argument("require_hermitian: matrix not square");
    const double defect = m.hermiticity_defect();
    const double scale = std::max(1.0, m.max_abs());
    if (defect > tol * scale) throw std::invalid_argument("require_hermitian: hermiticity defect too large");
}

}  // namespace qcap
