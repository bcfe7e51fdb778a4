// Dense complex matrices, sized for desk-scale operator algebra (dim <= 64).
//
// Storage is row-major std::vector<std::complex<double>>.  Rectangular shapes
// are allowed (Kraus operators are d_out x d_in); operator algebra that only
// makes sense on square matrices checks squareness at the call site.
// Composite systems use the convention index = i_A * d_B + i_B, i.e. subsystem
// 0 is the left Kronecker factor.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qcap/parallel.hpp"

namespace qcap {

using Cx = std::complex<double>;

class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative shape");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Cx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Cx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<Cx>& data() const { return a_; }
    std::vector<Cx>& data() { return a_; }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(Cx s);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Cx s) { return a *= s; }
    friend Matrix operator*(Cx s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conjugate() const;

    Cx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    // Largest |M(i,j) - conj(M(j,i))| over all entries; 0 for exactly Hermitian input.
    double hermiticity_defect() const;

private:
    int rows_, cols_;
    std::vector<Cx> a_;
};

// Matrix product with an explicit execution policy; rows of the result are the
// parallel units.  operator* forwards to the serial path.
Matrix mul(const Matrix& a, const Matrix& b, Exec ex);

Matrix kron(const Matrix& a, const Matrix& b);

// y = M x
std::vector<Cx> matvec(const Matrix& m, const std::vector<Cx>& x);

double vec_norm(const std::vector<Cx>& v);
Cx vec_dot(const std::vector<Cx>& a, const std::vector<Cx>& b);  // conj(a) . b
std::vector<Cx> kron_vec(const std::vector<Cx>& a, const std::vector<Cx>& b);

// |u><v|
Matrix outer(const std::vector<Cx>& u, const std::vector<Cx>& v);

// Throws std::invalid_argument unless m is square and hermitian within tol
// (max entrywise defect).
void require_hermitian(const Matrix& m, double tol = 1e-10);

}  // namespace qcap
