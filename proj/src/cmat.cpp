#include "qnm/cmat.hpp"

#include <cassert>
#include <cmath>

namespace qnm {

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::diag(const std::vector<double>& d) {
    CMat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMat CMat::kron(const CMat& a, const CMat& b) {
    CMat m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                kernels::caxpy(m.row(i * b.rows() + k) + j * b.cols(), aij, b.row(k), b.cols());
        }
    return m;
}

CMat& CMat::operator+=(const CMat& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    kernels::caxpy(a_.data(), 1.0, o.a_.data(), a_.size());
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    kernels::caxpy(a_.data(), -1.0, o.a_.data(), a_.size());
    return *this;
}

CMat& CMat::operator*=(cplx s) {
    kernels::cscal(a_.data(), s, a_.size());
    return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
    assert(a.cols() == b.rows());
    CMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik != cplx{}) kernels::caxpy(c.row(i), aik, b.row(k), b.cols());
        }
    return c;
}

CVec operator*(const CMat& m, const CVec& v) {
    assert(m.cols() == v.size());
    CVec y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        y[i] = kernels::cdotu(m.row(i), v.data(), m.cols());
    return y;
}

CMat CMat::adjoint() const {
    CMat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMat CMat::transpose() const {
    CMat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

CMat CMat::conj() const {
    CMat m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = std::conj(a_[i]);
    return m;
}

cplx CMat::trace() const {
    cplx s{};
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
}

double CMat::fro_norm() const {
    return std::sqrt(kernels::cdotc(a_.data(), a_.data(), a_.size()).real());
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const cplx& z : a_) m = std::max(m, std::abs(z));
    return m;
}

double CMat::hermiticity_defect() const {
    double d = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

bool CMat::is_hermitian(double tol) const {
    return rows_ == cols_ && hermiticity_defect() <= tol;
}

void CMat::hermitize() {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j) {
            const cplx v = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            (*this)(i, j) = v;
            (*this)(j, i) = std::conj(v);
        }
}

cplx inner(const CVec& x, const CVec& y) {
    assert(x.size() == y.size());
    return kernels::cdotc(x.data(), y.data(), x.size());
}

double norm(const CVec& x) { return std::sqrt(inner(x, x).real()); }

CMat commutator(const CMat& a, const CMat& b) { return a * b - b * a; }
CMat anticommutator(const CMat& a, const CMat& b) { return a * b + b * a; }

}  // namespace qnm
