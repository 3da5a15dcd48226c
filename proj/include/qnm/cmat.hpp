#pragma once
// Dense row-major complex matrices at register scale (dim <= 256).

#include <complex>
#include <cstddef>
#include <vector>

#include "qnm/kernels.hpp"

namespace qnm {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static CMat zero(std::size_t rows, std::size_t cols) { return CMat(rows, cols); }
    static CMat identity(std::size_t n);
    static CMat diag(const std::vector<double>& d);
    static CMat kron(const CMat& a, const CMat& b);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    cplx* row(std::size_t i) { return a_.data() + i * cols_; }
    const cplx* row(std::size_t i) const { return a_.data() + i * cols_; }
    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }
    std::size_t size() const { return a_.size(); }

    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);
    CMat& operator*=(cplx s);
    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }
    friend CMat operator*(const CMat& a, const CMat& b);

    CMat adjoint() const;
    CMat transpose() const;
    CMat conj() const;
    cplx trace() const;
    double fro_norm() const;       // sqrt(sum |a_ij|^2)
    double max_abs() const;
    bool is_hermitian(double tol) const;
    double hermiticity_defect() const;  // max |a_ij - conj(a_ji)|
    void hermitize();                   // a <- (a + a^dag)/2

    // Row-major vectorization (row i stacked after row i-1).
    CVec vec() const { return a_; }

    friend CVec operator*(const CMat& m, const CVec& v);

private:
    std::size_t rows_ = 0, cols_ = 0;
    CVec a_;
};

cplx inner(const CVec& x, const CVec& y);  // <x|y> = sum conj(x) y
double norm(const CVec& x);

// Commutator and anticommutator.
CMat commutator(const CMat& a, const CMat& b);
CMat anticommutator(const CMat& a, const CMat& b);

}  // namespace qnm
