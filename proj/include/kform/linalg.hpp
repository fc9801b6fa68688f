#pragma once

// Small dense matrices over a scalar ring (complex or jets). Sizes here are
// at most m <= 4, so Laplace expansions and Gauss-Jordan without pivot
// search (pivots are invertible by positive-definiteness) are adequate.

#include <stdexcept>
#include <vector>

#include "kform/form.hpp"

namespace kform {

inline cplx ring_one(const cplx&) { return cplx(1.0); }
inline cplx ring_zero(const cplx&) { return cplx(0.0); }
inline Jet ring_one(const Jet& model) { return Jet::constant(model.spec(), 1.0); }
inline Jet ring_zero(const Jet& model) { return Jet::constant(model.spec(), 0.0); }

template <class R>
struct Mat {
    int n = 0;
    std::vector<R> a; // row-major

    Mat() = default;
    explicit Mat(int nn) : n(nn), a(static_cast<std::size_t>(nn) * nn, R{}) {}

    R& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const R& operator()(int i, int j) const {
        return a[static_cast<std::size_t>(i) * n + j];
    }

    Mat conj() const {
        Mat r(n);
        for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = kconj(a[i]);
        return r;
    }
    Mat transpose() const {
        Mat r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
};

template <class R>
Mat<R> mat_inverse(const Mat<R>& m) {
    int n = m.n;
    Mat<R> a = m, inv(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv(i, j) = (i == j) ? ring_one(m(0, 0)) : ring_zero(m(0, 0));

    for (int col = 0; col < n; ++col) {
        R piv_inv = ring_one(m(0, 0)) / a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) = a(col, j) * piv_inv;
            inv(col, j) = inv(col, j) * piv_inv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            R f = a(r, col);
            for (int j = 0; j < n; ++j) {
                a(r, j) = a(r, j) - f * a(col, j);
                inv(r, j) = inv(r, j) - f * inv(col, j);
            }
        }
    }
    return inv;
}

template <class R>
R mat_det(const Mat<R>& m) {
    // Laplace over the first row; n <= 4 throughout
    int n = m.n;
    if (n == 0) throw std::invalid_argument("det of empty matrix");
    if (n == 1) return m(0, 0);
    R acc = ring_zero(m(0, 0));
    for (int j = 0; j < n; ++j) {
        Mat<R> sub(n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                sub(r - 1, cc++) = m(r, c);
            }
        }
        R term = m(0, j) * mat_det(sub);
        if (j % 2) term *= cplx(-1.0);
        acc += term;
    }
    return acc;
}

template <class R>
std::vector<R> mat_apply(const Mat<R>& m, const std::vector<R>& v) {
    std::vector<R> out(static_cast<std::size_t>(m.n), ring_zero(m(0, 0)));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) out[i] += m(i, j) * v[j];
    return out;
}

} // namespace kform
