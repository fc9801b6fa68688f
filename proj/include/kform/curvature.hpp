#pragma once

// Curvature data at a point, in the convention R(X,Y)Z = nabla^2_{Y,X} Z -
// nabla^2_{X,Y} Z (so the round sphere has positive Ricci). The fundamental
// block is B(k,l,j,q) = R(d/dz_k, d/dzbar_l, d/dz_j, d/dzbar_q); all other
// slot patterns follow from the pair (1,1)-structure of Kahler curvature.

#include <vector>

#include "kform/metric.hpp"

namespace kform {

template <class R>
struct Curvature {
    int m = 0;
    std::vector<R> B; // [k][l][j][q], row-major m^4
    Mat<R> ric;       // ric(k,l) = Ric(d/dz_k, d/dzbar_l), Hermitian
    R scal{};

    const R& b(int k, int l, int j, int q) const {
        return B[static_cast<std::size_t>(((k * m + l) * m + j) * m + q)];
    }
    R& b(int k, int l, int j, int q) {
        return B[static_cast<std::size_t>(((k * m + l) * m + j) * m + q)];
    }

    // full complex-multilinear curvature evaluation
    R eval(const Vec<R>& X, const Vec<R>& Y, const Vec<R>& Z, const Vec<R>& W) const {
        R acc = ring_zero(scal);
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) {
                R f1 = X.h[k] * Y.a[l] - Y.h[k] * X.a[l];
                for (int j = 0; j < m; ++j)
                    for (int q = 0; q < m; ++q) {
                        R f2 = Z.h[j] * W.a[q] - W.h[j] * Z.a[q];
                        acc += b(k, l, j, q) * f1 * f2;
                    }
            }
        return acc;
    }

    // the 2-form g(R(X,Y) . , .)
    Form<R> two_form(const Vec<R>& X, const Vec<R>& Y) const {
        Form<R> out(m);
        for (int j = 0; j < m; ++j)
            for (int q = 0; q < m; ++q) {
                R acc = ring_zero(scal);
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l)
                        acc += b(k, l, j, q) * (X.h[k] * Y.a[l] - Y.h[k] * X.a[l]);
                out.add_term(Mask(1) << j, Mask(1) << q, acc);
            }
        return out;
    }

    // Ricci as an endomorphism of the (complexified) tangent space
    Vec<R> ric_endo(const Metric<R>& mt, const Vec<R>& X) const {
        Vec<R> y(m);
        for (int k = 0; k < m; ++k) {
            y.h[k] = ring_zero(scal);
            y.a[k] = ring_zero(scal);
        }
        for (int k = 0; k < m; ++k) {
            R rh = ring_zero(scal), ra = ring_zero(scal);
            for (int q = 0; q < m; ++q) {
                R tx = ring_zero(scal);
                for (int j = 0; j < m; ++j) tx += X.h[j] * ric(j, q);
                rh += mt.gup(k, q) * tx;
                R ty = ring_zero(scal);
                for (int j = 0; j < m; ++j) ty += ric(q, j) * X.a[j];
                ra += mt.ginv(k, q) * ty;
            }
            y.h[k] = rh;
            y.a[k] = ra;
        }
        return y;
    }

    // the 1-form Ric(X, .)
    Form<R> ric_flat(const Vec<R>& X) const {
        std::vector<R> hol(static_cast<std::size_t>(m), ring_zero(scal));
        std::vector<R> anti = hol;
        for (int k = 0; k < m; ++k)
            for (int q = 0; q < m; ++q) {
                hol[k] += ric(k, q) * X.a[q];
                anti[q] += ric(k, q) * X.h[k];
            }
        return one_form(m, hol, anti);
    }
};

} // namespace kform
