#pragma once

// Pointwise Hermitian metric data: inner products on forms, musical
// isomorphisms, orthonormal frames. g(i,j) stores g_{i jbar} in the chart
// convention g_{i jbar} = d^2 K / dz^i dzbar^j; the Riemannian metric on
// real vectors is g(X,Y) = sum g(k,l) (X.h_k Y.a_l + Y.h_k X.a_l).

#include <algorithm>
#include <vector>

#include "kform/form.hpp"
#include "kform/linalg.hpp"

namespace kform {

template <class R>
struct Metric {
    int m = 0;
    Mat<R> g;    // g(i,j) = g_{i jbar}
    Mat<R> ginv; // plain matrix inverse of g

    // raised entry g^{i jbar}; satisfies sum_k gup(i,k) g(j,k) = delta_ij
    R gup(int i, int j) const { return ginv(j, i); }

    static Metric from_g(Mat<R> gm) {
        Metric mt;
        mt.m = gm.n;
        mt.ginv = mat_inverse(gm);
        mt.g = std::move(gm);
        return mt;
    }

    Form<R> omega() const {
        Form<R> w(m);
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) {
                R v = g(k, l);
                v *= cplx(0, 1);
                w.add_term(Mask(1) << k, Mask(1) << l, v);
            }
        return w;
    }

    // (1,1)-form i * h_{k lbar} dz^k ^ dzbar^l from a Hermitian matrix
    // (the Ricci form when h is the Ricci tensor)
    Form<R> herm_form(const Mat<R>& h) const {
        Form<R> w(m);
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) {
                R v = h(k, l);
                v *= cplx(0, 1);
                w.add_term(Mask(1) << k, Mask(1) << l, v);
            }
        return w;
    }

    // Riemannian pairing of complexified vectors (complex-bilinear extension)
    R pair(const Vec<R>& x, const Vec<R>& y) const {
        R acc = ring_zero(g(0, 0));
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) acc += g(k, l) * (x.h[k] * y.a[l] + y.h[k] * x.a[l]);
        return acc;
    }

    // X^flat = g(X, .)
    Form<R> vflat(const Vec<R>& x) const {
        std::vector<R> hol(static_cast<std::size_t>(m), ring_zero(g(0, 0)));
        std::vector<R> anti = hol;
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) {
                hol[k] += g(k, l) * x.a[l];
                anti[l] += g(k, l) * x.h[k];
            }
        return one_form(m, hol, anti);
    }

    // inverse musical isomorphism on a 1-form
    Vec<R> vsharp(const Form<R>& alpha) const {
        Vec<R> x(m);
        for (int k = 0; k < m; ++k) {
            x.h[k] = ring_zero(g(0, 0));
            x.a[k] = ring_zero(g(0, 0));
        }
        for (int k = 0; k < m; ++k) {
            auto ith = alpha.c.find(Form<R>::key(Mask(1) << k, 0));
            auto ita = alpha.c.find(Form<R>::key(0, Mask(1) << k));
            if (ith != alpha.c.end())
                for (int l = 0; l < m; ++l) x.a[l] += ginv(l, k) * ith->second;
            if (ita != alpha.c.end())
                for (int l = 0; l < m; ++l) x.h[l] += gup(l, k) * ita->second;
        }
        return x;
    }

    // Hermitian inner product on forms; sesquilinear in the second slot.
    // Determinant-of-Gram convention over strictly increasing multi-indices.
    R inner(const Form<R>& x, const Form<R>& y) const {
        R acc = ring_zero(g(0, 0));
        for (const auto& [ka, va] : x.c) {
            Mask I = Form<R>::key_hol(ka), J = Form<R>::key_anti(ka);
            auto ib = mask_bits(I), jb = mask_bits(J);
            for (const auto& [kb, vb] : y.c) {
                Mask I2 = Form<R>::key_hol(kb), J2 = Form<R>::key_anti(kb);
                if (mask_size(I2) != static_cast<int>(ib.size()) ||
                    mask_size(J2) != static_cast<int>(jb.size()))
                    continue;
                auto ib2 = mask_bits(I2), jb2 = mask_bits(J2);
                R term = va * kconj(vb);
                if (!ib.empty()) {
                    Mat<R> M1(static_cast<int>(ib.size()));
                    for (std::size_t r = 0; r < ib.size(); ++r)
                        for (std::size_t s = 0; s < ib2.size(); ++s)
                            M1(static_cast<int>(r), static_cast<int>(s)) = gup(ib[r], ib2[s]);
                    term = term * mat_det(M1);
                }
                if (!jb.empty()) {
                    Mat<R> M2(static_cast<int>(jb.size()));
                    for (std::size_t r = 0; r < jb.size(); ++r)
                        for (std::size_t s = 0; s < jb2.size(); ++s)
                            M2(static_cast<int>(r), static_cast<int>(s)) = gup(jb2[s], jb[r]);
                    term = term * mat_det(M2);
                }
                acc += term;
            }
        }
        return acc;
    }

    double norm2(const Form<R>& x) const { return kvalue(inner(x, x)).real(); }

    // (0,m)-form of unit norm, positive real coefficient
    Form<R> normalized_antivolume() const {
        Mask full = (Mask(1) << m) - 1;
        Form<R> psi = Form<R>::basis(m, 0, full, ring_one(g(0, 0)));
        R n2 = inner(psi, psi);
        psi *= mult_inverse(ksqrt(kreal(n2)));
        return psi;
    }

    // orthonormal real frame by Gram-Schmidt on the coordinate frame;
    // variant 1 reverses the seed order (for frame-independence checks)
    std::vector<Vec<R>> real_frame(int variant = 0) const {
        std::vector<Vec<R>> seed;
        for (int k = 0; k < m; ++k) {
            Vec<R> dx(m), dy(m);
            for (int j = 0; j < m; ++j) {
                dx.h[j] = ring_zero(g(0, 0));
                dx.a[j] = ring_zero(g(0, 0));
                dy.h[j] = ring_zero(g(0, 0));
                dy.a[j] = ring_zero(g(0, 0));
            }
            dx.h[k] = ring_one(g(0, 0));
            dx.a[k] = ring_one(g(0, 0));
            dy.h[k] = ring_one(g(0, 0)) * cplx(0, 1);
            dy.a[k] = ring_one(g(0, 0)) * cplx(0, -1);
            seed.push_back(dx);
            seed.push_back(dy);
        }
        if (variant == 1) std::reverse(seed.begin(), seed.end());
        std::vector<Vec<R>> out;
        for (auto v : seed) {
            for (const auto& e : out) {
                R p = kreal(pair(v, e));
                Vec<R> sub = e;
                sub *= p;
                v -= sub;
            }
            R n = ksqrt(kreal(pair(v, v)));
            Vec<R> u = v;
            u *= mult_inverse(n);
            out.push_back(u);
        }
        return out;
    }

    // unitary frame of T^{1,0}: h(X,Y) = 2 g(X, conj Y), optionally seeded
    // with prescribed initial vectors (completed by the coordinate frame)
    std::vector<Vec<R>> unitary_frame(const std::vector<Vec<R>>& first = {}) const {
        std::vector<Vec<R>> seed = first;
        for (int k = 0; k < m; ++k) {
            Vec<R> d(m);
            for (int j = 0; j < m; ++j) {
                d.h[j] = ring_zero(g(0, 0));
                d.a[j] = ring_zero(g(0, 0));
            }
            d.h[k] = ring_one(g(0, 0));
            seed.push_back(d);
        }
        std::vector<Vec<R>> out;
        for (auto v : seed) {
            for (const auto& e : out) {
                R p = herm(v, e);
                Vec<R> sub = e;
                sub *= p;
                v -= sub;
            }
            R n2 = kreal(herm(v, v));
            if (kabs(n2) < 1e-20) continue; // dependent seed vector
            Vec<R> u = v;
            u *= mult_inverse(ksqrt(n2));
            out.push_back(u);
            if (static_cast<int>(out.size()) == m) break;
        }
        return out;
    }

    // Hermitian pairing on T^{1,0} components, linear in first slot
    R herm(const Vec<R>& x, const Vec<R>& y) const {
        R acc = ring_zero(g(0, 0));
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) acc += g(k, l) * x.h[k] * kconj(y.h[l]) * cplx(2.0);
        return acc;
    }

  private:
    static cplx mult_inverse(const cplx& x) { return 1.0 / x; }
    static Jet mult_inverse(const Jet& x) { return x.inverse(); }
};

} // namespace kform
