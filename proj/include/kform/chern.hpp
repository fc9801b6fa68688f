#pragma once

// The Chern connection of the split structure on a Calabi chart:
// I = -J on the vertical plane, +J on the horizontal one, and
// nabla^c = nabla + (1/2)(nabla I) I. nabla^c preserves the splitting and
// restricts to the lifted base Levi-Civita connection on horizontal lifts.

#include "kform/calabi.hpp"

namespace kform {

// vertical projection of a complexified vector, P(Y) = (g(Y,K) K + g(Y,JK) JK)/X
inline Vec<Jet> vertical_project(const CalabiChart& cc, const Geom& G, const Vec<Jet>& Y) {
    Vec<Jet> K = killing_field(cc, G);
    Vec<Jet> JK = K.jay();
    Jet X = kreal(G.mt.pair(K, K));
    Jet a = G.mt.pair(Y, K) / X;
    Jet b = G.mt.pair(Y, JK) / X;
    Vec<Jet> out = K;
    out *= a;
    Vec<Jet> t = JK;
    t *= b;
    out += t;
    return out;
}

// I(Y) = J(Y - 2 P(Y))
inline Vec<Jet> split_I(const CalabiChart& cc, const Geom& G, const Vec<Jet>& Y) {
    Vec<Jet> p = vertical_project(cc, G, Y);
    p *= Jet::constant(p.h[0].spec(), -2.0);
    Vec<Jet> t = Y;
    t += p;
    return t.jay();
}

// derivation action of an endomorphism on a form:
// (A * tau)(X_1,...) = - sum tau(X_1,..., A X_i, ...), assembled from the
// images of the coordinate frame
inline Form<Jet> endo_act(const Geom& G, const std::vector<Vec<Jet>>& images,
                          const Form<Jet>& tau) {
    // images[2k] = A(d/dz_k), images[2k+1] = A(d/dzbar_k)
    Form<Jet> out(G.m);
    for (int k = 0; k < G.m; ++k) {
        Form<Jet> ch = contract(images[static_cast<std::size_t>(2 * k)], tau);
        if (!ch.empty()) {
            Form<Jet> dz = Form<Jet>::basis(G.m, Mask(1) << k, 0, ring_one(G.mt.g(0, 0)));
            out -= wedge(dz, ch);
        }
        Form<Jet> ca = contract(images[static_cast<std::size_t>(2 * k + 1)], tau);
        if (!ca.empty()) {
            Form<Jet> dzb = Form<Jet>::basis(G.m, 0, Mask(1) << k, ring_one(G.mt.g(0, 0)));
            out -= wedge(dzb, ca);
        }
    }
    return out;
}

inline Vec<Jet> coord_dir(const Geom& G, int k, bool hol) {
    Vec<Jet> v(G.m);
    for (int i = 0; i < G.m; ++i) {
        v.h[i] = Jet::constant(G.spec, 0.0);
        v.a[i] = Jet::constant(G.spec, 0.0);
    }
    (hol ? v.h : v.a)[static_cast<std::size_t>(k)] = Jet::constant(G.spec, 1.0);
    return v;
}

// nabla^c_X tau = nabla_X tau + (1/2) [(nabla_X I) I] * tau
inline Form<Jet> chern_nabla(const CalabiChart& cc, const Geom& G, const Form<Jet>& tau,
                             const Vec<Jet>& X) {
    // E(d_mu) = (nabla_X I)(I d_mu) = -nabla_X d_mu - I(nabla_X(I d_mu)),
    // using I I = -1 and extending I d_mu as a field
    std::vector<Vec<Jet>> images;
    for (int k = 0; k < G.m; ++k)
        for (int hol : {1, 0}) {
            Vec<Jet> dmu = coord_dir(G, k, hol == 1);
            Vec<Jet> idmu = split_I(cc, G, dmu);
            Vec<Jet> term = nabla_vec(G, idmu, X);
            Vec<Jet> e = split_I(cc, G, term);
            // nabla_X d_mu = Gamma-correction only (constant coefficients)
            Vec<Jet> gam(G.m);
            for (int i = 0; i < G.m; ++i) {
                gam.h[i] = Jet::constant(G.spec, 0.0);
                gam.a[i] = Jet::constant(G.spec, 0.0);
            }
            if (hol == 1)
                for (int i = 0; i < G.m; ++i) {
                    Jet acc = Jet::constant(G.spec, 0.0);
                    for (int j = 0; j < G.m; ++j) acc += G.Gam(i, j, k) * X.h[j];
                    gam.h[i] = acc;
                }
            else
                for (int i = 0; i < G.m; ++i) {
                    Jet acc = Jet::constant(G.spec, 0.0);
                    for (int j = 0; j < G.m; ++j) acc += G.Gam(i, j, k).conj() * X.a[j];
                    gam.a[i] = acc;
                }
            e += gam;
            e *= Jet::constant(G.spec, -1.0);
            images.push_back(e);
        }
    // images were pushed as (hol, anti) per k but endo_act expects that order
    Form<Jet> corr = endo_act(G, images, tau);
    corr *= cplx(0.5);
    return nabla(G, tau, X) + corr;
}

// horizontal lift of a base coordinate direction (a in 0..m-2):
// X^H = d_a - (d_a t) w d_w so that dt(X^H) = 0
inline Vec<Jet> horizontal_lift(const CalabiChart& cc, const Geom& G, int a, bool hol) {
    Jet t = cc.t_jet(G.z, G.zb);
    Vec<Jet> v = coord_dir(G, a, hol);
    int w = cc.w_index();
    if (hol)
        v.h[w] = -wirtinger_d(t, a) * G.z[static_cast<std::size_t>(w)];
    else
        v.a[w] = -wirtinger_dbar(t, a) * G.zb[static_cast<std::size_t>(w)];
    return v;
}

// the (0,1) covector K^{01} (the (0,1)-part of K^flat)
inline Form<Jet> k01_covector(const CalabiChart& cc, const Geom& G) {
    Vec<Jet> K = killing_field(cc, G);
    return G.mt.vflat(K).bidegree(0, 1);
}

// horizontal part of a (0,q)-form: strips the phibar^U factor
inline Form<cplx> horizontal_part_0q(const SplitFrame& sf, const Form<cplx>& f) {
    Vec<cplx> Ubar = sf.U.conj();
    return f - wedge(sf.phiU.conj(), contract(Ubar, f));
}

} // namespace kform
