#pragma once

// Differential operators on jet-valued forms at a point. Every operator
// consumes jets and returns jets of lower order, so compositions like d*d
// or d R d chain within a single Geom.

#include "kform/chart.hpp"

namespace kform {

// ---- Dolbeault / exterior -------------------------------------------------

inline Form<Jet> del(const Form<Jet>& f) {
    Form<Jet> out(f.m);
    if (f.c.empty()) return out;
    for (int k = 0; k < f.m; ++k) {
        Form<Jet> dk(f.m);
        for (const auto& [key, v] : f.c) dk.c[key] = wirtinger_d(v, k);
        Form<Jet> dz = Form<Jet>::basis(f.m, Mask(1) << k, 0, ring_one(f.c.begin()->second));
        out += wedge(dz, dk);
    }
    return out;
}

inline Form<Jet> delbar(const Form<Jet>& f) {
    Form<Jet> out(f.m);
    if (f.c.empty()) return out;
    for (int k = 0; k < f.m; ++k) {
        Form<Jet> dk(f.m);
        for (const auto& [key, v] : f.c) dk.c[key] = wirtinger_dbar(v, k);
        Form<Jet> dz = Form<Jet>::basis(f.m, 0, Mask(1) << k, ring_one(f.c.begin()->second));
        out += wedge(dz, dk);
    }
    return out;
}

inline Form<Jet> ext_d(const Form<Jet>& f) { return del(f) + delbar(f); }

// ---- covariant derivatives ------------------------------------------------

// nabla along the coordinate direction d/dz_k (hol) or d/dzbar_k (anti)
inline Form<Jet> nabla_coord(const Geom& G, const Form<Jet>& f, int k, bool hol) {
    Form<Jet> out(f.m);
    for (const auto& [key, v] : f.c)
        out.c[key] = hol ? wirtinger_d(v, k) : wirtinger_dbar(v, k);
    // connection terms: nabla_{dz_k} dz^i = -Gamma^i_{kj} dz^j (type preserved)
    if (hol) {
        for (int i = 0; i < f.m; ++i) {
            Form<Jet> ci = icontract_hol(i, f);
            if (ci.empty()) continue;
            std::vector<Jet> holc(static_cast<std::size_t>(f.m)), antic(static_cast<std::size_t>(f.m));
            for (int j = 0; j < f.m; ++j) {
                holc[static_cast<std::size_t>(j)] = -G.Gam(i, k, j);
                antic[static_cast<std::size_t>(j)] = ring_zero(G.Gam(i, k, j));
            }
            out += wedge(one_form(f.m, holc, antic), ci);
        }
    } else {
        for (int i = 0; i < f.m; ++i) {
            Form<Jet> ci = icontract_anti(i, f);
            if (ci.empty()) continue;
            std::vector<Jet> holc(static_cast<std::size_t>(f.m)), antic(static_cast<std::size_t>(f.m));
            for (int j = 0; j < f.m; ++j) {
                holc[static_cast<std::size_t>(j)] = ring_zero(G.Gam(i, k, j));
                antic[static_cast<std::size_t>(j)] = -G.Gam(i, k, j).conj();
            }
            out += wedge(one_form(f.m, holc, antic), ci);
        }
    }
    return out;
}

inline Form<Jet> nabla(const Geom& G, const Form<Jet>& f, const Vec<Jet>& X) {
    Form<Jet> out(f.m);
    for (int k = 0; k < f.m; ++k) {
        Form<Jet> nh = nabla_coord(G, f, k, true);
        nh *= X.h[k];
        out += nh;
        Form<Jet> na = nabla_coord(G, f, k, false);
        na *= X.a[k];
        out += na;
    }
    return out;
}

inline Vec<Jet> jet_vec_const(const Geom& G, const Vec<cplx>& v) {
    Vec<Jet> out(G.m);
    for (int k = 0; k < G.m; ++k) {
        out.h[k] = Jet::constant(G.spec, v.h[k]);
        out.a[k] = Jet::constant(G.spec, v.a[k]);
    }
    return out;
}

// covariant derivative of a vector field along a coordinate direction
inline Vec<Jet> nabla_vec_coord(const Geom& G, const Vec<Jet>& X, int k, bool hol) {
    Vec<Jet> out(G.m);
    for (int i = 0; i < G.m; ++i) {
        out.h[i] = hol ? wirtinger_d(X.h[i], k) : wirtinger_dbar(X.h[i], k);
        out.a[i] = hol ? wirtinger_d(X.a[i], k) : wirtinger_dbar(X.a[i], k);
        if (hol)
            for (int j = 0; j < G.m; ++j) out.h[i] += G.Gam(i, k, j) * X.h[j];
        else
            for (int j = 0; j < G.m; ++j) out.a[i] += G.Gam(i, k, j).conj() * X.a[j];
    }
    return out;
}

inline Vec<Jet> nabla_vec(const Geom& G, const Vec<Jet>& X, const Vec<Jet>& dir) {
    Vec<Jet> out(G.m);
    for (int i = 0; i < G.m; ++i) {
        out.h[i] = ring_zero(X.h[0]);
        out.a[i] = ring_zero(X.h[0]);
    }
    for (int k = 0; k < G.m; ++k) {
        Vec<Jet> nh = nabla_vec_coord(G, X, k, true);
        nh *= dir.h[k];
        out += nh;
        Vec<Jet> na = nabla_vec_coord(G, X, k, false);
        na *= dir.a[k];
        out += na;
    }
    return out;
}

// second covariant derivative nabla^2_{mu,nu} = nabla_mu nabla_nu - nabla_{nabla_mu nu}
// for coordinate directions mu=(k,kh), nu=(l,lh)
inline Form<Jet> nabla2_coord(const Geom& G, const Form<Jet>& f, int k, bool kh, int l,
                              bool lh) {
    Form<Jet> first = nabla_coord(G, nabla_coord(G, f, l, lh), k, kh);
    // nabla_{dz_k} dz_l = Gamma^i_{kl} dz_i; mixed-type connections vanish
    if (kh == lh) {
        for (int i = 0; i < G.m; ++i) {
            Jet gam = kh ? G.Gam(i, k, l) : G.Gam(i, k, l).conj();
            Form<Jet> corr = nabla_coord(G, f, i, kh);
            corr *= gam;
            first -= corr;
        }
    }
    return first;
}

// ---- codifferentials and Laplacians ----------------------------------------

inline Form<Jet> del_star(const Geom& G, const Form<Jet>& f) {
    Form<Jet> out(f.m);
    for (int k = 0; k < G.m; ++k)
        for (int l = 0; l < G.m; ++l) {
            Form<Jet> t = icontract_hol(k, nabla_coord(G, f, l, false));
            if (t.empty()) continue;
            t *= G.mt.gup(k, l);
            out -= t;
        }
    return out;
}

inline Form<Jet> delbar_star(const Geom& G, const Form<Jet>& f) {
    Form<Jet> out(f.m);
    for (int k = 0; k < G.m; ++k)
        for (int l = 0; l < G.m; ++l) {
            Form<Jet> t = icontract_anti(l, nabla_coord(G, f, k, true));
            if (t.empty()) continue;
            t *= G.mt.gup(k, l);
            out -= t;
        }
    return out;
}

inline Form<Jet> d_star(const Geom& G, const Form<Jet>& f) {
    return del_star(G, f) + delbar_star(G, f);
}

inline Form<Jet> hodge_laplacian(const Geom& G, const Form<Jet>& f) {
    return ext_d(d_star(G, f)) + d_star(G, ext_d(f));
}

inline Form<Jet> delbar_laplacian(const Geom& G, const Form<Jet>& f) {
    return delbar(delbar_star(G, f)) + delbar_star(G, delbar(f));
}

inline Form<Jet> rough_laplacian(const Geom& G, const Form<Jet>& f) {
    Form<Jet> out(f.m);
    for (int k = 0; k < G.m; ++k)
        for (int l = 0; l < G.m; ++l) {
            Form<Jet> t = nabla2_coord(G, f, k, true, l, false);
            t += nabla2_coord(G, f, l, false, k, true);
            t *= G.mt.gup(k, l);
            out -= t;
        }
    return out;
}

// (nabla^{0,1})^* nabla^{0,1}: outer (1,0)-trace against the inner
// (0,1)-derivative. The order is pinned by the Weitzenboeck formula
// Delta_delbar = (nabla^{01})* nabla^{01} - i [rho, .] on (0,q)-forms.
inline Form<Jet> rough_laplacian_01(const Geom& G, const Form<Jet>& f) {
    Form<Jet> out(f.m);
    for (int k = 0; k < G.m; ++k)
        for (int l = 0; l < G.m; ++l) {
            Form<Jet> t = nabla2_coord(G, f, k, true, l, false);
            t *= G.mt.gup(k, l);
            out -= t;
        }
    return out;
}

// ---- scalar calculus -------------------------------------------------------

inline Form<Jet> d_scalar(const Geom& G, const Jet& f) {
    std::vector<Jet> hol(static_cast<std::size_t>(G.m)), anti(static_cast<std::size_t>(G.m));
    for (int k = 0; k < G.m; ++k) {
        hol[static_cast<std::size_t>(k)] = wirtinger_d(f, k);
        anti[static_cast<std::size_t>(k)] = wirtinger_dbar(f, k);
    }
    return one_form(G.m, hol, anti);
}

inline Vec<Jet> gradient(const Geom& G, const Jet& f) { return G.mt.vsharp(d_scalar(G, f)); }

// Hessian components nabla^2 f (mu, nu) over coordinate directions,
// returned as the four m x m blocks (hol-hol, hol-anti, anti-hol, anti-anti)
struct Hessian {
    Mat<Jet> hh, ha, ah, aa;
};

inline Hessian hessian(const Geom& G, const Jet& f) {
    Hessian H{Mat<Jet>(G.m), Mat<Jet>(G.m), Mat<Jet>(G.m), Mat<Jet>(G.m)};
    for (int i = 0; i < G.m; ++i)
        for (int j = 0; j < G.m; ++j) {
            Jet hh = wirtinger_d(wirtinger_d(f, j), i);
            for (int k = 0; k < G.m; ++k) hh -= G.Gam(k, i, j) * wirtinger_d(f, k);
            H.hh(i, j) = hh;
            H.ha(i, j) = wirtinger_dbar(wirtinger_d(f, i), j);
            H.ah(i, j) = wirtinger_d(wirtinger_dbar(f, i), j);
            Jet aa = wirtinger_dbar(wirtinger_dbar(f, j), i);
            for (int k = 0; k < G.m; ++k) aa -= G.Gam(k, i, j).conj() * wirtinger_dbar(f, k);
            H.aa(i, j) = aa;
        }
    return H;
}

// ---- Lie derivatives -------------------------------------------------------

inline Form<Jet> lie_form(const Geom& G, const Form<Jet>& f, const Vec<Jet>& X) {
    return contract(X, ext_d(f)) + ext_d(contract(X, f));
}

// max |(L_X g)(mu, nu)| over coordinate directions (Killing residual)
inline double killing_residual(const Geom& G, const Vec<Jet>& X) {
    double r = 0.0;
    auto dir = [&](int k, bool hol) {
        Vec<Jet> v(G.m);
        for (int i = 0; i < G.m; ++i) {
            v.h[i] = ring_zero(X.h[0]);
            v.a[i] = ring_zero(X.h[0]);
        }
        (hol ? v.h : v.a)[static_cast<std::size_t>(k)] = ring_one(X.h[0]);
        return v;
    };
    for (int a = 0; a < 2 * G.m; ++a)
        for (int b = a; b < 2 * G.m; ++b) {
            Vec<Jet> va = dir(a / 2, a % 2 == 0), vb = dir(b / 2, b % 2 == 0);
            Jet term = G.mt.pair(nabla_vec(G, X, va), vb) + G.mt.pair(va, nabla_vec(G, X, vb));
            r = std::max(r, std::abs(term.value()));
        }
    return r;
}

// max |J(nabla_Y X) - nabla_{JY} X| over coordinate directions Y
// (vanishes iff X is real holomorphic)
inline double holomorphic_residual(const Geom& G, const Vec<Jet>& X) {
    double r = 0.0;
    for (int k = 0; k < G.m; ++k)
        for (int hol = 0; hol <= 1; ++hol) {
            Vec<Jet> y(G.m);
            for (int i = 0; i < G.m; ++i) {
                y.h[i] = ring_zero(X.h[0]);
                y.a[i] = ring_zero(X.h[0]);
            }
            (hol ? y.h : y.a)[static_cast<std::size_t>(k)] = ring_one(X.h[0]);
            Vec<Jet> lhs = nabla_vec(G, X, y).jay();
            Vec<Jet> rhs = nabla_vec(G, X, y.jay());
            for (int i = 0; i < G.m; ++i) {
                r = std::max(r, std::abs((lhs.h[i] - rhs.h[i]).value()));
                r = std::max(r, std::abs((lhs.a[i] - rhs.a[i]).value()));
            }
        }
    return r;
}

} // namespace kform
