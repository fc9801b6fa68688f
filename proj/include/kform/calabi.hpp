#pragma once

// Calabi-ansatz charts over a Kahler-Einstein base: the total space of a
// line bundle in a single trivializing chart with coordinates
// (zeta^1..zeta^{m-1}, w), fibre log-norm t = log|w|^2 + K_N(zeta), moment
// map z = u'(t) and momentum profile X(z) = z(C1 z^m + 2k/m). The metric is
//   g_{i jbar} = u''(t) t_i t_jbar + u'(t) t_{i jbar},   u'' = X(z)/2,
// with z(t) in closed form (the profile ODE dz/dt = X/2 integrates
// explicitly), so no numerically built potential is needed.

#include "kform/chart.hpp"
#include "kform/diffops.hpp"
#include "kform/fields.hpp"
#include "kform/profiles.hpp"

namespace kform {

struct BaseGeometry {
    enum class Kind { Flat, FubiniStudy };
    Kind kind = Kind::Flat;
    int dim = 2;      // complex dimension m-1
    double k = 0.0;   // Einstein constant: rho_N = k omega_N
    double c = 0.0;   // FS potential scale c log(1+|zeta|^2); c = m/k

    // potential on jet coordinates of the base
    Jet potential(const std::vector<Jet>& zeta, const std::vector<Jet>& zetab) const {
        Jet acc = zeta[0] * zetab[0];
        for (std::size_t a = 1; a < zeta.size(); ++a) acc += zeta[a] * zetab[a];
        if (kind == Kind::Flat) return acc * 0.5;
        return (acc + 1.0).log() * c;
    }

    KahlerChart chart() const {
        if (kind == Kind::Flat) return flat_chart(dim);
        return fubini_study_chart(dim, c);
    }
};

inline BaseGeometry flat_base(int m) {
    BaseGeometry b;
    b.kind = BaseGeometry::Kind::Flat;
    b.dim = m - 1;
    b.k = 0.0;
    return b;
}

// scaled Fubini-Study base with rho_N = k omega_N (so c = m/k)
inline BaseGeometry fubini_study_base(int m, double k) {
    BaseGeometry b;
    b.kind = BaseGeometry::Kind::FubiniStudy;
    b.dim = m - 1;
    b.k = k;
    b.c = m / k;
    return b;
}

struct CalabiChart {
    int m = 3;
    BaseGeometry base;
    MomentumProfile profile;
    double lambda = 1.0; // fibre scale in s = lambda e^{k t}
    double zlo = 1.0, zhi = 2.0;
    double z_ref = 1.0; // anchors the k = 0 branch: t(z_ref) = 0
    KahlerChart chart;  // the chart with the direct metric supplier

    int w_index() const { return m - 1; }

    // closed-form moment map z(t)
    double t_of_z(double z) const {
        if (profile.k != 0.0) {
            double s = std::pow(z, m + 1) / profile.X(z);
            return std::log(s / lambda) / profile.k;
        }
        return 2.0 / (m * profile.C1) *
               (std::pow(z_ref, -m) - std::pow(z, -m));
    }
    Jet z_of_t(const Jet& t) const {
        if (profile.k != 0.0) {
            Jet s = (t * profile.k).exp() * lambda;
            Jet num = s * (2.0 * profile.k / m);
            Jet den = -s * profile.C1 + 1.0;
            return (num / den).pow(1.0 / m);
        }
        Jet inner = -t * (m * profile.C1 / 2.0) + std::pow(z_ref, -m);
        return inner.pow(-1.0 / m);
    }

    // fibre log-norm as a jet of the chart coordinates
    Jet t_jet(const std::vector<Jet>& z, const std::vector<Jet>& zb) const {
        std::vector<Jet> zeta(z.begin(), z.end() - 1), zetab(zb.begin(), zb.end() - 1);
        Jet t = (z.back() * zb.back()).log();
        return t + base.potential(zeta, zetab);
    }
};

inline CalabiChart build_calabi_chart(const BaseGeometry& base, const MomentumProfile& profile,
                                      double zlo, double zhi, double lambda = 1.0) {
    if (base.dim != profile.m - 1)
        throw std::invalid_argument("calabi chart: base dimension does not match profile");
    if (base.k != profile.k)
        throw std::invalid_argument("calabi chart: base Einstein constant must equal profile k");
    if (!make_profile(profile.m, profile.C1, profile.k, zlo, zhi).positive_on(zlo, zhi))
        throw std::invalid_argument("calabi chart: profile not positive on interval");

    CalabiChart cc;
    cc.m = profile.m;
    cc.base = base;
    cc.profile = profile;
    cc.lambda = lambda;
    cc.zlo = zlo;
    cc.zhi = zhi;
    cc.z_ref = zlo;

    KahlerChart kc;
    kc.m = profile.m;
    kc.name = (base.kind == BaseGeometry::Kind::Flat) ? "calabi-flat" : "calabi-fs";
    CalabiChart snapshot = cc; // copy for the closures (kc set below)
    kc.metric_direct = [snapshot](const std::vector<Jet>& z,
                                  const std::vector<Jet>& zb) -> Mat<Jet> {
        int mm = snapshot.m;
        Jet t = snapshot.t_jet(z, zb);
        Jet zz = snapshot.z_of_t(t);
        Jet upp = snapshot.profile.X_jet(zz) * 0.5;
        Mat<Jet> g(mm);
        std::vector<Jet> ti, tj;
        for (int i = 0; i < mm; ++i) {
            ti.push_back(wirtinger_d(t, i));
            tj.push_back(wirtinger_dbar(t, i));
        }
        for (int i = 0; i < mm; ++i)
            for (int j = 0; j < mm; ++j)
                g(i, j) = upp * ti[static_cast<std::size_t>(i)] * tj[static_cast<std::size_t>(j)] +
                          zz * wirtinger_dbar(ti[static_cast<std::size_t>(i)], j);
        return g;
    };
    // margins: z strictly inside [zlo, zhi], |zeta| moderate
    double tlo = cc.t_of_z(zlo + 0.05 * (zhi - zlo));
    double thi = cc.t_of_z(zhi - 0.05 * (zhi - zlo));
    BaseGeometry bg = base;
    int mm = cc.m;
    kc.sample = [bg, mm, tlo, thi](Rng& rng) {
        std::vector<double> xy(static_cast<std::size_t>(2 * mm));
        double kn = 0.0;
        for (int a = 0; a < mm - 1; ++a) {
            double xr = rng.uniform(-0.45, 0.45), yr = rng.uniform(-0.45, 0.45);
            xy[static_cast<std::size_t>(2 * a)] = xr;
            xy[static_cast<std::size_t>(2 * a + 1)] = yr;
            kn += xr * xr + yr * yr;
        }
        if (bg.kind == BaseGeometry::Kind::Flat)
            kn *= 0.5;
        else
            kn = bg.c * std::log(1.0 + kn);
        double t = rng.uniform(tlo, thi);
        double r = std::exp(0.5 * (t - kn));
        double th = rng.uniform(0.0, 6.283185307179586);
        xy[static_cast<std::size_t>(2 * mm - 2)] = r * std::cos(th);
        xy[static_cast<std::size_t>(2 * mm - 1)] = r * std::sin(th);
        return xy;
    };
    cc.chart = kc;
    return cc;
}

// ---- fields attached to the chart -----------------------------------------

// moment map z as a scalar jet
inline Jet moment_map(const CalabiChart& cc, const Geom& G) {
    return cc.z_of_t(cc.t_jet(G.z, G.zb));
}

// canonical Killing field K = -i w d/dw + i wbar d/dwbar (K . omega = dz)
inline Vec<Jet> killing_field(const CalabiChart& cc, const Geom& G) {
    Vec<Jet> K(cc.m);
    for (int i = 0; i < cc.m; ++i) {
        K.h[i] = Jet::constant(G.spec, 0.0);
        K.a[i] = Jet::constant(G.spec, 0.0);
    }
    K.h[cc.w_index()] = G.z[static_cast<std::size_t>(cc.w_index())] * cplx(0, -1);
    K.a[cc.w_index()] = G.zb[static_cast<std::size_t>(cc.w_index())] * cplx(0, 1);
    return K;
}

// vertical Kahler form omega^V = i u'' dt ^ dbar t (a (1,1) jet form)
inline Form<Jet> omega_vertical(const CalabiChart& cc, const Geom& G) {
    Jet t = cc.t_jet(G.z, G.zb);
    Jet zz = cc.z_of_t(t);
    Jet upp = cc.profile.X_jet(zz) * 0.5;
    std::vector<Jet> hol(static_cast<std::size_t>(cc.m)), anti(static_cast<std::size_t>(cc.m));
    std::vector<Jet> zero(static_cast<std::size_t>(cc.m), Jet::constant(t.spec(), 0.0));
    for (int i = 0; i < cc.m; ++i) {
        hol[static_cast<std::size_t>(i)] = wirtinger_d(t, i);
        anti[static_cast<std::size_t>(i)] = wirtinger_dbar(t, i);
    }
    Form<Jet> dt10 = one_form(cc.m, hol, zero);
    Form<Jet> dt01 = one_form(cc.m, zero, anti);
    Form<Jet> out = wedge(dt10, dt01);
    out *= cplx(0, 1);
    out *= upp;
    return out;
}

// Ricci eigenvalue fields: lambda1 on the vertical part, lambda2 horizontal
inline std::pair<Jet, Jet> ricci_eigenvalues(const CalabiChart& cc, const Geom& G) {
    Vec<Jet> K = killing_field(cc, G);
    Jet X = G.mt.pair(K, K);
    Jet rKK = ring_zero(X);
    for (int k = 0; k < cc.m; ++k)
        for (int l = 0; l < cc.m; ++l) rKK += G.curv.ric(k, l) * (K.h[k] * K.a[l] * 2.0);
    Jet lam1 = (rKK / X).real();
    Jet lam2 = (G.curv.scal * 0.5 - lam1) / (cc.m - 1.0);
    return {lam1, lam2.real()};
}

// ---- split frame -----------------------------------------------------------

struct SplitFrame {
    int m = 0;
    Vec<cplx> K, JK;              // vertical real fields (values at the point)
    Vec<cplx> U;                  // unit (1,0) vertical
    std::vector<Vec<cplx>> H10;   // unitary basis of horizontal (1,0)
    Form<cplx> phiU;              // (1,0)-coframe dual of U
    std::vector<Form<cplx>> phiH; // duals of H10
    Form<cplx> omegaV, omegaH;
    double z = 0.0, X = 0.0;
    Form<cplx> theta; // Lee form d ln z (value level)
};

inline Form<cplx> dual_coframe(const Metric<cplx>& mt, const Vec<cplx>& f) {
    // (1,0)-covector phi with phi(f) = 1 for a unit vector f
    Form<cplx> fl = mt.vflat(f.conj());
    Form<cplx> out(mt.m);
    for (int k = 0; k < mt.m; ++k) {
        auto it = fl.c.find(Form<cplx>::key(Mask(1) << k, 0));
        if (it != fl.c.end()) out.add_term(Mask(1) << k, 0, 2.0 * it->second);
    }
    return out;
}

inline SplitFrame split_frame(const CalabiChart& cc, const Geom& G) {
    SplitFrame sf;
    sf.m = cc.m;
    Vec<Jet> Kj = killing_field(cc, G);
    Jet Xj = G.mt.pair(Kj, Kj);
    sf.X = Xj.value().real();
    if (sf.X < 1e-14) throw std::domain_error("split frame: K vanishes at the point");
    Jet zj = moment_map(cc, G);
    sf.z = zj.value().real();

    Vec<cplx> K(cc.m);
    for (int i = 0; i < cc.m; ++i) {
        K.h[i] = Kj.h[i].value();
        K.a[i] = Kj.a[i].value();
    }
    sf.K = K;
    sf.JK = K.jay();
    // unit (1,0) vertical vector
    Vec<cplx> K10 = K.part10();
    Vec<cplx> U = K10;
    U *= cplx(1.0 / std::sqrt(sf.X), 0.0);
    // h(U,U) = |K10|^2_h / X = 1
    sf.U = U;
    auto uf = G.mt0.unitary_frame({U});
    sf.H10.assign(uf.begin() + 1, uf.end());
    sf.phiU = dual_coframe(G.mt0, sf.U);
    for (const auto& h : sf.H10) sf.phiH.push_back(dual_coframe(G.mt0, h));
    sf.omegaV = wedge(sf.phiU, sf.phiU.conj());
    sf.omegaV *= cplx(0, 0.5);
    sf.omegaH = G.mt0.herm_form(G.mt0.g) - sf.omegaV;
    // theta = d ln z at value level
    Jet lnz = zj.log();
    Form<Jet> th = d_scalar(G, lnz);
    sf.theta = value_form(th);
    return sf;
}

// decomposition of a primitive (1,m-1)-form along
//   (omega^V - omega^H) ^ L^{0,m-2}H  (+)  L^{1,0}V ^ L^{0,m-1}H  (+)
//   L^{0,1}V ^ L^{1,m-2}_0 H
struct SplitComponents {
    Form<cplx> psi1, psi2, psi3; // projections onto the three summands
    Form<cplx> rest;             // whatever is left (should vanish for primitive input)
};

inline SplitComponents split_components(const Metric<cplx>& mt, const SplitFrame& sf,
                                        const Form<cplx>& psi) {
    int m = sf.m;
    // spanning sets
    std::vector<Form<cplx>> s1, s2, s3;
    // antiholomorphic horizontal basis forms
    std::vector<Form<cplx>> phiHbar;
    for (const auto& p : sf.phiH) phiHbar.push_back(p.conj());
    // wedge of all phiHbar except index a
    auto wedge_except = [&](int skip) {
        Form<cplx> acc = Form<cplx>::scalar(m, 1.0);
        for (int a = 0; a < m - 1; ++a) {
            if (a == skip) continue;
            acc = wedge(acc, phiHbar[static_cast<std::size_t>(a)]);
        }
        return acc;
    };
    Form<cplx> allHbar = Form<cplx>::scalar(m, 1.0);
    for (int a = 0; a < m - 1; ++a) allHbar = wedge(allHbar, phiHbar[static_cast<std::size_t>(a)]);

    Form<cplx> vmh = sf.omegaV - sf.omegaH;
    for (int a = 0; a < m - 1; ++a) s1.push_back(wedge(vmh, wedge_except(a)));
    s2.push_back(wedge(sf.phiU, allHbar));
    Form<cplx> phiUbar = sf.phiU.conj();
    for (int b = 0; b < m - 1; ++b)
        for (int a = 0; a < m - 1; ++a) {
            Form<cplx> hb = wedge(sf.phiH[static_cast<std::size_t>(b)], wedge_except(a));
            s3.push_back(wedge(phiUbar, hb));
        }
    // restrict s3 to primitive horizontal combinations by projecting out
    // L_omega traces: subtract the projection onto multiples handled by s1/s2
    // (orthogonal projection below takes care of overlaps; the three spaces
    // are mutually orthogonal for primitive psi)
    auto project = [&](const std::vector<Form<cplx>>& span, const Form<cplx>& v) {
        // Gram-Schmidt the span, then project
        std::vector<Form<cplx>> ortho;
        for (auto s : span) {
            for (const auto& e : ortho) {
                cplx c = mt.inner(s, e);
                Form<cplx> sub = e;
                sub *= c;
                s -= sub;
            }
            double n2 = kvalue(mt.inner(s, s)).real();
            if (n2 > 1e-18) {
                s *= cplx(1.0 / std::sqrt(n2));
                ortho.push_back(s);
            }
        }
        Form<cplx> out(v.m);
        for (const auto& e : ortho) {
            cplx c = mt.inner(v, e);
            Form<cplx> t = e;
            t *= c;
            out += t;
        }
        return out;
    };
    SplitComponents out;
    out.psi1 = project(s1, psi);
    out.psi2 = project(s2, psi);
    out.psi3 = project(s3, psi);
    out.rest = psi - out.psi1 - out.psi2 - out.psi3;
    return out;
}

// ---- lifts -----------------------------------------------------------------

// Lift of a local base (p,q)-form with polynomial-in-(zeta, zetabar, K_N)
// coefficients to a horizontal form on M: hat(gamma; kappa) = w^kappa pi* gamma.
// The eigenvalues are L_K gammahat = -i kappa gammahat, L_JK gammahat = kappa gammahat.
struct BaseFormSpec {
    int p = 0, q = 0;
    // coefficient function of the base jets; receives (zeta, zetabar, K_N jet)
    std::function<Form<Jet>(const std::vector<Jet>&, const std::vector<Jet>&, const Jet&)>
        coeff;
};

inline FormField lift_form(const CalabiChart& cc, const BaseFormSpec& gamma, int kappa) {
    FormField ff;
    ff.p = gamma.p;
    ff.q = gamma.q;
    CalabiChart chart = cc;
    ff.eval = [chart, gamma, kappa](const Geom& G) {
        std::vector<Jet> zeta(G.z.begin(), G.z.end() - 1);
        std::vector<Jet> zetab(G.zb.begin(), G.zb.end() - 1);
        Jet KN = chart.base.potential(zeta, zetab);
        // base form: indices of the base embed as the first m-1 slots of M
        Form<Jet> g = gamma.coeff(zeta, zetab, KN);
        Jet wfac = Jet::constant(G.spec, 1.0);
        const Jet& w = G.z[static_cast<std::size_t>(chart.w_index())];
        for (int t = 0; t < std::abs(kappa); ++t)
            wfac = (kappa > 0) ? wfac * w : wfac / w;
        Form<Jet> out = g;
        out *= wfac;
        return out;
    };
    return ff;
}

} // namespace kform
