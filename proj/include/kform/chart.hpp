#pragma once

// Kahler charts: a coordinate box with a metric supplied as jets, either
// derived from a scalar potential (g_{i jbar} = d^2 K / dz^i dzbar^j) or
// directly (the Calabi ansatz supplies g without an explicit potential).
// geom_at assembles everything the differential operators need at a point:
// metric, Christoffel symbols, curvature block, Ricci, scalar curvature.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kform/curvature.hpp"
#include "kform/exterior.hpp"
#include "kform/metric.hpp"
#include "kform/rng.hpp"

namespace kform {

struct KahlerChart {
    int m = 0;
    std::string name;

    // scalar potential on coordinate jets (z, zbar); empty for direct charts
    std::function<Jet(const std::vector<Jet>&, const std::vector<Jet>&)> potential;

    // direct metric supplier; used when potential is absent
    std::function<Mat<Jet>(const std::vector<Jet>&, const std::vector<Jet>&)> metric_direct;

    // draws a point (2m reals, layout x_1,y_1,...,x_m,y_m) inside the domain
    std::function<std::vector<double>(Rng&)> sample;
};

inline std::vector<Jet> coord_jets_hol(const std::vector<double>& xy, const JetSpec* spec) {
    int m = spec->nvars / 2;
    std::vector<Jet> z;
    z.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        Jet x = Jet::variable(spec, 2 * k, xy[static_cast<std::size_t>(2 * k)]);
        Jet y = Jet::variable(spec, 2 * k + 1, xy[static_cast<std::size_t>(2 * k + 1)]);
        z.push_back(x + cplx(0, 1) * y);
    }
    return z;
}

struct Geom {
    const KahlerChart* chart = nullptr;
    std::vector<double> xy;
    const JetSpec* spec = nullptr; // field/metric jet order
    int m = 0;

    std::vector<Jet> z, zb; // coordinate jets

    Metric<Jet> mt;
    std::vector<Jet> gamma; // Christoffel Gamma^k_{ij}, order-1 jets, [k][i][j]
    Curvature<Jet> curv;

    Metric<cplx> mt0; // value parts
    Curvature<cplx> curv0;

    const Jet& Gam(int k, int i, int j) const {
        return gamma[static_cast<std::size_t>((k * m + i) * m + j)];
    }
    Jet& Gam(int k, int i, int j) {
        return gamma[static_cast<std::size_t>((k * m + i) * m + j)];
    }

    // field-order frame (jets); rebuilds on each call
    std::vector<Vec<Jet>> jet_frame(int variant = 0) const { return mt.real_frame(variant); }
    std::vector<Vec<cplx>> frame(int variant = 0) const { return mt0.real_frame(variant); }
};

inline Metric<cplx> value_metric(const Metric<Jet>& mt) {
    Mat<cplx> g(mt.m), gi(mt.m);
    for (int i = 0; i < mt.m; ++i)
        for (int j = 0; j < mt.m; ++j) {
            g(i, j) = mt.g(i, j).value();
            gi(i, j) = mt.ginv(i, j).value();
        }
    Metric<cplx> out;
    out.m = mt.m;
    out.g = g;
    out.ginv = gi;
    return out;
}

inline Geom geom_at(const KahlerChart& chart, const std::vector<double>& xy, int order) {
    if (order < 2)
        throw std::invalid_argument("geom_at: insufficient jet order (need >= 2 for curvature)");
    Geom G;
    G.chart = &chart;
    G.xy = xy;
    G.m = chart.m;
    G.spec = JetSpec::get(2 * chart.m, order);
    G.z = coord_jets_hol(xy, G.spec);
    G.zb.reserve(G.z.size());
    for (const auto& zz : G.z) G.zb.push_back(zz.conj());

    Mat<Jet> g(chart.m);
    if (chart.potential) {
        const JetSpec* pspec = JetSpec::get(2 * chart.m, order + 2);
        auto z = coord_jets_hol(xy, pspec);
        std::vector<Jet> zb;
        zb.reserve(z.size());
        for (const auto& zz : z) zb.push_back(zz.conj());
        Jet K = chart.potential(z, zb);
        for (int i = 0; i < chart.m; ++i) {
            Jet di = wirtinger_d(K, i);
            for (int j = 0; j < chart.m; ++j) g(i, j) = wirtinger_dbar(di, j);
        }
    } else {
        // direct suppliers differentiate internally; feed higher-order jets
        const JetSpec* pspec = JetSpec::get(2 * chart.m, order + 2);
        auto z = coord_jets_hol(xy, pspec);
        std::vector<Jet> zb;
        zb.reserve(z.size());
        for (const auto& zz : z) zb.push_back(zz.conj());
        Mat<Jet> graw = chart.metric_direct(z, zb);
        for (int i = 0; i < chart.m; ++i)
            for (int j = 0; j < chart.m; ++j)
                g(i, j) = graw(i, j).spec()->order > order ? graw(i, j).truncated(G.spec)
                                                           : graw(i, j);
    }
    G.mt = Metric<Jet>::from_g(g);

    // positive definiteness at the point
    {
        Mat<cplx> gv(chart.m);
        for (int i = 0; i < chart.m; ++i)
            for (int j = 0; j < chart.m; ++j) gv(i, j) = G.mt.g(i, j).value();
        // leading principal minors of the Hermitian matrix must be positive
        for (int k = 1; k <= chart.m; ++k) {
            Mat<cplx> sub(k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub(i, j) = gv(i, j);
            if (mat_det(sub).real() <= 0.0) {
                std::string pt;
                for (double v : xy) pt += (pt.empty() ? "(" : ", ") + std::to_string(v);
                throw std::domain_error("chart '" + chart.name +
                                        "': metric not positive definite at " + pt + ")");
            }
        }
    }

    // Christoffels Gamma^k_{ij} = g^{k lbar} d_i g_{j lbar}
    G.gamma.assign(static_cast<std::size_t>(chart.m * chart.m * chart.m),
                   Jet::constant(JetSpec::get(2 * chart.m, order - 1), 0.0));
    for (int i = 0; i < chart.m; ++i)
        for (int j = 0; j < chart.m; ++j) {
            std::vector<Jet> dg;
            dg.reserve(static_cast<std::size_t>(chart.m));
            for (int l = 0; l < chart.m; ++l) dg.push_back(wirtinger_d(G.mt.g(j, l), i));
            for (int k = 0; k < chart.m; ++k) {
                Jet acc = Jet::constant(JetSpec::get(2 * chart.m, order - 1), 0.0);
                for (int l = 0; l < chart.m; ++l) acc += G.mt.gup(k, l) * dg[static_cast<std::size_t>(l)];
                G.Gam(k, i, j) = acc;
            }
        }

    // curvature block B(k,l,j,q) = R(dz_k, dzbar_l, dz_j, dzbar_q) =
    //   d_k d_lbar g_{j qbar} - g^{b sbar} (d_k g_{j sbar})(d_lbar g_{b qbar})
    G.curv.m = chart.m;
    const JetSpec* cspec = JetSpec::get(2 * chart.m, order - 2);
    const int mm = chart.m;
    auto idx3 = [mm](int i, int j, int k) {
        return static_cast<std::size_t>((i * mm + j) * mm + k);
    };
    std::vector<Jet> dg(static_cast<std::size_t>(mm * mm * mm));  // d_k g(i,j)
    std::vector<Jet> dgb(static_cast<std::size_t>(mm * mm * mm)); // d_lbar g(i,j)
    for (int i = 0; i < mm; ++i)
        for (int j = 0; j < mm; ++j)
            for (int k = 0; k < mm; ++k) {
                dg[idx3(i, j, k)] = wirtinger_d(G.mt.g(i, j), k);
                dgb[idx3(i, j, k)] = wirtinger_dbar(G.mt.g(i, j), k);
            }
    G.curv.B.assign(static_cast<std::size_t>(mm) * mm * mm * mm, Jet::constant(cspec, 0.0));
    for (int j = 0; j < mm; ++j)
        for (int q = 0; q < mm; ++q)
            for (int k = 0; k < mm; ++k)
                for (int l = 0; l < mm; ++l) {
                    Jet t = wirtinger_dbar(dg[idx3(j, q, k)], l);
                    for (int b = 0; b < mm; ++b)
                        for (int s = 0; s < mm; ++s)
                            t -= G.mt.gup(b, s) * dg[idx3(j, s, k)] * dgb[idx3(b, q, l)];
                    G.curv.b(k, l, j, q) = t;
                }

    // Ricci from the potential-free formula -d dbar log det g
    Jet logdet = mat_det(G.mt.g).log();
    G.curv.ric = Mat<Jet>(chart.m);
    for (int k = 0; k < chart.m; ++k) {
        Jet dk = wirtinger_d(logdet, k);
        for (int l = 0; l < chart.m; ++l) G.curv.ric(k, l) = -wirtinger_dbar(dk, l);
    }
    Jet scal = Jet::constant(cspec, 0.0);
    for (int k = 0; k < chart.m; ++k)
        for (int l = 0; l < chart.m; ++l) scal += G.mt.gup(k, l) * G.curv.ric(k, l);
    G.curv.scal = scal * cplx(2.0);

    G.mt0 = value_metric(G.mt);
    G.curv0.m = chart.m;
    G.curv0.B.resize(G.curv.B.size());
    for (std::size_t i = 0; i < G.curv.B.size(); ++i) G.curv0.B[i] = G.curv.B[i].value();
    G.curv0.ric = Mat<cplx>(chart.m);
    for (int k = 0; k < chart.m; ++k)
        for (int l = 0; l < chart.m; ++l) G.curv0.ric(k, l) = G.curv.ric(k, l).value();
    G.curv0.scal = G.curv.scal.value();
    return G;
}

// ---- chart library -------------------------------------------------------

inline KahlerChart flat_chart(int m, double inner_exclusion = 0.0) {
    KahlerChart c;
    c.m = m;
    c.name = "flat";
    c.potential = [](const std::vector<Jet>& z, const std::vector<Jet>& zb) {
        Jet acc = z[0] * zb[0];
        for (std::size_t k = 1; k < z.size(); ++k) acc += z[k] * zb[k];
        return acc * 0.5;
    };
    c.sample = [m, inner_exclusion](Rng& rng) {
        while (true) {
            std::vector<double> xy(static_cast<std::size_t>(2 * m));
            double r2 = 0.0;
            for (auto& v : xy) {
                v = rng.uniform(-1.0, 1.0);
                r2 += v * v;
            }
            if (std::sqrt(r2) > inner_exclusion) return xy;
        }
    };
    return c;
}

// Fubini-Study on the affine chart of CP^m with potential c log(1 + |z|^2);
// Einstein with Ric = ((m+1)/c) g.
inline KahlerChart fubini_study_chart(int m, double c_scale) {
    KahlerChart c;
    c.m = m;
    c.name = "fs";
    c.potential = [c_scale](const std::vector<Jet>& z, const std::vector<Jet>& zb) {
        Jet acc = z[0] * zb[0];
        for (std::size_t k = 1; k < z.size(); ++k) acc += z[k] * zb[k];
        return (acc + 1.0).log() * c_scale;
    };
    c.sample = [m](Rng& rng) {
        std::vector<double> xy(static_cast<std::size_t>(2 * m));
        for (auto& v : xy) v = rng.uniform(-0.8, 0.8);
        return xy;
    };
    return c;
}

} // namespace kform
