#include "doctest.h"

#include "kform/calabi.hpp"

using namespace kform;

namespace {

struct ChartCase {
    CalabiChart cc;
    const char* label;
};

std::vector<ChartCase> chart_cases() {
    std::vector<ChartCase> out;
    out.push_back({build_calabi_chart(flat_base(3), MomentumProfile{3, 1.0, 0.0}, 1.0, 2.0),
                   "flat base"});
    out.push_back({build_calabi_chart(fubini_study_base(3, 1.0), MomentumProfile{3, 1.0, 1.0},
                                      1.0, 2.0),
                   "fs base"});
    return out;
}

} // namespace

TEST_CASE("closed-form z(t) inverts t(z) and solves dz/dt = X/2") {
    for (const auto& [cc, label] : chart_cases()) {
        CAPTURE(label);
        const JetSpec* s = JetSpec::get(1, 3);
        for (double z0 : {1.05, 1.5, 1.95}) {
            double t0 = cc.t_of_z(z0);
            Jet t = Jet::variable(s, 0, t0);
            Jet z = cc.z_of_t(t);
            CHECK(std::abs(z.value() - z0) < 1e-12);
            // dz/dt = X(z)/2
            double dz = z.coeffs()[1].real();
            CHECK(dz == doctest::Approx(0.5 * cc.profile.X(z0)).epsilon(1e-11));
        }
        // RK oracle reproduces the closed form across the interval
        double t1 = cc.t_of_z(1.1), t2 = cc.t_of_z(1.9);
        double z_rk = integrate_ode(
            [&](double, double z) { return 0.5 * cc.profile.X(z); }, t1, 1.1, t2);
        CHECK(std::abs(z_rk - 1.9) < 1e-9);
    }
}

TEST_CASE("calabi chart battery: moment map, profile, Lee form, Ricci split") {
    for (const auto& [cc, label] : chart_cases()) {
        CAPTURE(label);
        Rng rng(17);
        RicciPrediction pred{cc.m, cc.profile.C1};
        for (int pt = 0; pt < 6; ++pt) {
            Geom G = geom_at(cc.chart, cc.chart.sample(rng), 3);
            Jet zj = moment_map(cc, G);
            double z = zj.value().real();
            CHECK(z > cc.zlo - 1e-9);
            CHECK(z < cc.zhi + 1e-9);

            // Kahler condition
            Form<Jet> omega = G.mt.herm_form(G.mt.g);
            CHECK(value_form(ext_d(omega)).max_abs() < 1e-10);

            // K . omega = dz
            Vec<Jet> K = killing_field(cc, G);
            Form<Jet> ko = contract(K, omega);
            Form<Jet> dz = d_scalar(G, zj);
            CHECK(value_form(ko - dz).max_abs() < 1e-10);

            // g(K,K) = X(z)  (pins the u'' = X/2 normalisation)
            double X = G.mt.pair(K, K).value().real();
            CHECK(std::abs(X - cc.profile.X(z)) / cc.profile.X(z) < 1e-10);

            // K is Killing and holomorphic
            CHECK(killing_residual(G, K) < 1e-10);
            CHECK(holomorphic_residual(G, K) < 1e-10);

            // omega = omega^V + omega^H with omega^V from the ansatz, and
            // d omega^V = -theta ^ omega^H with theta = d ln z
            Form<Jet> oV = omega_vertical(cc, G);
            Form<Jet> oH = omega - oV;
            Form<Jet> theta = d_scalar(G, zj.log());
            Form<Jet> resid = ext_d(oV) + wedge(theta, oH);
            CHECK(value_form(resid).max_abs() < 1e-9);

            // theta(K) = 0
            CHECK(value_form(contract(K, theta)).max_abs() < 1e-11);

            // -d K^flat = X'(z) omega^V + (X/z) omega^H
            Form<Jet> kflat = G.mt.vflat(K);
            Form<Jet> lhs = -ext_d(kflat);
            Form<Jet> rhs = oV;
            rhs *= Jet::constant(G.spec, cc.profile.Xprime(z));
            Form<Jet> rhs2 = oH;
            rhs2 *= zj.pow(-1.0) * cc.profile.X_jet(zj);
            rhs += rhs2;
            CHECK(value_form(lhs - rhs).max_abs() / std::max(1.0, value_form(rhs).max_abs()) <
                  1e-9);

            // Ricci eigenvalues: exactly two, multiplicities (2, 2m-2),
            // matching the closed-form prediction
            auto [l1j, l2j] = ricci_eigenvalues(cc, G);
            double l1 = l1j.value().real(), l2 = l2j.value().real();
            CHECK(std::abs(l1 - pred.lambda1(z)) / std::max(1e-14, std::abs(pred.lambda1(z))) <
                  1e-8);
            CHECK(std::abs(l2 - pred.lambda2(z)) / std::max(1e-14, std::abs(pred.lambda2(z))) <
                  1e-8);
            CHECK(std::abs(G.curv0.scal.real() - pred.scal(z)) /
                      std::max(1e-14, std::abs(pred.scal(z))) < 1e-8);

            // Ric as endomorphism has eigenvalues l1 (vertical) and l2
            // (horizontal): check Ric(K) = l1 K and Ric(H) = l2 H
            SplitFrame sf = split_frame(cc, G);
            Vec<cplx> rk = G.curv0.ric_endo(G.mt0, sf.K);
            for (int i = 0; i < cc.m; ++i)
                CHECK(std::abs(rk.h[i] - l1 * sf.K.h[i]) <
                      1e-8 * std::max(1.0, std::abs(l1)));
            for (const auto& h : sf.H10) {
                Vec<cplx> rh = G.curv0.ric_endo(G.mt0, h);
                for (int i = 0; i < cc.m; ++i)
                    CHECK(std::abs(rh.h[i] - l2 * h.h[i]) < 1e-8 * std::max(1.0, std::abs(l2)));
            }

            // theta = d lambda_2 / (lambda_1 - lambda_2)
            if (std::abs(cc.profile.C1) > 0) {
                Form<Jet> dl2 = d_scalar(G, l2j);
                Form<Jet> th_pred = dl2;
                th_pred *= (l1j - l2j).pow(-1.0);
                CHECK(value_form(th_pred - theta).max_abs() /
                          std::max(1e-14, value_form(theta).max_abs()) < 1e-7);
            }

            // vertical distribution is totally geodesic: <nabla_V W, H> small
            Vec<Jet> JK(cc.m);
            JK = K.jay();
            for (const auto& Vv : {K, JK})
                for (const auto& Ww : {K, JK}) {
                    Vec<Jet> nw = nabla_vec(G, Ww, Vv);
                    for (const auto& h : sf.H10) {
                        Vec<Jet> hj = jet_vec_const(G, h);
                        cplx ip1 = G.mt.pair(nw, hj).value();
                        cplx ip2 = G.mt.pair(nw, hj.conj()).value();
                        CHECK(std::abs(ip1) + std::abs(ip2) < 1e-9 * std::max(1.0, X));
                    }
                }
        }
    }
}

TEST_CASE("constructor guards") {
    CHECK_THROWS(build_calabi_chart(flat_base(3), MomentumProfile{3, -1.0, 0.0}, 1.0, 2.0));
    CHECK_THROWS(build_calabi_chart(flat_base(3), MomentumProfile{3, 1.0, 1.0}, 1.0, 2.0));
    CHECK_THROWS(make_profile(3, 0.0, 0.0, 1.0, 2.0));
}

TEST_CASE("lift: eigenvalues, horizontality, delbar commutation") {
    auto cc = build_calabi_chart(fubini_study_base(3, 1.0), MomentumProfile{3, 1.0, 1.0}, 1.0,
                                 2.0);
    Rng rng(23);
    // gamma = a random (0,1) base form with polynomial coefficients
    BaseFormSpec gamma;
    gamma.p = 0;
    gamma.q = 1;
    gamma.coeff = [](const std::vector<Jet>& zeta, const std::vector<Jet>& zetab,
                     const Jet&) {
        Form<Jet> g(3);
        g.add_term(0, Mask(1) << 0, zeta[0] * zeta[1] + zetab[1]);
        g.add_term(0, Mask(1) << 1, zetab[0] * zetab[0] + 1.0);
        return g;
    };
    for (int kappa : {0, 1, -2}) {
        FormField gh = lift_form(cc, gamma, kappa);
        for (int pt = 0; pt < 3; ++pt) {
            Geom G = geom_at(cc.chart, cc.chart.sample(rng), 3);
            Form<Jet> F = gh(G);
            Vec<Jet> K = killing_field(cc, G);
            // L_K gammahat = -i kappa gammahat, L_JK gammahat = kappa gammahat
            Form<Jet> lk = lie_form(G, F, K);
            Form<Jet> expect = F;
            expect *= cplx(0, -static_cast<double>(kappa));
            CHECK(value_form(lk - expect).max_abs() < 1e-9 * (1.0 + F.max_abs()));
            Form<Jet> ljk = lie_form(G, F, K.jay());
            Form<Jet> expect2 = F;
            expect2 *= cplx(static_cast<double>(kappa));
            CHECK(value_form(ljk - expect2).max_abs() < 1e-9 * (1.0 + F.max_abs()));
            // horizontal: contraction with any vertical vector vanishes
            CHECK(value_form(contract(K, F)).max_abs() < 1e-12);
            CHECK(value_form(contract(K.jay(), F)).max_abs() < 1e-12);

            // delbar commutation: delbar(gammahat) = hat(delbar gamma)
            Form<Jet> lhs = delbar(F);
            BaseFormSpec dbg;
            dbg.p = 0;
            dbg.q = 2;
            dbg.coeff = [&gamma](const std::vector<Jet>& zeta, const std::vector<Jet>& zetab,
                                 const Jet& kn) {
                Form<Jet> g = gamma.coeff(zeta, zetab, kn);
                // plain delbar in the base coordinates
                Form<Jet> out(3);
                for (int k = 0; k < 2; ++k) {
                    Form<Jet> dk(3);
                    for (const auto& [key, v] : g.c) dk.c[key] = wirtinger_dbar(v, k);
                    Form<Jet> dzb = Form<Jet>::basis(3, 0, Mask(1) << k, ring_one(kn));
                    out += wedge(dzb, dk);
                }
                return out;
            };
            FormField dgh = lift_form(cc, dbg, kappa);
            Form<Jet> rhs = dgh(G);
            CHECK(value_form(lhs - rhs).max_abs() < 1e-9 * (1.0 + rhs.max_abs()));

            // twisted del rule: X del gammahat = 2 kappa dz ^ gammahat +
            //                    X hat(del gamma - kappa dK_N ^ gamma)
            Jet zj = moment_map(cc, G);
            Jet Xj = cc.profile.X_jet(zj);
            Form<Jet> lhs2 = del(F);
            lhs2 *= Xj;
            Form<Jet> t1 = wedge(d_scalar(G, zj).bidegree(1, 0), F);
            t1 *= cplx(2.0 * kappa);
            BaseFormSpec delg;
            delg.p = 1;
            delg.q = 1;
            delg.coeff = [&gamma, kappa](const std::vector<Jet>& zeta,
                                         const std::vector<Jet>& zetab, const Jet& kn) {
                Form<Jet> g = gamma.coeff(zeta, zetab, kn);
                Form<Jet> out(3);
                for (int k = 0; k < 2; ++k) {
                    Form<Jet> dk(3);
                    for (const auto& [key, v] : g.c) dk.c[key] = wirtinger_d(v, k);
                    Form<Jet> dz = Form<Jet>::basis(3, Mask(1) << k, 0, ring_one(kn));
                    out += wedge(dz, dk);
                }
                // - kappa dK_N ^ gamma
                std::vector<Jet> hol(3, ring_zero(kn)), anti(3, ring_zero(kn));
                for (int k = 0; k < 2; ++k) hol[static_cast<std::size_t>(k)] = wirtinger_d(kn, k);
                Form<Jet> dkn = one_form(3, hol, anti);
                Form<Jet> tw = wedge(dkn, g);
                tw *= cplx(-static_cast<double>(kappa));
                out += tw;
                return out;
            };
            FormField delgh = lift_form(cc, delg, kappa);
            Form<Jet> t2 = delgh(G);
            t2 *= Xj;
            CHECK(value_form(lhs2 - t1 - t2).max_abs() < 1e-8 * (1.0 + value_form(lhs2).max_abs()));
        }
    }
}

#include "kform/chern.hpp"
#include "kform/solutions.hpp"

TEST_CASE("Chern connection: splitting, comparison formulas, delbar splitting") {
    auto cc = build_calabi_chart(fubini_study_base(3, 1.0), MomentumProfile{3, 1.0, 1.0}, 1.0,
                                 2.0);
    SpecialPair pr = calabi_pair(cc);
    Rng rng(67);
    for (int pt = 0; pt < 3; ++pt) {
        Geom G = geom_at(cc.chart, cc.chart.sample(rng), 3);
        Form<Jet> tau = pr.tau(G); // in Lambda^{0,m-1} H
        int p = 2;
        Jet zj = moment_map(cc, G);
        Jet Xj = cc.profile.X_jet(zj);
        Vec<Jet> K = killing_field(cc, G);
        double scale = std::max(1.0, value_form(tau).max_abs());

        for (int a = 0; a < 2; ++a) {
            Vec<Jet> Xh = horizontal_lift(cc, G, a, true);
            Xh += horizontal_lift(cc, G, a, false); // real horizontal vector
            // nabla_X tau = chern_X tau - (i/z) K01 ^ (X . tau)
            Form<Jet> cn = chern_nabla(cc, G, tau, Xh);
            Form<Jet> corr = wedge(k01_covector(cc, G), contract(Xh, tau));
            corr *= zj.pow(-1.0);
            corr *= cplx(0, -1);
            Form<Jet> resid = nabla(G, tau, Xh) - cn - corr;
            CHECK(value_form(resid).max_abs() / scale < 1e-9);
            // the Chern derivative stays horizontal
            CHECK(value_form(contract(K, cn)).max_abs() / scale < 1e-9);
            CHECK(value_form(contract(K.jay(), cn)).max_abs() / scale < 1e-9);
        }
        // L_{K01} = nabla_{K01} + i p X/(2z) on Lambda^{0,p} H
        Vec<Jet> K01 = K.part01();
        Form<Jet> lie = lie_form(G, tau, K01);
        Form<Jet> t2 = tau;
        t2 *= (Xj / zj);
        t2 *= cplx(0, 0.5 * p);
        Form<Jet> resid = lie - nabla(G, tau, K01) - t2;
        CHECK(value_form(resid).max_abs() / scale < 1e-9);

        // delbar = delbar_H + (2/X) K01 ^ L_{K01} on Lambda^{0,*} H
        SplitFrame sf = split_frame(cc, G);
        Form<cplx> db = value_form(delbar(tau));
        Form<cplx> vert = db - horizontal_part_0q(sf, db);
        Form<cplx> rhs = wedge(value_form(k01_covector(cc, G)), value_form(lie));
        rhs *= cplx(2.0 / Xj.value().real());
        CHECK((vert - rhs).max_abs() / std::max(1.0, db.max_abs()) < 1e-9);
    }

    // an invariant horizontal field (L_K eigenvalue 0) reduces delbar to delbar_H
    {
        BaseFormSpec gamma;
        gamma.p = 0;
        gamma.q = 1;
        gamma.coeff = [](const std::vector<Jet>& zeta, const std::vector<Jet>& zetab,
                         const Jet&) {
            Form<Jet> g(3);
            g.add_term(0, Mask(1) << 0, zeta[1] + zetab[0] * zeta[0]);
            g.add_term(0, Mask(1) << 1, zetab[1]);
            return g;
        };
        FormField gh = lift_form(cc, gamma, 0);
        Rng rng2(71);
        Geom G = geom_at(cc.chart, cc.chart.sample(rng2), 3);
        SplitFrame sf = split_frame(cc, G);
        Form<Jet> F = gh(G);
        Form<cplx> db = value_form(delbar(F));
        Form<cplx> vert = db - horizontal_part_0q(sf, db);
        CHECK(vert.max_abs() / std::max(1.0, db.max_abs()) < 1e-10);
    }

    // flat base: the Chern derivative of a lifted constant base form along
    // horizontal lifts equals the lifted (vanishing) base derivative
    {
        auto cf = build_calabi_chart(flat_base(3), MomentumProfile{3, 1.0, 0.0}, 1.0, 2.0);
        Rng rng2(73);
        Geom G = geom_at(cf.chart, cf.chart.sample(rng2), 3);
        Form<Jet> gh = Form<Jet>::basis(3, 0, 0b001, Jet::constant(G.spec, 1.0));
        for (int a = 0; a < 2; ++a) {
            Vec<Jet> Xh = horizontal_lift(cf, G, a, true);
            Xh += horizontal_lift(cf, G, a, false);
            CHECK(value_form(chern_nabla(cf, G, gh, Xh)).max_abs() < 1e-10);
        }
    }
}
