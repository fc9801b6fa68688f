#pragma once

// Check suites shared by the command-line tool and the acceptance tests:
// the brute-force exterior-algebra oracle comparison, the pointwise type
// identities, the Kahler identities and the Weitzenboeck formulas on
// seeded random fields over a chart.

#include "kform/battery.hpp"
#include "kform/chern.hpp"
#include "kform/testing/alt_oracle.hpp"

namespace kform {

// grind wedge / contraction / L / Lambda against the permutation-sum oracle
inline std::vector<CheckReport> exterior_oracle_suite(std::uint64_t seed, int ncases = 500,
                                                      double tol = 1e-12) {
    using namespace kform_test;
    Stopwatch sw;
    std::vector<CheckReport> reps;
    reps.push_back(make_report("oracle.wedge", "wedge vs permutation-sum oracle", tol, seed));
    reps.push_back(make_report("oracle.contraction", "contraction vs oracle", tol, seed));
    reps.push_back(make_report("oracle.inner", "inner product vs oracle pairing", tol, seed));
    reps.push_back(make_report("oracle.adjoint", "<L a, b> = <a, Lambda b>", tol, seed));
    Rng rng(seed);
    for (int cs = 0; cs < ncases; ++cs) {
        int m = rng.integer(2, 4);
        auto mt = Metric<cplx>::from_g(rng.herm_pd(m));
        int p1 = rng.integer(0, 2), q1 = rng.integer(0, 2);
        int p2 = rng.integer(0, 1), q2 = rng.integer(0, 1);
        if (p1 + p2 > m || q1 + q2 > m || p1 + q1 + p2 + q2 > 5) {
            p2 = q2 = 0;
        }
        Form<cplx> a = rng.form(m, p1, q1), b = rng.form(m, p2, q2);
        Form<cplx> w = wedge(a, b);
        AltTensor ow = alt_wedge(to_alt(a, p1 + q1), to_alt(b, p2 + q2));
        reps[0].absorb(alt_max_diff(to_alt(w, p1 + q1 + p2 + q2), ow), 1.0);

        if (p1 + q1 > 0) {
            Vec<cplx> X = rng.complex_vector(m);
            Form<cplx> c = contract(X, a);
            AltTensor oc = alt_contract(X, to_alt(a, p1 + q1));
            reps[1].absorb(alt_max_diff(to_alt(c, p1 + q1 - 1), oc), 1.0);
        }
        Form<cplx> a2 = rng.form(m, p1, q1);
        reps[2].absorb(alt_inner_diff_vs(mt, a, a2, p1 + q1, mt.inner(a, a2)), 1.0);
        if (p1 < m && q1 < m) {
            Form<cplx> b2 = rng.form(m, p1 + 1, q1 + 1);
            cplx lhs = mt.inner(l_omega(mt, a), b2);
            cplx rhs = mt.inner(a, l_omega_star(mt, b2));
            reps[3].absorb(std::abs(lhs - rhs), std::max(1.0, std::abs(lhs)));
        }
    }
    for (auto& r : reps) {
        r.ms = sw.ms() / static_cast<double>(reps.size());
        r.finalize();
    }
    return reps;
}

// a split frame for an arbitrary J-invariant vertical plane spanned by a
// (1,0)-vector: used by the Lemma prim identity on random block structures
inline SplitFrame synthetic_split_frame(const Metric<cplx>& mt, const Vec<cplx>& u10_raw) {
    SplitFrame sf;
    sf.m = mt.m;
    Vec<cplx> U = u10_raw.part10();
    cplx n2 = mt.herm(U, U);
    U *= cplx(1.0 / std::sqrt(n2.real()));
    sf.U = U;
    auto uf = mt.unitary_frame({U});
    sf.H10.assign(uf.begin() + 1, uf.end());
    sf.phiU = dual_coframe(mt, sf.U);
    for (const auto& h : sf.H10) sf.phiH.push_back(dual_coframe(mt, h));
    sf.omegaV = wedge(sf.phiU, sf.phiU.conj());
    sf.omegaV *= cplx(0, 0.5);
    sf.omegaH = mt.herm_form(mt.g) - sf.omegaV;
    return sf;
}

// pointwise type identities at machine precision (acceptance tolerance 1e-12)
inline std::vector<CheckReport> type_identity_suite(std::uint64_t seed, int ncases = 100,
                                                    double tol = 1e-12) {
    Stopwatch sw;
    std::vector<CheckReport> reps;
    reps.push_back(make_report("type.omega_commutator", "[omega, phi] = i(q-p) phi", tol, seed));
    reps.push_back(make_report("type.ls", "ls: [Lambda, L_rho] = scal/2 - Ric", tol, seed));
    reps.push_back(make_report("type.cc1", "cc1: [R, L_omega] = -2 L_rho", tol, seed));
    reps.push_back(make_report("type.ric_a", "ric-a: 2(Ric X . phi)_{0,m-1} = X10 . (Ric phi + i[rho,phi])",
                               tol, seed));
    reps.push_back(make_report("type.prim_i", "prim(i): Ric(psi) on the spliLa splitting", tol, seed));
    reps.push_back(make_report("type.prim_ii", "prim(ii): [rho, psi] on the spliLa splitting", tol,
                               seed));
    reps.push_back(make_report("type.id_c1", "id-c1: R(X^b ^ phi) = 2 sum R2(e_i,X) ^ (e_i . phi)",
                               tol, seed));
    Rng rng(seed);

    // a fixed curved geometry for the curvature-operator identities
    auto fs = fubini_study_chart(3, 1.4);

    for (int cs = 0; cs < ncases; ++cs) {
        int m = rng.integer(3, 4);
        auto mt = Metric<cplx>::from_g(rng.herm_pd(m));
        auto frame = mt.real_frame();
        // [omega, phi]
        {
            int p = rng.integer(0, m), q = rng.integer(0, m);
            Form<cplx> phi = rng.form(m, p, q);
            Form<cplx> lhs = commutator(mt, frame, mt.omega(), phi);
            Form<cplx> rhs = phi;
            rhs *= cplx(0, static_cast<double>(q - p));
            reps[0].absorb((lhs - rhs).max_abs(), std::max(1.0, phi.max_abs()));
        }
        // (ls)
        {
            Curvature<cplx> cv;
            cv.m = m;
            cv.ric = rng.herm(m);
            cplx scal = 0.0;
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) scal += mt.gup(k, l) * cv.ric(k, l);
            scal *= 2.0;
            Form<cplx> rho = mt.herm_form(cv.ric);
            int p = rng.integer(0, m - 1), q = rng.integer(0, m - 1);
            Form<cplx> phi = rng.form(m, p, q);
            Form<cplx> lhs =
                l_omega_star(mt, wedge(rho, phi)) - wedge(rho, l_omega_star(mt, phi));
            Form<cplx> rhs = phi;
            rhs *= scal * 0.5;
            rhs -= ric_act(cv, frame, phi);
            reps[1].absorb((lhs - rhs).max_abs(), std::max(1.0, lhs.max_abs() + phi.max_abs()));
        }
        // Lemma ric-a on a primitive (1, m-1)-form
        {
            Curvature<cplx> cv;
            cv.m = m;
            cv.ric = rng.herm(m);
            cv.scal = 0.0;
            Form<cplx> phi = primitive_part(mt, rng.form(m, 1, m - 1));
            Vec<cplx> X = rng.real_vector(m);
            Form<cplx> lhs = contract(cv.ric_endo(mt, X), phi).bidegree(0, m - 1);
            lhs *= cplx(2.0);
            Form<cplx> inside = ric_act(cv, frame, phi);
            Form<cplx> com = commutator(mt, frame, mt.herm_form(cv.ric), phi);
            com *= cplx(0, 1);
            inside += com;
            Form<cplx> rhs = contract(X.part10(), inside);
            reps[3].absorb((lhs - rhs).max_abs(), std::max(1.0, lhs.max_abs()));
        }
        // Lemma prim on the block-eigenvalue Ricci structure
        {
            SplitFrame sf = synthetic_split_frame(mt, rng.complex_vector(m));
            double l1 = rng.uniform(-2.0, 2.0), l2 = rng.uniform(-2.0, 2.0);
            // ric = l2 g + (l1 - l2) * (restriction to the vertical plane)
            Curvature<cplx> cv;
            cv.m = m;
            cv.ric = Mat<cplx>(m);
            // vertical projector as a Hermitian form: P(X,Ybar) = g(X, U) conj(...)
            // realised via the coframe phiU: P_{k lbar} = (phiU_k)(conj phiU_l) |U|-normalised
            std::vector<cplx> pu(static_cast<std::size_t>(m), 0.0);
            for (int k = 0; k < m; ++k) {
                auto it = sf.phiU.c.find(Form<cplx>::key(Mask(1) << k, 0));
                if (it != sf.phiU.c.end()) pu[static_cast<std::size_t>(k)] = it->second;
            }
            // phiU = 2 (1,0)-part of flat(conj U): g(., conj U)-dual; the vertical
            // block of the metric in coordinates is (1/2) pu pu^*
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    cv.ric(k, l) = l2 * mt.g(k, l) + (l1 - l2) * 0.5 * pu[static_cast<std::size_t>(k)] *
                                                         std::conj(pu[static_cast<std::size_t>(l)]);
            double scal = 2.0 * (l1 + (m - 1) * l2);
            cv.scal = scal;
            Form<cplx> rho = mt.herm_form(cv.ric);

            Form<cplx> psi = primitive_part(mt, rng.form(m, 1, m - 1));
            auto comp = split_components(mt, sf, psi);
            // extract psi1 from the projected first component:
            // Ubar . U . ((omega^V - omega^H) ^ psi1) = (i/2) psi1
            Form<cplx> psi1 = contract(sf.U.conj(), contract(sf.U, comp.psi1));
            psi1 *= cplx(0, -2.0);

            Form<cplx> lhs = ric_act(cv, frame, psi);
            Form<cplx> rhs = psi;
            rhs *= cplx(scal / 2);
            Form<cplx> extra = wedge(mt.herm_form(mt.g), psi1);
            extra *= cplx(l1 - l2);
            rhs += extra;
            reps[4].absorb((lhs - rhs).max_abs() + comp.rest.max_abs(),
                           std::max(1.0, lhs.max_abs()));

            Form<cplx> lhs2 = commutator(mt, frame, rho, psi);
            Form<cplx> r1 = comp.psi1;
            r1 *= cplx(0, l2 * (m - 2));
            Form<cplx> r2 = comp.psi2;
            r2 *= cplx(0, (m - 1) * l2 - l1);
            Form<cplx> r3 = comp.psi3;
            r3 *= cplx(0, l1 + (m - 3) * l2);
            reps[5].absorb((lhs2 - r1 - r2 - r3).max_abs(), std::max(1.0, lhs2.max_abs()));
        }
    }
    // curvature-operator identities on Fubini-Study geometry
    Rng rng2(seed + 1);
    for (int cs = 0; cs < std::max(10, ncases / 5); ++cs) {
        Geom G = geom_at(fs, fs.sample(rng2), 2);
        auto frame = G.frame();
        int p = rng2.integer(0, 2), q = rng2.integer(0, 2);
        Form<cplx> phi = rng2.form(3, p, q);
        Form<cplx> rho = G.mt0.herm_form(G.curv0.ric);
        Form<cplx> lhs = curv_op(G.curv0, frame, l_omega(G.mt0, phi)) -
                         l_omega(G.mt0, curv_op(G.curv0, frame, phi));
        Form<cplx> rhs = wedge(rho, phi);
        rhs *= cplx(-2.0);
        reps[2].absorb((lhs - rhs).max_abs(), std::max(1.0, lhs.max_abs() + phi.max_abs()));

        Form<cplx> f0q = rng2.form(3, 0, rng2.integer(1, 2));
        Vec<cplx> X = rng2.real_vector(3);
        Form<cplx> l7 = curv_op(G.curv0, frame, wedge(G.mt0.vflat(X), f0q));
        Form<cplx> r7(3);
        for (const auto& e : frame) r7 += wedge(G.curv0.two_form(e, X), contract(e, f0q));
        r7 *= cplx(2.0);
        reps[6].absorb((l7 - r7).max_abs(), std::max(1.0, l7.max_abs()));
    }
    for (auto& r : reps) {
        r.ms = sw.ms() / static_cast<double>(reps.size());
        r.finalize();
    }
    return reps;
}

// the four Kahler identities on seeded random polynomial fields
inline std::vector<CheckReport> kahler_identity_suite(const KahlerChart& chart,
                                                      std::uint64_t seed, int npts = 50,
                                                      double tol = 1e-7, int jet_order = 2) {
    Stopwatch sw;
    std::vector<CheckReport> reps;
    reps.push_back(make_report("ki.lambda_delbar", "ki: [Lambda, delbar] = -i del*", tol, seed));
    reps.push_back(make_report("ki.lambda_del", "ki: [Lambda, del] = i delbar*", tol, seed));
    reps.push_back(make_report("kid.delbarstar_L", "kid: [delbar*, L] = i del", tol, seed));
    reps.push_back(make_report("kid.delstar_L", "kid: [del*, L] = -i delbar", tol, seed));
    Rng rng(seed);
    for (int pt = 0; pt < npts; ++pt) {
        Geom G = geom_at(chart, chart.sample(rng), std::max(2, jet_order));
        int p = rng.integer(0, chart.m - 1), q = rng.integer(0, chart.m - 1);
        FormField f = random_form_field(rng, chart.m, p, q, 2);
        Form<Jet> F = f(G);
        double scale = std::max(1.0, F.max_abs());

        Form<Jet> l1 = l_omega_star(G.mt, delbar(F)) - delbar(l_omega_star(G.mt, F));
        Form<Jet> r1 = del_star(G, F);
        r1 *= cplx(0, -1);
        reps[0].absorb(value_form(l1 - r1).max_abs(), scale);

        Form<Jet> l2 = l_omega_star(G.mt, del(F)) - del(l_omega_star(G.mt, F));
        Form<Jet> r2 = delbar_star(G, F);
        r2 *= cplx(0, 1);
        reps[1].absorb(value_form(l2 - r2).max_abs(), scale);

        Form<Jet> l3 = delbar_star(G, l_omega(G.mt, F)) - l_omega(G.mt, delbar_star(G, F));
        Form<Jet> r3 = del(F);
        r3 *= cplx(0, 1);
        reps[2].absorb(value_form(l3 - r3).max_abs(), scale);

        Form<Jet> l4 = del_star(G, l_omega(G.mt, F)) - l_omega(G.mt, del_star(G, F));
        Form<Jet> r4 = delbar(F);
        r4 *= cplx(0, -1);
        reps[3].absorb(value_form(l4 - r4).max_abs(), scale);
    }
    for (auto& r : reps) {
        r.ms = sw.ms() / static_cast<double>(reps.size());
        r.finalize();
    }
    return reps;
}

// Weitzenboeck formulas: (wz) on random (p,q), (wbf) on random (0,q)
inline std::vector<CheckReport> weitzenboeck_suite(const KahlerChart& chart, std::uint64_t seed,
                                                   int npts = 50, double tol = 1e-7,
                                                   int jet_order = 3) {
    Stopwatch sw;
    std::vector<CheckReport> reps;
    reps.push_back(
        make_report("wz", "wz: Delta = nabla* nabla + R + Ric", tol, seed));
    reps.push_back(make_report("wbf", "wbf: Delta_delbar = (nabla01)* nabla01 - i[rho,.] on (0,q)",
                               tol, seed));
    reps.push_back(make_report("wbf.ric_action", "wbf: the curvature term acts as Ric on (0,q)",
                               tol, seed));
    Rng rng(seed);
    for (int pt = 0; pt < npts; ++pt) {
        Geom G = geom_at(chart, chart.sample(rng), std::max(3, jet_order));
        auto jframe = G.jet_frame();
        {
            int p = rng.integer(0, chart.m), q = rng.integer(0, chart.m);
            FormField f = random_form_field(rng, chart.m, p, q, 2);
            Form<Jet> F = f(G);
            double scale = std::max(1.0, F.max_abs());
            Form<Jet> lhs = hodge_laplacian(G, F);
            Form<Jet> rhs = rough_laplacian(G, F) + curv_op(G.curv, jframe, F) +
                            ric_act(G.curv, jframe, F);
            reps[0].absorb(value_form(lhs - rhs).max_abs(), scale);
        }
        {
            int q = rng.integer(1, chart.m);
            FormField f = random_form_field(rng, chart.m, 0, q, 2);
            Form<Jet> F = f(G);
            double scale = std::max(1.0, F.max_abs());
            Form<Jet> rho = G.mt.herm_form(G.curv.ric);
            Form<Jet> com = commutator(G.mt, jframe, rho, F);
            com *= cplx(0, -1);
            Form<Jet> rhs = rough_laplacian_01(G, F) + com;
            Form<Jet> lhs = delbar_laplacian(G, F);
            reps[1].absorb(value_form(lhs - rhs).max_abs(), scale);
            Form<Jet> ric = ric_act(G.curv, jframe, F);
            reps[2].absorb(value_form(com - ric).max_abs(), scale);
        }
    }
    for (auto& r : reps) {
        r.ms = sw.ms() / static_cast<double>(reps.size());
        r.finalize();
    }
    return reps;
}

// chart construction battery for a Calabi chart (the CalabiChart invariants)
inline std::vector<CheckReport> calabi_chart_battery(const CalabiChart& cc, std::uint64_t seed,
                                                     int npts = 20, double tol = 1e-7) {
    Stopwatch sw;
    std::vector<CheckReport> reps;
    reps.push_back(make_report("chart.kahler", "d omega = 0", 1e-10, seed));
    reps.push_back(make_report("chart.moment_map", "K . omega = dz", tol, seed));
    reps.push_back(make_report("chart.momentum_profile", "g(K,K) = X(z)", tol, seed));
    reps.push_back(make_report("chart.lee_form", "d omega^V = -theta ^ omega^H", tol, seed));
    reps.push_back(make_report("chart.der_K", "-d K^flat = X' omega^V + (X/z) omega^H", tol, seed));
    reps.push_back(make_report("chart.ricci_eigenvalues",
                               "two Ricci eigenvalues match the closed-form prediction", 1e-6,
                               seed));
    reps.push_back(make_report("chart.base_einstein", "Ric_N = k g_N on the base", 1e-8, seed));
    reps.push_back(make_report("nsplit-f.i", "comp-H1: nabla_X = chern_X - (i/z) K01 ^ (X . )",
                               tol, seed));
    reps.push_back(make_report("nsplit-f.ii", "liena: L_{K01} = nabla_{K01} + i p X/(2z)", tol,
                               seed));
    reps.push_back(make_report("bdelhh", "bdelhh: delbar = delbar_H + (2/X) K01 ^ L_{K01}", tol,
                               seed));
    Rng rng(seed);
    RicciPrediction pred{cc.m, cc.profile.C1};
    for (int pt = 0; pt < npts; ++pt) {
        Geom G = geom_at(cc.chart, cc.chart.sample(rng), 3);
        Jet zj = moment_map(cc, G);
        double z = zj.value().real();
        Form<Jet> omega = G.mt.herm_form(G.mt.g);
        reps[0].absorb(value_form(ext_d(omega)).max_abs(), 1.0);
        Vec<Jet> K = killing_field(cc, G);
        Form<Jet> dz = d_scalar(G, zj);
        reps[1].absorb(value_form(contract(K, omega) - dz).max_abs(),
                       std::max(1.0, value_form(dz).max_abs()));
        double X = G.mt.pair(K, K).value().real();
        reps[2].absorb(std::abs(X - cc.profile.X(z)), cc.profile.X(z));
        Form<Jet> oV = omega_vertical(cc, G);
        Form<Jet> oH = omega - oV;
        Form<Jet> theta = d_scalar(G, zj.log());
        reps[3].absorb(value_form(ext_d(oV) + wedge(theta, oH)).max_abs(),
                       std::max(1.0, value_form(oH).max_abs()));
        Form<Jet> lhs = -ext_d(G.mt.vflat(K));
        Form<Jet> rhs = oV;
        rhs *= Jet::constant(G.spec, cc.profile.Xprime(z));
        Form<Jet> rhs2 = oH;
        rhs2 *= zj.pow(-1.0) * cc.profile.X_jet(zj);
        rhs += rhs2;
        reps[4].absorb(value_form(lhs - rhs).max_abs(), std::max(1.0, value_form(rhs).max_abs()));
        auto [l1, l2] = ricci_eigenvalues(cc, G);
        reps[5].absorb(std::abs(l1.value().real() - pred.lambda1(z)),
                       std::max(1e-14, std::abs(pred.lambda1(z))));
        reps[5].absorb(std::abs(l2.value().real() - pred.lambda2(z)),
                       std::max(1e-14, std::abs(pred.lambda2(z))));
    }
    // Chern connection comparison formulas on a lifted test field
    {
        BaseFormSpec gamma;
        gamma.p = 0;
        gamma.q = 1;
        gamma.coeff = [](const std::vector<Jet>& zeta, const std::vector<Jet>& zetab,
                         const Jet&) {
            Form<Jet> g(static_cast<int>(zeta.size()) + 1);
            g.add_term(0, Mask(1) << 0, zeta[0] * zetab[1] + 1.0);
            g.add_term(0, Mask(1) << 1, zeta[1] + zetab[0]);
            return g;
        };
        FormField gh = lift_form(cc, gamma, 1);
        Rng rng3(seed + 11);
        const int p = 1;
        for (int pt = 0; pt < std::max(3, npts / 4); ++pt) {
            Geom G = geom_at(cc.chart, cc.chart.sample(rng3), 3);
            Form<Jet> tau = gh(G);
            Jet zj = moment_map(cc, G);
            Jet Xj = cc.profile.X_jet(zj);
            Vec<Jet> K = killing_field(cc, G);
            double scale = std::max(1.0, value_form(tau).max_abs());
            for (int a = 0; a < cc.m - 1; ++a) {
                Vec<Jet> Xh = horizontal_lift(cc, G, a, true);
                Xh += horizontal_lift(cc, G, a, false);
                Form<Jet> cn = chern_nabla(cc, G, tau, Xh);
                Form<Jet> corr = wedge(k01_covector(cc, G), contract(Xh, tau));
                corr *= zj.pow(-1.0);
                corr *= cplx(0, -1);
                reps[7].absorb(value_form(nabla(G, tau, Xh) - cn - corr).max_abs(), scale);
            }
            Vec<Jet> K01 = K.part01();
            Form<Jet> lie = lie_form(G, tau, K01);
            Form<Jet> t2 = tau;
            t2 *= (Xj / zj);
            t2 *= cplx(0, 0.5 * p);
            reps[8].absorb(value_form(lie - nabla(G, tau, K01) - t2).max_abs(), scale);
            SplitFrame sf = split_frame(cc, G);
            Form<cplx> db = value_form(delbar(tau));
            Form<cplx> vert = db - horizontal_part_0q(sf, db);
            Form<cplx> rhs = wedge(value_form(k01_covector(cc, G)), value_form(lie));
            rhs *= cplx(2.0 / Xj.value().real());
            reps[9].absorb((vert - rhs).max_abs(), std::max(1.0, db.max_abs()));
        }
    }
    // base Einstein verification on the base chart
    {
        KahlerChart bchart = cc.base.chart();
        Rng rng2(seed + 5);
        for (int pt = 0; pt < 10; ++pt) {
            Geom G = geom_at(bchart, bchart.sample(rng2), 2);
            double scale = 0.0, resid = 0.0;
            for (int i = 0; i < bchart.m; ++i)
                for (int j = 0; j < bchart.m; ++j) {
                    resid = std::max(resid, std::abs(G.curv0.ric(i, j) -
                                                     cc.base.k * G.mt0.g(i, j)));
                    scale = std::max(scale, std::abs(G.mt0.g(i, j)));
                }
            reps[6].absorb(resid, std::max(scale, 1.0));
        }
    }
    for (auto& r : reps) {
        r.ms = sw.ms() / static_cast<double>(reps.size());
        r.finalize();
    }
    return reps;
}

} // namespace kform
