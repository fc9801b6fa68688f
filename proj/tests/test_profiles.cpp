#include "doctest.h"

#include "kform/profiles.hpp"
#include "kform/rng.hpp"

using namespace kform;

TEST_CASE("closed-form profile satisfies its ODE identically") {
    // X' = (m+1) X / z - 2k
    Rng rng(3);
    for (int rep = 0; rep < 60; ++rep) {
        int m = rng.integer(3, 5);
        double C1 = rng.uniform(-2.0, 2.0);
        double k = rng.uniform(-2.0, 2.0);
        if (C1 == 0.0 && k == 0.0) continue;
        MomentumProfile p{m, C1, k};
        for (int i = 0; i < 10; ++i) {
            double z = rng.uniform(0.3, 3.0);
            double lhs = p.Xprime(z);
            double rhs = (m + 1) * p.X(z) / z - 2.0 * k;
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
        }
    }
    // quoted values: m=3, C1=1, k=0, z=2
    MomentumProfile p{3, 1.0, 0.0};
    CHECK(p.X(2.0) == doctest::Approx(16.0));
    CHECK(p.Xprime(2.0) == doctest::Approx(32.0));
    CHECK((3 + 1) * p.X(2.0) / 2.0 - 0.0 == doctest::Approx(32.0));
    // linear profile: C1 = 0, k = 3/2 gives X = z
    MomentumProfile lin{3, 0.0, 1.5};
    CHECK(lin.X(0.77) == doctest::Approx(0.77));
}

TEST_CASE("numeric ODE integration matches the closed form") {
    MomentumProfile p{3, 1.0, 1.0};
    double z1 = 1.0, z2 = 2.0;
    double got = integrate_ode(
        [&](double z, double) { return (p.m + 1) * p.X(z) / z - 2.0 * p.k; }, z1, p.X(z1), z2);
    CHECK(std::abs(got - p.X(z2)) / p.X(z2) < 1e-9);
}

TEST_CASE("radial model: closed form, ODE residual, monotonicity, guards") {
    // quoted: m=3, k=1, lambda=1, C1=0, r=1 -> G^3 = 2/3
    RadialModel rm{3, 0.0, 1.0, 1.0};
    CHECK(std::pow(rm.G(1.0), 3) == doctest::Approx(2.0 / 3.0));

    // ODE r G' = G (C1 G^m + 2k/m) holds for the closed form (finite diffs)
    RadialModel rm2{3, -1.0, 1.0, 1.0};
    for (double r : {0.5, 1.0, 2.0}) {
        double h = 1e-6 * r;
        double fd = (rm2.G(r + h) - rm2.G(r - h)) / (2 * h);
        CHECK(std::abs(fd - rm2.Gprime(r)) < 1e-7 * std::max(1.0, std::abs(fd)));
        double lhs = r * rm2.Gprime(r);
        double g = rm2.G(r);
        CHECK(std::abs(lhs - g * (rm2.C1 * std::pow(g, rm2.m) + 2 * rm2.k / rm2.m)) < 1e-12);
    }
    // case (i) parameters: G' > 0 throughout
    for (double r = 0.2; r < 3.0; r += 0.1) CHECK(rm2.Gprime(r) > 0.0);

    // boundary guard: C1 lambda r^{2k} -> 1 divergence
    RadialModel rm3{3, 1.0, 1.0, 1.0};
    CHECK_THROWS(rm3.G(1.0));   // exactly at a = 1
    CHECK_THROWS(rm3.G(1.5));   // beyond
    CHECK(rm3.G(0.9) > 0.0);
}

TEST_CASE("maximal domain: the four cases and the degenerate rejection") {
    auto d1 = maximal_domain(-1.0, 1.0, 1.0);
    CHECK(d1.tag == "punctured");
    CHECK(!d1.a.has_value());
    auto d2 = maximal_domain(1.0, -1.0, 1.0);
    CHECK(d2.tag == "r>a");
    CHECK(d2.a.value() == doctest::Approx(1.0));
    auto d3 = maximal_domain(1.0, 1.0, 1.0);
    CHECK(d3.tag == "0<r<a");
    CHECK(d3.a.value() == doctest::Approx(1.0));
    auto d4 = maximal_domain(0.0, 1.0, 1.0);
    CHECK(d4.tag == "punctured");
    CHECK(maximal_domain(0.0, 0.0, 1.0).tag == "rejected");
}

TEST_CASE("maximal domain agrees with positivity scanning of G, G'") {
    // scan the closed-form G on a log grid near the classifier's boundary
    // (when one exists) or across wide decades (when none should): the
    // positivity region must have exactly the boundary the classifier
    // reports, and the punctured / empty verdicts must match the scan.
    Rng rng(11);
    int checked = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        double C1 = rng.uniform(-2.0, 2.0);
        double k = rng.uniform(-2.0, 2.0);
        double lambda = rng.uniform(0.2, 2.0);
        if (std::abs(C1) < 1e-2) C1 = 0.0;
        if (std::abs(k) < 5e-2) continue; // k = 0 has no radial-model branch
        RadialModel rm{3, C1, k, lambda};
        auto dom = maximal_domain(C1, k, lambda);
        auto ok_at = [&](double r) {
            try {
                return rm.G(r) > 0.0 && rm.Gprime(r) > 0.0;
            } catch (const std::domain_error&) {
                return false;
            }
        };
        ++checked;
        if (dom.tag == "punctured" || dom.tag == "empty") {
            bool any = false;
            for (int i = 0; i <= 120; ++i)
                any = any || ok_at(std::pow(10.0, -2.0 + 4.0 * i / 120.0));
            CHECK(any == (dom.tag == "punctured"));
            continue;
        }
        // a boundary is reported: scan around it, find the single transition
        double a = dom.a.value();
        int transitions = 0;
        double boundary = 0.0;
        bool prev = ok_at(a * std::pow(10.0, -0.5));
        bool any = prev;
        for (int i = 1; i <= 240; ++i) {
            double r = a * std::pow(10.0, -0.5 + i / 240.0);
            bool good = ok_at(r);
            any = any || good;
            if (good != prev) {
                ++transitions;
                boundary = r;
            }
            prev = good;
        }
        CHECK(any);
        CHECK(transitions == 1);
        CHECK(std::abs(boundary - a) / a < 0.02);
        // exactly one side of a is admissible
        CHECK(ok_at(0.8 * a) != ok_at(1.25 * a));
    }
    CHECK(checked > 700);
}

TEST_CASE("Tonnesen-Friedman Ricci coefficients and the eigenvalue predictions") {
    // for the classified profile: lambda1 = L1 and lambda2 = L2 + k/z
    Rng rng(29);
    for (int rep = 0; rep < 50; ++rep) {
        int m = rng.integer(3, 4);
        double C1 = rng.uniform(-2.0, 2.0), k = rng.uniform(-2.0, 2.0);
        double z = rng.uniform(0.5, 2.5);
        MomentumProfile p{m, C1, k};
        RicciPrediction pred{m, C1};
        auto [L1, L2] = tonnesen_ricci(p, z);
        CHECK(std::abs(L1 - pred.lambda1(z)) < 1e-11 * std::max(1.0, std::abs(L1)));
        CHECK(std::abs(L2 + k / z - pred.lambda2(z)) < 1e-11 * std::max(1.0, std::abs(L2)));
        // trace identity scal = 2(lambda1 + (m-1) lambda2)
        CHECK(std::abs(pred.scal(z) - 2.0 * (pred.lambda1(z) + (m - 1) * pred.lambda2(z))) <
              1e-11 * std::max(1.0, std::abs(pred.scal(z))));
        // lambda1 = m lambda2
        CHECK(std::abs(pred.lambda1(z) - m * pred.lambda2(z)) <
              1e-11 * std::max(1.0, std::abs(pred.lambda1(z))));
    }
    // quoted: m=3, C1=1, k=0, z=1 -> (L1, L2) = (-9, -3)
    auto [L1, L2] = tonnesen_ricci(MomentumProfile{3, 1.0, 0.0}, 1.0);
    CHECK(L1 == doctest::Approx(-9.0));
    CHECK(L2 == doctest::Approx(-3.0));
    // C1 = 0: Ricci-flat family after the base fold
    auto [f1, f2] = tonnesen_ricci(MomentumProfile{3, 0.0, 1.0}, 1.3);
    CHECK(std::abs(f1) < 1e-13);
    CHECK(std::abs(f2 + 1.0 / 1.3) < 1e-13);
}

TEST_CASE("norm predictions") {
    MomentumProfile p{3, 1.0, 0.0};
    auto [t2, p2] = norm_predictions(p, 1.0, 2.0);
    CHECK(t2 == doctest::Approx(16.0));
    CHECK(p2 == doctest::Approx(2.0));
}
