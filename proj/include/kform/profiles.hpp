#pragma once

// Scalar layer of the Calabi family: momentum profiles X(z) = z(C1 z^m + 2k/m),
// the radial models G(r) on the fibre, their ODEs, maximal domains, and the
// closed-form curvature / norm predictions used as oracles against the chart
// engine.

#include <optional>
#include <string>
#include <vector>

#include "kform/jet.hpp"

namespace kform {

struct CheckReport; // residuals.hpp

struct MomentumProfile {
    int m = 3;
    double C1 = 1.0;
    double k = 0.0;

    double X(double z) const { return z * (C1 * std::pow(z, m) + 2.0 * k / m); }
    double Xprime(double z) const {
        return (m + 1) * C1 * std::pow(z, m) + 2.0 * k / m;
    }
    double Xsecond(double z) const { return m * (m + 1) * C1 * std::pow(z, m - 1); }

    Jet X_jet(const Jet& z) const {
        return z * (z.pow(m) * C1 + 2.0 * k / m);
    }

    bool positive_on(double zlo, double zhi, int samples = 200) const {
        for (int i = 0; i <= samples; ++i) {
            double z = zlo + (zhi - zlo) * i / samples;
            if (!(X(z) > 0.0)) return false;
        }
        return true;
    }
};

// validated constructor: positivity on the declared interval, non-degenerate
inline MomentumProfile make_profile(int m, double C1, double k, double zlo, double zhi) {
    if (m < 3) throw std::invalid_argument("profile: m >= 3 required");
    if (C1 == 0.0 && k == 0.0)
        throw std::invalid_argument("profile: C1 = k = 0 is degenerate (X identically zero)");
    MomentumProfile p{m, C1, k};
    if (!(zlo > 0.0) || !(zhi > zlo)) throw std::invalid_argument("profile: bad z-interval");
    if (!p.positive_on(zlo, zhi))
        throw std::invalid_argument("profile: X not positive on the declared interval");
    return p;
}

struct RicciPrediction {
    int m;
    double C1;

    double lambda1(double z) const { return -m * m * C1 * std::pow(z, m - 1); }
    double lambda2(double z) const { return -m * C1 * std::pow(z, m - 1); }
    double scal(double z) const { return -2.0 * m * (2 * m - 1) * C1 * std::pow(z, m - 1); }
};

// Tonnesen-Friedman Ricci coefficients of the fibration:
//   rho = pi* rho_N + L1 omega^V + L2 omega^H
inline std::pair<double, double> tonnesen_ricci(const MomentumProfile& p, double z) {
    double L1 = -0.5 * (p.Xsecond(z) + (p.m - 1) * (p.Xprime(z) * z - p.X(z)) / (z * z));
    double L2 = -(p.Xprime(z) + (p.m - 1) * p.X(z) / z) / (2.0 * z);
    return {L1, L2};
}

// norm predictions |tau|^2 = C2 X(z), |phi|^2 = C2 z^2 / 2
inline std::pair<double, double> norm_predictions(const MomentumProfile& p, double C2,
                                                  double z) {
    return {C2 * p.X(z), 0.5 * C2 * z * z};
}

// ---- radial models on the fibre -------------------------------------------

struct RadialModel {
    int m = 3;
    double C1 = 0.0;
    double k = 1.0;
    double lambda = 1.0;

    // G^m(r) = 2 k lambda r^{2k} / (m (1 - C1 lambda r^{2k}))
    double G(double r) const {
        double s = lambda * std::pow(r, 2.0 * k);
        double num = 2.0 * k * s / m;
        double den = 1.0 - C1 * s;
        double gm = num / den;
        if (!std::isfinite(gm) || !(gm > 0.0))
            throw std::domain_error("radial model: G^m not positive at r");
        return std::pow(gm, 1.0 / m);
    }
    double Gprime(double r) const {
        // from the ODE r G' = G (C1 G^m + 2k/m)
        double g = G(r);
        return g * (C1 * std::pow(g, m) + 2.0 * k / m) / r;
    }
};

struct DomainDescriptor {
    std::string tag; // "punctured", "r>a", "0<r<a", "rejected"
    std::optional<double> a;
};

// Maximal domain table for the pair (g, phi); the boundary radius is
// a = (C1 lambda)^(-1/(2k)) whenever both signs allow one.
inline DomainDescriptor maximal_domain(double C1, double k, double lambda) {
    DomainDescriptor d;
    if (C1 == 0.0 && k == 0.0) {
        d.tag = "rejected";
        return d;
    }
    if (C1 == 0.0) {
        d.tag = (k > 0.0) ? "punctured" : "empty";
        return d;
    }
    if (k > 0.0 && C1 < 0.0) {
        d.tag = "punctured";
        return d;
    }
    double a = std::pow(C1 * lambda, -1.0 / (2.0 * k));
    if (C1 > 0.0 && k < 0.0) {
        d.tag = "r>a";
        d.a = a;
        return d;
    }
    if (C1 > 0.0 && k > 0.0) {
        d.tag = "0<r<a";
        d.a = a;
        return d;
    }
    d.tag = "empty"; // C1 < 0, k < 0: no positive branch
    return d;
}

// ---- ODE oracle ------------------------------------------------------------

// adaptive RK45 (Dormand-Prince) for scalar dy/dx = f(x,y); oracle only
template <class F>
double integrate_ode(F&& f, double x0, double y0, double x1, double tol = 1e-12) {
    static const double c[7] = {0, 1. / 5, 3. / 10, 4. / 5, 8. / 9, 1., 1.};
    static const double a[7][6] = {
        {},
        {1. / 5},
        {3. / 40, 9. / 40},
        {44. / 45, -56. / 15, 32. / 9},
        {19372. / 6561, -25360. / 2187, 64448. / 6561, -212. / 729},
        {9017. / 3168, -355. / 33, 46732. / 5247, 49. / 176, -5103. / 18656},
        {35. / 384, 0, 500. / 1113, 125. / 192, -2187. / 6784, 11. / 84}};
    static const double b5[7] = {35. / 384, 0, 500. / 1113, 125. / 192, -2187. / 6784,
                                 11. / 84, 0};
    static const double b4[7] = {5179. / 57600,    0,           7571. / 16695, 393. / 640,
                                 -92097. / 339200, 187. / 2100, 1. / 40};
    double x = x0, y = y0;
    double h = (x1 - x0) * 0.05;
    int dir = (x1 > x0) ? 1 : -1;
    for (int iter = 0; iter < 200000 && dir * (x1 - x) > 1e-15; ++iter) {
        if (dir * (x + h - x1) > 0) h = x1 - x;
        double kk[7];
        for (int s = 0; s < 7; ++s) {
            double xs = x + c[s] * h, ys = y;
            for (int t = 0; t < s; ++t) ys += h * a[s][t] * kk[t];
            kk[s] = f(xs, ys);
        }
        double y5 = y, y4 = y;
        for (int s = 0; s < 7; ++s) {
            y5 += h * b5[s] * kk[s];
            y4 += h * b4[s] * kk[s];
        }
        double err = std::abs(y5 - y4) / std::max(1.0, std::abs(y5));
        if (err < tol) {
            x += h;
            y = y5;
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-16) / tol, -0.2);
        h *= std::min(4.0, std::max(0.1, fac));
    }
    return y;
}

} // namespace kform
