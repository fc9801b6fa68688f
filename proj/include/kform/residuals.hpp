#pragma once

// Named pointwise residual checkers. Each displayed equation becomes a
// residual form whose maximum coefficient, divided by the largest magnitude
// among the equation's terms at that point, is accumulated into a CheckReport.

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"

#include "kform/diffops.hpp"
#include "kform/exterior.hpp"
#include "kform/fields.hpp"

namespace kform {

struct CheckReport {
    std::string name;
    std::string paper_ref;
    std::uint64_t seed = 0;
    int n_points = 0;
    double max_abs = 0.0;
    double max_rel = 0.0;
    double tol = 0.0;
    bool pass = false;
    double ms = 0.0;
    std::string status = "ran"; // "ran" | "not applicable"

    void absorb(double abs_resid, double scale) {
        ++n_points;
        max_abs = std::max(max_abs, abs_resid);
        max_rel = std::max(max_rel, abs_resid / std::max(scale, 1e-14));
    }
    void finalize() { pass = status != "ran" || max_rel <= tol; }
};

inline CheckReport make_report(std::string name, std::string ref, double tol,
                               std::uint64_t seed) {
    CheckReport r;
    r.name = std::move(name);
    r.paper_ref = std::move(ref);
    r.tol = tol;
    r.seed = seed;
    return r;
}

inline nlohmann::json to_json(const CheckReport& r) {
    return nlohmann::json{{"name", r.name},       {"paper_ref", r.paper_ref},
                          {"seed", r.seed},       {"n_points", r.n_points},
                          {"max_abs", r.max_abs}, {"max_rel", r.max_rel},
                          {"tol", r.tol},         {"pass", r.pass},
                          {"ms", r.ms},           {"status", r.status}};
}

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

// residual form together with the magnitude scale of the identity's terms
struct Resid {
    Form<cplx> r;
    double scale = 0.0;

    double rel() const { return r.max_abs() / std::max(scale, 1e-14); }
    void absorb_into(CheckReport& rep) const { rep.absorb(r.max_abs(), scale); }
};

inline Resid make_resid(std::initializer_list<Form<cplx>> terms) {
    Resid out;
    bool first = true;
    for (const auto& t : terms) {
        if (first) {
            out.r = t;
            first = false;
        } else {
            out.r += t;
        }
        out.scale = std::max(out.scale, t.max_abs());
    }
    return out;
}

// ---- the three defining equations ------------------------------------------

// conformal Killing (twistor) equation:
//   nabla_X phi - (1/(p+1)) X . d phi + (1/(n-p+1)) X^flat ^ d* phi
// (phi may mix bidegrees, e.g. a realified (1,m-1)+(m-1,1) form, but must
// have a single total degree)
inline Resid conformal_killing_residual(const Geom& G, const Form<Jet>& phi,
                                        const Vec<cplx>& X) {
    int deg = 0;
    for (const auto& [key, v] : phi.c) {
        (void)v;
        deg = mask_size(Form<Jet>::key_hol(key)) + mask_size(Form<Jet>::key_anti(key));
        break;
    }
    int n = 2 * G.m;
    Vec<Jet> Xj = jet_vec_const(G, X);
    Form<cplx> t1 = value_form(nabla(G, phi, Xj));
    Form<cplx> t2 = value_form(contract(Xj, ext_d(phi)));
    t2 *= cplx(-1.0 / (deg + 1));
    Form<cplx> t3 = value_form(wedge(G.mt.vflat(Xj), d_star(G, phi)));
    t3 *= cplx(1.0 / (n - deg + 1));
    return make_resid({t1, t2, t3});
}

// special pair equation: nabla_X phi = X^{1,0} ^ tau + (i/2) omega ^ (X . tau)
inline Resid special_form_residual(const Geom& G, const Form<Jet>& phi, const Form<Jet>& tau,
                                   const Vec<cplx>& X) {
    Vec<Jet> Xj = jet_vec_const(G, X);
    Form<cplx> t1 = value_form(nabla(G, phi, Xj));
    Form<cplx> x10 = value_form(G.mt.vflat(Xj)).bidegree(1, 0);
    Form<cplx> t2 = -wedge(x10, value_form(tau));
    Form<cplx> omega = G.mt0.herm_form(G.mt0.g);
    Form<cplx> t3 = wedge(omega, contract(X, value_form(tau)));
    t3 *= cplx(0, -0.5);
    return make_resid({t1, t2, t3});
}

// Hermitian Killing equation on a (p,q)-form:
//   nabla_X tau = (1/(p+1)) X_{1,0} . del tau + (1/(q+1)) X_{0,1} . delbar tau
inline Resid hermitian_killing_residual(const Geom& G, const Form<Jet>& tau,
                                        const Vec<cplx>& X) {
    int p = 0, q = 0;
    tau.pure_bidegree(p, q);
    Vec<Jet> Xj = jet_vec_const(G, X);
    Form<cplx> t1 = value_form(nabla(G, tau, Xj));
    Form<cplx> t2 = contract(X.part10(), value_form(del(tau)));
    t2 *= cplx(-1.0 / (p + 1));
    Form<cplx> t3 = contract(X.part01(), value_form(delbar(tau)));
    t3 *= cplx(-1.0 / (q + 1));
    return make_resid({t1, t2, t3});
}

// the real-valued version (spec-real) of the special equation:
//   nabla_U Phi = (JU)^flat ^ T + U^flat ^ JJ T + (U . T) ^ omega
// for the realifications Phi = phi + conj(phi), T given by tau.
inline Resid special_real_residual(const Geom& G, const Form<Jet>& phi, const Form<Jet>& tau,
                                   const Vec<cplx>& U) {
    Vec<Jet> Uj = jet_vec_const(G, U);
    Form<Jet> Phi = phi + phi.conj();
    Form<cplx> T;
    {
        // tau_real = (tau + conj tau)/2 matches X^{1,0} ^ tau + c.c. once the
        // (spec-real) right-hand side is expanded; the factor is fitted by the
        // equivalence test rather than assumed here.
        T = value_form(tau);
    }
    Form<cplx> Tre = (T + T.conj());
    Tre *= cplx(0.5);
    Form<cplx> t1 = value_form(nabla(G, Phi, Uj));
    Form<cplx> ju = value_form(G.mt.vflat(jet_vec_const(G, U.jay())));
    Form<cplx> t2 = -wedge(ju, Tre);
    Form<cplx> uf = value_form(G.mt.vflat(Uj));
    Form<cplx> t3 = -wedge(uf, Tre.jact());
    Form<cplx> omega = G.mt0.herm_form(G.mt0.g);
    Form<cplx> t4 = -wedge(contract(U, Tre), omega);
    return make_resid({t1, t2, t3, t4});
}

// ---- generic linear fitting --------------------------------------------------

// Solve min_c sum | A_s + sum_i c_i B_{s,i} |^2 by normal equations; the
// samples s stack the coefficients of residual forms over points/directions.
inline std::vector<cplx> linear_fit(const std::vector<Form<cplx>>& A,
                                    const std::vector<std::vector<Form<cplx>>>& B) {
    std::size_t n = B.empty() ? 0 : B[0].size();
    std::vector<std::vector<cplx>> M(n, std::vector<cplx>(n, 0.0));
    std::vector<cplx> rhs(n, 0.0);
    auto dots = [](const Form<cplx>& x, const Form<cplx>& y) {
        cplx acc = 0.0;
        for (const auto& [k, v] : x.c) {
            auto it = y.c.find(k);
            if (it != y.c.end()) acc += std::conj(v) * it->second;
        }
        return acc;
    };
    for (std::size_t s = 0; s < A.size(); ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            rhs[i] -= dots(B[s][i], A[s]);
            for (std::size_t j = 0; j < n; ++j) M[i][j] += dots(B[s][i], B[s][j]);
        }
    }
    // Gauss elimination with partial pivoting
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            cplx f = M[r][col] / M[col][col];
            for (std::size_t cc = col; cc < n; ++cc) M[r][cc] -= f * M[col][cc];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i] / M[i][i];
    return out;
}

// snap a fitted coefficient to a nearby simple rational multiple of 1 or i
inline cplx snap_coefficient(cplx c, double tol = 1e-6) {
    static const double nums[] = {0, 1, 2, 3, 4, 0.5, 1.5, 2.5, 0.25, 0.75, 1.0 / 3, 2.0 / 3};
    cplx best = c;
    double bestd = tol * std::max(1.0, std::abs(c));
    for (double re : nums)
        for (int sr = -1; sr <= 1; sr += 2)
            for (double im : nums)
                for (int si = -1; si <= 1; si += 2) {
                    cplx cand(sr * re, si * im);
                    double d = std::abs(c - cand);
                    if (d < bestd) {
                        bestd = d;
                        best = cand;
                    }
                }
    return best;
}

} // namespace kform
