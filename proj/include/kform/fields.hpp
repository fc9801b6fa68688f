#pragma once

// Differentiable assignments point -> form / vector, evaluated through jets.
// Fields are closures over closed-form coefficient functions; evaluation at
// a Geom produces a jet-valued form ready for the differential operators.

#include <functional>

#include "kform/diffops.hpp"

namespace kform {

struct FormField {
    int p = 0, q = 0;
    std::function<Form<Jet>(const Geom&)> eval;

    Form<Jet> operator()(const Geom& G) const { return eval(G); }
};

struct VectorField {
    std::function<Vec<Jet>(const Geom&)> eval;

    Vec<Jet> operator()(const Geom& G) const { return eval(G); }
};

struct ScalarField {
    std::function<Jet(const Geom&)> eval;

    Jet operator()(const Geom& G) const { return eval(G); }
};

inline FormField constant_form_field(const Form<cplx>& f, int p, int q) {
    FormField ff;
    ff.p = p;
    ff.q = q;
    ff.eval = [f](const Geom& G) { return to_jet_form<Jet>(f, G.spec); };
    return ff;
}

// random field with polynomial coefficients in (z, zbar), bounded degree
inline FormField random_form_field(Rng& rng, int m, int p, int q, int max_deg = 2,
                                   int terms = 2) {
    struct Monomial {
        std::vector<int> ez, ezb;
        cplx coef;
    };
    std::map<std::uint64_t, std::vector<Monomial>> table;
    for (Mask I = 0; I < (Mask(1) << m); ++I) {
        if (mask_size(I) != p) continue;
        for (Mask J = 0; J < (Mask(1) << m); ++J) {
            if (mask_size(J) != q) continue;
            std::vector<Monomial> mono;
            for (int t = 0; t < terms; ++t) {
                Monomial mo;
                mo.ez.assign(static_cast<std::size_t>(m), 0);
                mo.ezb.assign(static_cast<std::size_t>(m), 0);
                int deg = rng.integer(0, max_deg);
                for (int d = 0; d < deg; ++d) {
                    int v = rng.integer(0, 2 * m - 1);
                    if (v < m)
                        mo.ez[static_cast<std::size_t>(v)]++;
                    else
                        mo.ezb[static_cast<std::size_t>(v - m)]++;
                }
                mo.coef = rng.complex_unit_box();
                mono.push_back(mo);
            }
            table[Form<cplx>::key(I, J)] = mono;
        }
    }
    FormField ff;
    ff.p = p;
    ff.q = q;
    ff.eval = [table, m](const Geom& G) {
        Form<Jet> out(m);
        for (const auto& [key, mono] : table) {
            Jet acc = Jet::constant(G.spec, 0.0);
            for (const auto& mo : mono) {
                Jet term = Jet::constant(G.spec, mo.coef);
                for (int k = 0; k < m; ++k) {
                    for (int e = 0; e < mo.ez[static_cast<std::size_t>(k)]; ++e)
                        term = term * G.z[static_cast<std::size_t>(k)];
                    for (int e = 0; e < mo.ezb[static_cast<std::size_t>(k)]; ++e)
                        term = term * G.zb[static_cast<std::size_t>(k)];
                }
                acc += term;
            }
            out.c[key] = acc;
        }
        return out;
    };
    return ff;
}

// the Euler (radial) field sum z^k d/dz_k + conj
inline VectorField radial_field(int m) {
    VectorField v;
    v.eval = [m](const Geom& G) {
        Vec<Jet> out(m);
        for (int k = 0; k < m; ++k) {
            out.h[k] = G.z[static_cast<std::size_t>(k)];
            out.a[k] = G.zb[static_cast<std::size_t>(k)];
        }
        return out;
    };
    return v;
}

} // namespace kform
