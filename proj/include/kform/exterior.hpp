#pragma once

// Metric-dependent exterior algebra operators: Lefschetz L and its adjoint,
// primitive projection, the algebraic commutator, Ricci and curvature
// operators as frame sums, and the antisymmetrisation/trace splitting of
// Lambda^1 (x) Lambda^p.

#include <vector>

#include "kform/curvature.hpp"
#include "kform/metric.hpp"

namespace kform {

template <class R>
Form<R> l_omega(const Metric<R>& mt, const Form<R>& a) {
    return wedge(mt.omega(), a);
}

// adjoint of exterior multiplication with omega:
// Lambda = i sum g^{k lbar} i(d/dz_k) i(d/dzbar_l)
template <class R>
Form<R> l_omega_star(const Metric<R>& mt, const Form<R>& a) {
    Form<R> out(a.m);
    for (int k = 0; k < a.m; ++k)
        for (int l = 0; l < a.m; ++l) {
            Form<R> t = icontract_hol(k, icontract_anti(l, a));
            if (t.empty()) continue;
            R s = mt.gup(k, l);
            s *= cplx(0, 1);
            t *= s;
            out += t;
        }
    return out;
}

// algebraic commutator [alpha, phi] = sum (e_i . alpha) ^ (e_i . phi)
template <class R>
Form<R> commutator(const Metric<R>& mt, const std::vector<Vec<R>>& frame,
                   const Form<R>& alpha, const Form<R>& phi) {
    Form<R> out(alpha.m);
    for (const auto& e : frame) out += wedge(contract(e, alpha), contract(e, phi));
    (void)mt;
    return out;
}

// Ric(phi) = sum Ric(e_i)^flat ^ (e_i . phi)
template <class R>
Form<R> ric_act(const Curvature<R>& cv, const std::vector<Vec<R>>& frame,
                const Form<R>& phi) {
    Form<R> out(phi.m);
    for (const auto& e : frame) out += wedge(cv.ric_flat(e), contract(e, phi));
    return out;
}

// curvature operator: r(phi) = sum_{i,j} R2(e_i, e_j) ^ (e_i . e_j . phi)
template <class R>
Form<R> curv_op(const Curvature<R>& cv, const std::vector<Vec<R>>& frame,
                const Form<R>& phi) {
    Form<R> out(phi.m);
    for (std::size_t i = 0; i < frame.size(); ++i)
        for (std::size_t j = 0; j < frame.size(); ++j) {
            if (i == j) continue;
            Form<R> cc = contract(frame[i], contract(frame[j], phi));
            if (cc.empty()) continue;
            out += wedge(cv.two_form(frame[i], frame[j]), cc);
        }
    return out;
}

// Lefschetz-primitive part of a pure (p,q)-form with p+q <= m: subtracts
// L v where (Lambda L) v = Lambda a on Lambda^{p-1,q-1}. Complex scalars
// only; used to build primitive test inputs and projections.
inline Form<cplx> primitive_part(const Metric<cplx>& mt, const Form<cplx>& a) {
    int p = 0, q = 0;
    if (!a.pure_bidegree(p, q)) {
        if (a.empty()) return a;
        throw std::invalid_argument("primitive_part: mixed bidegree");
    }
    if (p == 0 || q == 0) return a; // nothing to subtract
    if (p + q > mt.m) throw std::invalid_argument("primitive_part: degree above middle");

    // enumerate basis of Lambda^{p-1,q-1}
    std::vector<std::pair<Mask, Mask>> basis;
    for (Mask I = 0; I < (Mask(1) << mt.m); ++I) {
        if (mask_size(I) != p - 1) continue;
        for (Mask J = 0; J < (Mask(1) << mt.m); ++J)
            if (mask_size(J) == q - 1) basis.emplace_back(I, J);
    }
    int n = static_cast<int>(basis.size());
    // matrix of Lambda L in that basis
    std::vector<std::vector<cplx>> A(static_cast<std::size_t>(n),
                                     std::vector<cplx>(static_cast<std::size_t>(n), 0.0));
    for (int col = 0; col < n; ++col) {
        Form<cplx> e = Form<cplx>::basis(mt.m, basis[static_cast<std::size_t>(col)].first,
                                         basis[static_cast<std::size_t>(col)].second, 1.0);
        Form<cplx> le = l_omega_star(mt, l_omega(mt, e));
        for (int row = 0; row < n; ++row) {
            auto it = le.c.find(Form<cplx>::key(basis[static_cast<std::size_t>(row)].first,
                                                basis[static_cast<std::size_t>(row)].second));
            A[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                (it == le.c.end()) ? cplx(0) : it->second;
        }
    }
    Form<cplx> la = l_omega_star(mt, a);
    std::vector<cplx> rhs(static_cast<std::size_t>(n), 0.0);
    for (int row = 0; row < n; ++row) {
        auto it = la.c.find(Form<cplx>::key(basis[static_cast<std::size_t>(row)].first,
                                            basis[static_cast<std::size_t>(row)].second));
        rhs[static_cast<std::size_t>(row)] = (it == la.c.end()) ? cplx(0) : it->second;
    }
    // Gauss with partial pivoting
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                std::abs(A[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
                piv = r;
        std::swap(A[static_cast<std::size_t>(piv)], A[static_cast<std::size_t>(col)]);
        std::swap(rhs[static_cast<std::size_t>(piv)], rhs[static_cast<std::size_t>(col)]);
        cplx d = A[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            cplx f = A[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / d;
            if (f == cplx(0)) continue;
            for (int cc = col; cc < n; ++cc)
                A[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -=
                    f * A[static_cast<std::size_t>(col)][static_cast<std::size_t>(cc)];
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    Form<cplx> v(mt.m);
    for (int row = 0; row < n; ++row)
        v.add_term(basis[static_cast<std::size_t>(row)].first,
                   basis[static_cast<std::size_t>(row)].second,
                   rhs[static_cast<std::size_t>(row)] /
                       A[static_cast<std::size_t>(row)][static_cast<std::size_t>(row)]);
    return a - l_omega(mt, v);
}

// ---- Lambda^1 (x) Lambda^p elements -------------------------------------

template <class R>
struct FormGradient {
    std::vector<Vec<R>> frame;  // orthonormal
    std::vector<Form<R>> vals;  // vals[i] = gamma_{e_i}
};

template <class R>
struct TwistorSplit {
    FormGradient<R> wedge_part;   // image of Lambda^{p+1}
    FormGradient<R> trace_part;   // image of Lambda^{p-1}
    FormGradient<R> twistor_part; // remainder
    Form<R> antisym;              // a(gamma)
    Form<R> trace;                // t(gamma)
};

template <class R>
Form<R> fg_antisym(const Metric<R>& mt, const FormGradient<R>& gamma) {
    Form<R> acc(mt.m);
    for (std::size_t i = 0; i < gamma.frame.size(); ++i)
        acc += wedge(mt.vflat(gamma.frame[i]), gamma.vals[i]);
    return acc;
}

template <class R>
Form<R> fg_trace(const FormGradient<R>& gamma) {
    Form<R> acc(gamma.vals.empty() ? 0 : gamma.vals[0].m);
    for (std::size_t i = 0; i < gamma.frame.size(); ++i)
        acc += contract(gamma.frame[i], gamma.vals[i]);
    return acc;
}

template <class R>
R fg_inner(const Metric<R>& mt, const FormGradient<R>& x, const FormGradient<R>& y) {
    R acc = ring_zero(mt.g(0, 0));
    for (std::size_t i = 0; i < x.frame.size(); ++i) acc += mt.inner(x.vals[i], y.vals[i]);
    return acc;
}

// orthogonal decomposition Lambda^1 (x) Lambda^p =
//   Lambda^{p+1}  (+)  Lambda^{p-1}  (+)  twistor kernel,
// for gamma given over an orthonormal frame; n = dim of the real tangent
// space, p = form degree of the values.
template <class R>
TwistorSplit<R> antisym_trace_split(const Metric<R>& mt, const FormGradient<R>& gamma,
                                    int p) {
    const int n = static_cast<int>(gamma.frame.size());
    TwistorSplit<R> out;
    out.antisym = fg_antisym(mt, gamma);
    out.trace = fg_trace(gamma);

    out.wedge_part.frame = gamma.frame;
    out.trace_part.frame = gamma.frame;
    out.twistor_part.frame = gamma.frame;
    for (int i = 0; i < n; ++i) {
        Form<R> wa = contract(gamma.frame[static_cast<std::size_t>(i)], out.antisym);
        wa *= cplx(1.0 / (p + 1));
        Form<R> tr = wedge(mt.vflat(gamma.frame[static_cast<std::size_t>(i)]), out.trace);
        tr *= cplx(1.0 / (n - p + 1));
        out.wedge_part.vals.push_back(wa);
        out.trace_part.vals.push_back(tr);
        out.twistor_part.vals.push_back(gamma.vals[static_cast<std::size_t>(i)] - wa - tr);
    }
    return out;
}

} // namespace kform
