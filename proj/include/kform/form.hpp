#pragma once

// Complex (p,q)-forms on C^m at a point, with coefficients in a scalar ring R
// (complex numbers or jets). A Form stores coefficients over the basis
// dz^I ^ dzbar^J, I and J strictly increasing multi-indices encoded as
// bitmasks. Mixed total types are allowed: frame sums produce them.

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "kform/jet.hpp"

namespace kform {

// ---- ring helpers -------------------------------------------------------

inline cplx kconj(const cplx& x) { return std::conj(x); }
inline Jet kconj(const Jet& x) { return x.conj(); }
inline cplx kreal(const cplx& x) { return cplx(x.real(), 0.0); }
inline Jet kreal(const Jet& x) { return x.real(); }
inline cplx ksqrt(const cplx& x) { return std::sqrt(x); }
inline Jet ksqrt(const Jet& x) { return x.sqrt(); }
inline cplx kvalue(const cplx& x) { return x; }
inline cplx kvalue(const Jet& x) { return x.value(); }
inline double kabs(const cplx& x) { return std::abs(x); }
inline double kabs(const Jet& x) { return std::abs(x.value()); }

// ---- multi-index masks --------------------------------------------------

using Mask = std::uint32_t;

inline int mask_size(Mask m) { return std::popcount(m); }

// number of set bits of m strictly below bit k
inline int mask_pos(Mask m, int k) { return std::popcount(m & ((Mask(1) << k) - 1)); }

// parity sign for sorting the concatenation of two disjoint increasing tuples
inline int shuffle_sign(Mask a, Mask b) {
    int inv = 0;
    Mask bb = b;
    while (bb) {
        int k = std::countr_zero(bb);
        bb &= bb - 1;
        inv += std::popcount(a >> (k + 1));
    }
    return (inv & 1) ? -1 : 1;
}

inline std::vector<int> mask_bits(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

// ---- tangent vectors ----------------------------------------------------

// Complexified tangent vector: h are the d/dz components, a the d/dzbar
// components. A real vector has a = conj(h).
template <class R>
struct Vec {
    int m = 0;
    std::vector<R> h, a;

    Vec() = default;
    explicit Vec(int mm) : m(mm), h(mm, R{}), a(mm, R{}) {}

    static Vec real_from_h(int m, const std::vector<R>& hh) {
        Vec v(m);
        v.h = hh;
        for (int k = 0; k < m; ++k) v.a[k] = kconj(hh[k]);
        return v;
    }

    Vec conj() const {
        Vec v(m);
        for (int k = 0; k < m; ++k) {
            v.h[k] = kconj(a[k]);
            v.a[k] = kconj(h[k]);
        }
        return v;
    }

    // J acts as +i on T^{1,0}, -i on T^{0,1}
    Vec jay() const {
        Vec v = *this;
        for (int k = 0; k < m; ++k) {
            v.h[k] = v.h[k] * cplx(0, 1);
            v.a[k] = v.a[k] * cplx(0, -1);
        }
        return v;
    }

    // type projections as complexified vectors
    Vec part10() const {
        Vec v = *this;
        for (int k = 0; k < m; ++k) v.a[k] = v.a[k] * cplx(0.0);
        return v;
    }
    Vec part01() const {
        Vec v = *this;
        for (int k = 0; k < m; ++k) v.h[k] = v.h[k] * cplx(0.0);
        return v;
    }

    Vec& operator+=(const Vec& o) {
        for (int k = 0; k < m; ++k) {
            h[k] += o.h[k];
            a[k] += o.a[k];
        }
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int k = 0; k < m; ++k) {
            h[k] -= o.h[k];
            a[k] -= o.a[k];
        }
        return *this;
    }
    Vec& operator*=(const R& s) {
        for (int k = 0; k < m; ++k) {
            h[k] = h[k] * s;
            a[k] = a[k] * s;
        }
        return *this;
    }
    friend Vec operator+(Vec x, const Vec& y) { return x += y; }
    friend Vec operator-(Vec x, const Vec& y) { return x -= y; }
    friend Vec operator*(Vec x, const R& s) { return x *= s; }
    friend Vec operator*(const R& s, Vec x) { return x *= s; }
};

// ---- forms --------------------------------------------------------------

template <class R>
struct Form {
    int m = 0;
    // key packs (holomorphic mask << 32) | antiholomorphic mask
    std::map<std::uint64_t, R> c;

    Form() = default;
    explicit Form(int mm) : m(mm) {}

    static std::uint64_t key(Mask I, Mask J) {
        return (static_cast<std::uint64_t>(I) << 32) | J;
    }
    static Mask key_hol(std::uint64_t k) { return static_cast<Mask>(k >> 32); }
    static Mask key_anti(std::uint64_t k) { return static_cast<Mask>(k & 0xffffffffu); }

    static Form basis(int m, Mask I, Mask J, R coeff) {
        Form f(m);
        f.c[key(I, J)] = std::move(coeff);
        return f;
    }
    static Form scalar(int m, R v) { return basis(m, 0, 0, std::move(v)); }

    bool empty() const { return c.empty(); }

    void add_term(Mask I, Mask J, const R& v) {
        auto k = key(I, J);
        auto it = c.find(k);
        if (it == c.end())
            c.emplace(k, v);
        else
            it->second += v;
    }

    Form& operator+=(const Form& o) {
        for (const auto& [k, v] : o.c) {
            auto it = c.find(k);
            if (it == c.end())
                c.emplace(k, v);
            else
                it->second += v;
        }
        return *this;
    }
    Form& operator-=(const Form& o) {
        for (const auto& [k, v] : o.c) {
            auto it = c.find(k);
            if (it == c.end()) {
                R neg = v;
                neg *= cplx(-1.0);
                c.emplace(k, std::move(neg));
            } else {
                it->second -= v;
            }
        }
        return *this;
    }
    Form& operator*=(const cplx& s) {
        for (auto& [k, v] : c) v *= s;
        return *this;
    }
    Form& operator*=(const R& s)
        requires(!std::is_same_v<R, cplx>)
    {
        for (auto& [k, v] : c) v = v * s;
        return *this;
    }
    friend Form operator+(Form x, const Form& y) { return x += y; }
    friend Form operator-(Form x, const Form& y) { return x -= y; }
    friend Form operator*(Form x, const cplx& s) { return x *= s; }
    friend Form operator*(const cplx& s, Form x) { return x *= s; }
    friend Form operator-(Form x) { return x *= cplx(-1.0); }
    friend Form scale(Form x, const R& s) { return x *= s; }

    // component of pure bidegree (p,q)
    Form bidegree(int p, int q) const {
        Form out(m);
        for (const auto& [k, v] : c)
            if (mask_size(key_hol(k)) == p && mask_size(key_anti(k)) == q) out.c[k] = v;
        return out;
    }

    bool pure_bidegree(int& p, int& q) const {
        bool first = true;
        for (const auto& [k, v] : c) {
            (void)v;
            int pp = mask_size(key_hol(k)), qq = mask_size(key_anti(k));
            if (first) {
                p = pp;
                q = qq;
                first = false;
            } else if (p != pp || q != qq) {
                return false;
            }
        }
        return !first;
    }

    // J alpha(X_1,...) = alpha(J X_1, ...): multiplies a (p,q) term by i^(p-q)
    Form jact() const {
        Form out(m);
        for (const auto& [k, v] : c) {
            int d = mask_size(key_hol(k)) - mask_size(key_anti(k));
            int r = ((d % 4) + 4) % 4;
            static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            R w = v;
            w *= ipow[r];
            out.c[k] = std::move(w);
        }
        return out;
    }

    // complex conjugate form: entry (I,J) -> (J,I) with sign (-1)^(|I||J|)
    Form conj() const {
        Form out(m);
        for (const auto& [k, v] : c) {
            Mask I = key_hol(k), J = key_anti(k);
            int sg = (mask_size(I) * mask_size(J)) % 2 ? -1 : 1;
            R w = kconj(v);
            w *= cplx(static_cast<double>(sg));
            out.add_term(J, I, w);
        }
        return out;
    }

    double max_abs() const {
        double r = 0.0;
        for (const auto& [k, v] : c) r = std::max(r, kabs(v));
        return r;
    }
};

template <class R>
Form<R> wedge(const Form<R>& x, const Form<R>& y) {
    if (x.m != y.m) throw std::invalid_argument("wedge: dimension mismatch");
    Form<R> out(x.m);
    for (const auto& [ka, va] : x.c) {
        Mask I1 = Form<R>::key_hol(ka), J1 = Form<R>::key_anti(ka);
        for (const auto& [kb, vb] : y.c) {
            Mask I2 = Form<R>::key_hol(kb), J2 = Form<R>::key_anti(kb);
            if ((I1 & I2) || (J1 & J2)) continue;
            int sg = shuffle_sign(I1, I2) * shuffle_sign(J1, J2);
            if ((mask_size(I2) * mask_size(J1)) % 2) sg = -sg;
            R w = va * vb;
            w *= cplx(static_cast<double>(sg));
            out.add_term(I1 | I2, J1 | J2, w);
        }
    }
    return out;
}

// interior product with the basis vector d/dz_k (0-based k)
template <class R>
Form<R> icontract_hol(int k, const Form<R>& f) {
    Form<R> out(f.m);
    Mask bit = Mask(1) << k;
    for (const auto& [key, v] : f.c) {
        Mask I = Form<R>::key_hol(key), J = Form<R>::key_anti(key);
        if (!(I & bit)) continue;
        int sg = (mask_pos(I, k) % 2) ? -1 : 1;
        R w = v;
        w *= cplx(static_cast<double>(sg));
        out.add_term(I & ~bit, J, w);
    }
    return out;
}

// interior product with d/dzbar_k
template <class R>
Form<R> icontract_anti(int k, const Form<R>& f) {
    Form<R> out(f.m);
    Mask bit = Mask(1) << k;
    for (const auto& [key, v] : f.c) {
        Mask I = Form<R>::key_hol(key), J = Form<R>::key_anti(key);
        if (!(J & bit)) continue;
        int sg = ((mask_size(I) + mask_pos(J, k)) % 2) ? -1 : 1;
        R w = v;
        w *= cplx(static_cast<double>(sg));
        out.add_term(I, J & ~bit, w);
    }
    return out;
}

// interior product with a complexified tangent vector
template <class R>
Form<R> contract(const Vec<R>& X, const Form<R>& f) {
    Form<R> out(f.m);
    for (int k = 0; k < f.m; ++k) {
        if (kabs(X.h[k]) != 0.0 || !std::is_same_v<R, cplx>) {
            Form<R> t = icontract_hol(k, f);
            t *= X.h[k];
            out += t;
        }
        if (kabs(X.a[k]) != 0.0 || !std::is_same_v<R, cplx>) {
            Form<R> t = icontract_anti(k, f);
            t *= X.a[k];
            out += t;
        }
    }
    return out;
}

// 1-form from coefficient vectors: sum hol[k] dz^k + anti[k] dzbar^k
template <class R>
Form<R> one_form(int m, const std::vector<R>& hol, const std::vector<R>& anti) {
    Form<R> f(m);
    for (int k = 0; k < m; ++k) {
        f.add_term(Mask(1) << k, 0, hol[k]);
        f.add_term(0, Mask(1) << k, anti[k]);
    }
    return f;
}

inline Form<cplx> value_form(const Form<Jet>& f) {
    Form<cplx> out(f.m);
    for (const auto& [k, v] : f.c) out.c[k] = v.value();
    return out;
}

template <class R>
Form<Jet> to_jet_form(const Form<cplx>& f, const JetSpec* spec) {
    Form<Jet> out(f.m);
    for (const auto& [k, v] : f.c) out.c[k] = Jet::constant(spec, v);
    return out;
}

} // namespace kform
