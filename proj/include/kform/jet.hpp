#pragma once

// Truncated multivariate Taylor arithmetic ("jets") in n real variables.
// A Jet holds the coefficients of a polynomial of total degree <= order in
// graded-lex monomial ordering; arithmetic truncates at that order. Complex
// coefficients throughout; real-valued functions simply carry conjugation-
// symmetric data.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace kform {

using cplx = std::complex<double>;

struct JetSpec {
    int nvars = 0;
    int order = 0;
    // exponent vectors, graded-lex; exps[i] has size nvars
    std::vector<std::vector<std::uint8_t>> exps;
    // product triples (i, j, k): monomial_i * monomial_j = monomial_k,
    // restricted to deg_i + deg_j <= order
    struct Triple {
        std::uint32_t i, j, k;
    };
    std::vector<Triple> prod;
    // deriv[v][i] = {target index, factor} for d/dx_v of monomial i (or -1)
    std::vector<std::vector<std::pair<std::int32_t, double>>> deriv;
    // index of pure variable monomial x_v
    std::vector<std::uint32_t> var_index;

    std::size_t size() const { return exps.size(); }

    static const JetSpec* get(int nvars, int order);
};

namespace detail {

inline void enumerate_exps(int nvars, int order,
                           std::vector<std::vector<std::uint8_t>>& out) {
    std::vector<std::uint8_t> cur(static_cast<std::size_t>(nvars), 0);
    // graded order, lexicographic within each degree
    for (int d = 0; d <= order; ++d) {
        // iterate all exponent vectors with sum == d
        std::function<void(int, int)> rec = [&](int pos, int rem) {
            if (pos == nvars - 1) {
                cur[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(rem);
                out.push_back(cur);
                return;
            }
            for (int e = rem; e >= 0; --e) {
                cur[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(e);
                rec(pos + 1, rem - e);
            }
        };
        if (nvars == 0) {
            if (d == 0) out.push_back(cur);
        } else {
            rec(0, d);
        }
    }
}

} // namespace detail

inline const JetSpec* JetSpec::get(int nvars, int order) {
    static std::map<std::pair<int, int>, std::unique_ptr<JetSpec>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(nvars, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.get();

    auto spec = std::make_unique<JetSpec>();
    spec->nvars = nvars;
    spec->order = order;
    detail::enumerate_exps(nvars, order, spec->exps);

    // exponent vectors packed into a u64 key (nvars <= 8, entries <= 255)
    auto pack = [nvars](const std::vector<std::uint8_t>& e) {
        std::uint64_t k = 0;
        for (int v = 0; v < nvars; ++v)
            k |= static_cast<std::uint64_t>(e[static_cast<std::size_t>(v)]) << (8 * v);
        return k;
    };
    std::map<std::uint64_t, std::uint32_t> rank;
    for (std::uint32_t i = 0; i < spec->exps.size(); ++i) rank[pack(spec->exps[i])] = i;

    auto degree = [&](std::uint32_t i) {
        int d = 0;
        for (auto e : spec->exps[i]) d += e;
        return d;
    };

    for (std::uint32_t i = 0; i < spec->exps.size(); ++i) {
        for (std::uint32_t j = 0; j < spec->exps.size(); ++j) {
            if (degree(i) + degree(j) > order) continue;
            std::vector<std::uint8_t> sum(static_cast<std::size_t>(nvars));
            for (int v = 0; v < nvars; ++v)
                sum[static_cast<std::size_t>(v)] =
                    static_cast<std::uint8_t>(spec->exps[i][static_cast<std::size_t>(v)] +
                                              spec->exps[j][static_cast<std::size_t>(v)]);
            spec->prod.push_back({i, j, rank.at(pack(sum))});
        }
    }

    spec->deriv.assign(static_cast<std::size_t>(nvars), {});
    for (int v = 0; v < nvars; ++v) {
        auto& dv = spec->deriv[static_cast<std::size_t>(v)];
        dv.assign(spec->exps.size(), {-1, 0.0});
        for (std::uint32_t i = 0; i < spec->exps.size(); ++i) {
            if (spec->exps[i][static_cast<std::size_t>(v)] == 0) continue;
            auto e = spec->exps[i];
            double fac = e[static_cast<std::size_t>(v)];
            e[static_cast<std::size_t>(v)] -= 1;
            dv[i] = {static_cast<std::int32_t>(rank.at(pack(e))), fac};
        }
    }

    spec->var_index.assign(static_cast<std::size_t>(nvars), 0);
    if (order >= 1) {
        for (int v = 0; v < nvars; ++v) {
            std::vector<std::uint8_t> e(static_cast<std::size_t>(nvars), 0);
            e[static_cast<std::size_t>(v)] = 1;
            spec->var_index[static_cast<std::size_t>(v)] = rank.at(pack(e));
        }
    }

    auto* ptr = spec.get();
    cache[key] = std::move(spec);
    return ptr;
}

class Jet {
  public:
    Jet() = default;
    Jet(const JetSpec* spec, cplx value) : spec_(spec), c_(spec->size(), cplx(0)) {
        if (c_.empty()) throw std::invalid_argument("jet: negative truncation order");
        c_[0] = value;
    }
    static Jet constant(const JetSpec* spec, cplx value) { return Jet(spec, value); }
    static Jet variable(const JetSpec* spec, int v, cplx value) {
        Jet j(spec, value);
        if (spec->order >= 1) j.c_[spec->var_index[static_cast<std::size_t>(v)]] = 1.0;
        return j;
    }

    const JetSpec* spec() const { return spec_; }
    cplx value() const { return c_.empty() ? cplx(0) : c_[0]; }
    const std::vector<cplx>& coeffs() const { return c_; }
    std::vector<cplx>& coeffs() { return c_; }

    // coefficient of the monomial with given exponents, times its factorial
    // weight, i.e. the actual partial derivative at the base point
    double factorial_weight(std::size_t idx) const {
        double f = 1.0;
        for (auto e : spec_->exps[idx])
            for (int t = 2; t <= e; ++t) f *= t;
        return f;
    }

    Jet& operator+=(const Jet& o) {
        if (spec_ == o.spec_) {
            for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        } else if (spec_->order > o.spec_->order) {
            *this = truncated(o.spec_);
            *this += o;
        } else {
            *this += o.truncated(spec_);
        }
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        if (spec_ == o.spec_) {
            for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        } else if (spec_->order > o.spec_->order) {
            *this = truncated(o.spec_);
            *this -= o;
        } else {
            *this -= o.truncated(spec_);
        }
        return *this;
    }
    Jet& operator*=(cplx s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    Jet& operator+=(cplx s) {
        c_[0] += s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Jet operator*(Jet a, cplx s) { return a *= s; }
    friend Jet operator*(cplx s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, cplx s) { return a += s; }
    friend Jet operator+(cplx s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, cplx s) { return a += -s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        const Jet *x = &a, *y = &b;
        Jet tmpa, tmpb;
        if (a.spec_ != b.spec_) {
            // truncate to the lower order
            if (a.spec_->order > b.spec_->order) {
                tmpa = a.truncated(b.spec_);
                x = &tmpa;
            } else {
                tmpb = b.truncated(a.spec_);
                y = &tmpb;
            }
        }
        const JetSpec* s = x->spec_;
        Jet r(s, 0.0);
        for (const auto& t : s->prod) r.c_[t.k] += x->c_[t.i] * y->c_[t.j];
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) { return a * b.inverse(); }
    friend Jet operator/(Jet a, cplx s) { return a *= (1.0 / s); }
    friend Jet operator/(cplx s, const Jet& b) { return b.inverse() * s; }

    Jet truncated(const JetSpec* target) const {
        assert(target->nvars == spec_->nvars && target->order <= spec_->order);
        Jet r(target, 0.0);
        // graded ordering means the first target->size() coefficients line up
        std::copy(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(target->size()),
                  r.c_.begin());
        return r;
    }

    // nilpotent part (value removed)
    Jet nilpotent() const {
        Jet r = *this;
        r.c_[0] = 0.0;
        return r;
    }

    // compose the power series sum coef[k] * (this - value)^k
    Jet series(const std::vector<cplx>& coef) const {
        Jet n = nilpotent();
        Jet acc(spec_, coef.empty() ? cplx(0) : coef[0]);
        Jet pw(spec_, 1.0);
        for (std::size_t k = 1; k < coef.size(); ++k) {
            pw = pw * n;
            Jet term = pw;
            term *= coef[k];
            acc += term;
        }
        return acc;
    }

    Jet inverse() const {
        cplx v = value();
        if (std::abs(v) == 0.0) throw std::domain_error("jet inverse at zero value");
        std::vector<cplx> coef(static_cast<std::size_t>(spec_->order) + 1);
        cplx p = 1.0 / v;
        for (std::size_t k = 0; k < coef.size(); ++k) {
            coef[k] = p;
            p *= -1.0 / v;
        }
        return series(coef);
    }

    Jet exp() const {
        cplx v = std::exp(value());
        std::vector<cplx> coef(static_cast<std::size_t>(spec_->order) + 1);
        double fact = 1.0;
        for (std::size_t k = 0; k < coef.size(); ++k) {
            if (k > 0) fact *= static_cast<double>(k);
            coef[k] = v / fact;
        }
        return series(coef);
    }

    Jet log() const {
        cplx v = value();
        if (std::abs(v) == 0.0) throw std::domain_error("jet log at zero value");
        std::vector<cplx> coef(static_cast<std::size_t>(spec_->order) + 1);
        coef[0] = std::log(v);
        cplx p = 1.0 / v;
        for (std::size_t k = 1; k < coef.size(); ++k) {
            coef[k] = p / static_cast<double>(k) * ((k % 2 == 1) ? 1.0 : -1.0);
            p /= v;
        }
        return series(coef);
    }

    // real power; value must be nonzero (principal branch for complex values)
    Jet pow(double e) const {
        cplx v = value();
        if (std::abs(v) == 0.0) throw std::domain_error("jet pow at zero value");
        std::vector<cplx> coef(static_cast<std::size_t>(spec_->order) + 1);
        cplx p = std::pow(v, e);
        double fact = 1.0;
        double falling = 1.0;
        for (std::size_t k = 0; k < coef.size(); ++k) {
            if (k > 0) {
                fact *= static_cast<double>(k);
                falling *= (e - static_cast<double>(k) + 1.0);
            }
            coef[k] = (k == 0) ? p : p / std::pow(v, static_cast<double>(k)) * falling / fact;
        }
        return series(coef);
    }

    Jet sqrt() const { return pow(0.5); }

    Jet conj() const {
        Jet r = *this;
        for (auto& x : r.c_) x = std::conj(x);
        return r;
    }
    Jet real() const {
        Jet r = *this;
        for (auto& x : r.c_) x = cplx(x.real(), 0.0);
        return r;
    }
    Jet imag() const {
        Jet r = *this;
        for (auto& x : r.c_) x = cplx(x.imag(), 0.0);
        return r;
    }

    // d/dx_v, order drops by one. Monomial ranks of degree <= order-1 agree
    // between the two specs (graded prefix property).
    Jet deriv(int v) const {
        const JetSpec* lower = JetSpec::get(spec_->nvars, spec_->order - 1);
        Jet r(lower, 0.0);
        const auto& dv = spec_->deriv[static_cast<std::size_t>(v)];
        for (std::uint32_t i = 0; i < spec_->size(); ++i) {
            if (dv[i].first < 0) continue;
            if (static_cast<std::size_t>(dv[i].first) < lower->size())
                r.c_[static_cast<std::size_t>(dv[i].first)] += dv[i].second * c_[i];
        }
        return r;
    }

  private:
    const JetSpec* spec_ = nullptr;
    std::vector<cplx> c_;
};

// Wirtinger derivatives for variable layout (x_1, y_1, ..., x_m, y_m),
// z_k = x_k + i y_k.
inline Jet wirtinger_d(const Jet& f, int k) {
    return (f.deriv(2 * k) - cplx(0, 1) * f.deriv(2 * k + 1)) * 0.5;
}
inline Jet wirtinger_dbar(const Jet& f, int k) {
    return (f.deriv(2 * k) + cplx(0, 1) * f.deriv(2 * k + 1)) * 0.5;
}

} // namespace kform
