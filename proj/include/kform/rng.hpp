#pragma once

// Deterministic random generation: splitmix64 core so that reports are
// reproducible bit-for-bit for a given seed across platforms.

#include <cstdint>
#include <vector>

#include "kform/form.hpp"
#include "kform/linalg.hpp"

namespace kform {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    cplx complex_unit_box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    int integer(int lo, int hi) { // inclusive
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Form<cplx> form(int m, int p, int q) {
        Form<cplx> f(m);
        for (Mask I = 0; I < (Mask(1) << m); ++I) {
            if (mask_size(I) != p) continue;
            for (Mask J = 0; J < (Mask(1) << m); ++J)
                if (mask_size(J) == q) f.add_term(I, J, complex_unit_box());
        }
        return f;
    }

    Vec<cplx> real_vector(int m) {
        std::vector<cplx> h(static_cast<std::size_t>(m));
        for (auto& x : h) x = complex_unit_box();
        return Vec<cplx>::real_from_h(m, h);
    }

    Vec<cplx> complex_vector(int m) {
        Vec<cplx> v(m);
        for (int k = 0; k < m; ++k) {
            v.h[k] = complex_unit_box();
            v.a[k] = complex_unit_box();
        }
        return v;
    }

    // random Hermitian positive definite matrix, A A^* + eps
    Mat<cplx> herm_pd(int n, double diag_boost = 0.5) {
        Mat<cplx> a(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = complex_unit_box();
        Mat<cplx> r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                cplx acc = (i == j) ? cplx(diag_boost * n) : cplx(0);
                for (int k = 0; k < n; ++k) acc += a(i, k) * std::conj(a(j, k));
                r(i, j) = acc;
            }
        return r;
    }

    Mat<cplx> herm(int n) {
        Mat<cplx> r(n);
        for (int i = 0; i < n; ++i) {
            r(i, i) = uniform(-1.0, 1.0);
            for (int j = i + 1; j < n; ++j) {
                r(i, j) = complex_unit_box();
                r(j, i) = std::conj(r(i, j));
            }
        }
        return r;
    }

  private:
    std::uint64_t state_;
};

} // namespace kform
