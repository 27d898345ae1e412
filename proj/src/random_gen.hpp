// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "algebroid.hpp"
#include "jet.hpp"
#include "linear_groupoid.hpp"
#include "polynomial.hpp"

#include <random>

namespace jetg {

/// Seeded generators for property suites. Deterministic for a fixed seed.
class RandomGen {
public:
    explicit RandomGen(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& engine() { return rng_; }

    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    /// Rational with numerator and denominator bounded by `bound` in magnitude.
    Rational rational(int bound = 10) {
        const int num = uniform_int(-bound, bound);
        const int den = uniform_int(1, bound);
        return rat(num, den);
    }
    Rational nonzero_rational(int bound = 10) {
        Rational q = rational(bound);
        while (q == 0) q = rational(bound);
        return q;
    }

    std::vector<Rational> point(int n, int bound = 10) {
        std::vector<Rational> out;
        for (int i = 0; i < n; ++i) out.push_back(rational(bound));
        return out;
    }

    /// Sparse-ish random polynomial of total degree <= deg.
    Polynomial<Rational> polynomial(int n, int deg, int bound = 10, double keep = 0.6) {
        Polynomial<Rational> p(n);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (const auto& a : multi_indices(n, 0, deg))
            if (u(rng_) < keep) p.add_term(a, rational(bound));
        return p;
    }

    PolyMap<Rational> poly_map(int n, int m, int deg, int bound = 10, double keep = 0.6) {
        PolyMap<Rational> out;
        for (int c = 0; c < m; ++c) out.push_back(polynomial(n, deg, bound, keep));
        return out;
    }

    /// Invertible jet with coefficients bounded by `bound`; the Jacobian is
    /// resampled until nonsingular.
    TruncatedJet<Rational> invertible_jet(int n, int k, const std::vector<Rational>& base, int bound = 10) {
        TruncatedJet<Rational> j;
        j.n = j.m = n;
        j.k = k;
        j.base = base;
        j.value = point(n, bound);
        for (const auto& a : multi_indices(n, 1, k)) {
            std::vector<Rational> v;
            for (int c = 0; c < n; ++c) v.push_back(rational(bound));
            j.coeffs.emplace(a, std::move(v));
        }
        j.normalize();
        while (determinant(j.jacobian()) == 0) {
            for (int i = 0; i < n; ++i) {
                std::vector<Rational> v;
                for (int c = 0; c < n; ++c) v.push_back(rational(bound));
                j.coeffs[MultiIndex::unit(n, i)] = std::move(v);
            }
            j.normalize();
        }
        return j;
    }

    /// (a, b, c) with a composable with b and b composable with c.
    std::array<TruncatedJet<Rational>, 3> composable_triple(int n, int k, int bound = 10) {
        auto c = invertible_jet(n, k, point(n, bound), bound);
        auto b = invertible_jet(n, k, c.value, bound);
        auto a = invertible_jet(n, k, b.value, bound);
        return {a, b, c};
    }

    Mat<Rational> matrix(int m, int bound = 10) {
        Mat<Rational> out(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) out(i, j) = rational(bound);
        return out;
    }

    PolyMatrix<Rational> poly_matrix(int n, int m, int deg, int bound = 10, double keep = 0.5) {
        PolyMatrix<Rational> out{n, m, {}};
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (const auto& a : multi_indices(n, 0, deg))
            if (u(rng_) < keep) out.add_term(a, matrix(m, bound));
        return out;
    }

    TrivialSection<Rational> trivial_section(int n, int m, int deg, int bound = 10) {
        return {poly_map(n, n, deg, bound), poly_matrix(n, m, deg, bound)};
    }

    JetSection<Rational> jet_section(int n, int k, int deg, int bound = 10, int max_terms = 2) {
        JetSection<Rational> out;
        out.n = n;
        out.k = k;
        const int terms = uniform_int(1, max_terms);
        for (int i = 0; i < terms; ++i)
            out.terms.emplace_back(polynomial(n, deg, bound), poly_map(n, n, deg, bound));
        out.merge();
        if (out.terms.empty())
            out.terms.emplace_back(Polynomial<Rational>::constant(n, 1), identity_map<Rational>(n));
        return out;
    }

    GroupJetSection<Rational> group_jet_section(int n, int m, int k, int deg, int bound = 10, int max_terms = 2) {
        GroupJetSection<Rational> out;
        out.n = n;
        out.m = m;
        out.k = k;
        const int terms = uniform_int(1, max_terms);
        for (int i = 0; i < terms; ++i)
            out.terms.emplace_back(polynomial(n, deg, bound), poly_matrix(n, m, deg, bound));
        out.merge();
        if (out.terms.empty())
            out.terms.emplace_back(Polynomial<Rational>::constant(n, 1),
                                   PolyMatrix<Rational>::constant(n, Mat<Rational>::identity(m)));
        return out;
    }

    LinearOperator<Rational> linear_operator(int n, int m, int deg, int bound = 10) {
        return {poly_map(n, n, deg, bound), poly_matrix(n, m, deg, bound)};
    }

    VectorSection<Rational> vector_section(int n, int m, int deg, int bound = 10) {
        return poly_map(n, m, deg, bound);
    }

private:
    std::mt19937_64 rng_;
};

/// Full symbolic composition of polynomial maps (no truncation).
/// Test oracle for the truncated composition path.
template <typename T>
PolyMap<T> compose_poly_maps(const PolyMap<T>& outer, const PolyMap<T>& inner) {
    const int n = inner.empty() ? 0 : inner[0].dim();
    PolyMap<T> out;
    for (const auto& comp : outer) {
        Polynomial<T> acc(n);
        for (const auto& [beta, c] : comp.terms()) {
            Polynomial<T> term = Polynomial<T>::constant(n, c);
            for (int i = 0; i < beta.dim(); ++i)
                for (int e = 0; e < beta[i]; ++e) term = term * inner[static_cast<size_t>(i)];
            acc = acc + term;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

} // namespace jetg
