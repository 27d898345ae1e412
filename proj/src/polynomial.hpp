// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "multiindex.hpp"
#include "rational.hpp"

#include <map>
#include <vector>

namespace jetg {

/// Sparse multivariate polynomial in n variables over T.
/// Terms are kept in graded-lex order; zero coefficients are never stored.
template <typename T>
class Polynomial {
public:
    using TermMap = std::map<MultiIndex, T, GradedLex>;

    Polynomial() = default;
    explicit Polynomial(int n) : n_(n) {}
    Polynomial(int n, TermMap terms) : n_(n), terms_(std::move(terms)) { prune(); }

    static Polynomial constant(int n, const T& c) {
        Polynomial p(n);
        p.set(MultiIndex::zeros(n), c);
        return p;
    }
    /// The coordinate function x_i.
    static Polynomial variable(int n, int i) {
        Polynomial p(n);
        p.set(MultiIndex::unit(n, i), T(1));
        return p;
    }

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const {
        int d = 0;
        for (const auto& [a, c] : terms_) d = std::max(d, a.order());
        return d;
    }
    const TermMap& terms() const { return terms_; }

    T coeff(const MultiIndex& a) const {
        const auto it = terms_.find(a);
        return it == terms_.end() ? T(0) : it->second;
    }
    void set(const MultiIndex& a, const T& c) {
        if (a.dim() != n_) throw DomainError("polynomial term dimension mismatch");
        if (c == T(0))
            terms_.erase(a);
        else
            terms_[a] = c;
    }
    void add_term(const MultiIndex& a, const T& c) {
        if (c == T(0)) return;
        auto [it, fresh] = terms_.try_emplace(a, c);
        if (!fresh) {
            it->second += c;
            if (it->second == T(0)) terms_.erase(it);
        }
    }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial out(*this);
        for (const auto& [a, c] : o.terms_) out.add_term(a, c);
        return out;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial out(*this);
        for (const auto& [a, c] : o.terms_) out.add_term(a, -c);
        return out;
    }
    Polynomial operator-() const {
        Polynomial out(*this);
        for (auto& [a, c] : out.terms_) c = -c;
        return out;
    }
    Polynomial operator*(const Polynomial& o) const {
        Polynomial out(n_);
        for (const auto& [a, ca] : terms_)
            for (const auto& [b, cb] : o.terms_) out.add_term(a.plus(b), ca * cb);
        return out;
    }
    Polynomial scaled(const T& c) const {
        Polynomial out(n_);
        if (c == T(0)) return out;
        for (const auto& [a, ca] : terms_) out.terms_.emplace(a, ca * c);
        return out;
    }

    bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    /// d/dx_j.
    Polynomial derivative(int j) const {
        Polynomial out(n_);
        for (const auto& [a, c] : terms_) {
            if (a[j] == 0) continue;
            out.terms_.emplace(a.minus_unit(j), c * T(a[j]));
        }
        return out;
    }

    template <typename S>
    S eval(const std::vector<S>& x) const {
        S acc(0);
        for (const auto& [a, c] : terms_) {
            S t = scalar_cast<S>(c);
            for (int i = 0; i < n_; ++i)
                for (int e = 0; e < a[i]; ++e) t *= x[i];
            acc += t;
        }
        return acc;
    }

    /// Drop every term of total degree > k.
    Polynomial truncated(int k) const {
        Polynomial out(n_);
        for (const auto& [a, c] : terms_) {
            if (a.order() > k) break; // graded order: the tail is all higher degree
            out.terms_.emplace(a, c);
        }
        return out;
    }

    template <typename S>
    static S scalar_cast(const T& c) {
        if constexpr (std::is_same_v<S, double> && std::is_same_v<T, Rational>)
            return to_double(c);
        else
            return S(c);
    }

private:
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (it->second == T(0)) ? terms_.erase(it) : std::next(it);
    }

    int n_ = 0;
    TermMap terms_;
};

/// Polynomial map Q^n -> Q^m: one polynomial per target component.
/// Doubles as a vector field when m == n.
template <typename T>
using PolyMap = std::vector<Polynomial<T>>;

template <typename T>
PolyMap<T> identity_map(int n) {
    PolyMap<T> out;
    for (int i = 0; i < n; ++i) out.push_back(Polynomial<T>::variable(n, i));
    return out;
}

template <typename T>
bool map_is_zero(const PolyMap<T>& f) {
    for (const auto& p : f)
        if (!p.is_zero()) return false;
    return true;
}

template <typename T>
PolyMap<T> map_add(const PolyMap<T>& f, const PolyMap<T>& g) {
    PolyMap<T> out;
    for (size_t i = 0; i < f.size(); ++i) out.push_back(f[i] + g[i]);
    return out;
}

template <typename T>
PolyMap<T> map_scaled(const PolyMap<T>& f, const T& c) {
    PolyMap<T> out;
    for (const auto& p : f) out.push_back(p.scaled(c));
    return out;
}

/// Directional derivative of a scalar polynomial along a vector field.
template <typename T>
Polynomial<T> lie_derivative(const PolyMap<T>& theta, const Polynomial<T>& f) {
    Polynomial<T> out(f.dim());
    for (size_t j = 0; j < theta.size(); ++j) out = out + theta[j] * f.derivative(static_cast<int>(j));
    return out;
}

/// Jacobi-Lie bracket of polynomial vector fields:
/// [theta, eta]^i = theta^j d_j eta^i - eta^j d_j theta^i.
template <typename T>
PolyMap<T> vf_bracket(const PolyMap<T>& theta, const PolyMap<T>& eta) {
    PolyMap<T> out;
    for (size_t i = 0; i < theta.size(); ++i)
        out.push_back(lie_derivative(theta, eta[i]) - lie_derivative(eta, theta[i]));
    return out;
}

} // namespace jetg
