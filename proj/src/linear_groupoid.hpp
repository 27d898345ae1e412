// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "algebroid.hpp"

namespace jetg {

/// Polynomial section of the trivial bundle M x Q^m.
template <typename T>
using VectorSection = PolyMap<T>; // m polynomials over n variables

/// First-order operator with symbol theta (x) Id, stored structurally:
/// delta(s) = -h.s + L_theta s.
template <typename T>
struct LinearOperator {
    PolyMap<T> theta;
    PolyMatrix<T> h;

    int dim() const { return static_cast<int>(theta.size()); }
    int fibre_dim() const { return h.m; }

    LinearOperator scaled_by_poly(const Polynomial<T>& f) const {
        LinearOperator out;
        for (const auto& p : theta) out.theta.push_back(p * f);
        out.h = h.scaled_by_poly(f);
        return out;
    }
    LinearOperator operator+(const LinearOperator& o) const { return {map_add(theta, o.theta), h + o.h}; }
    LinearOperator operator-() const { return {map_scaled(theta, T(-1)), -h}; }

    bool operator==(const LinearOperator& o) const { return theta == o.theta && h == o.h; }
    bool is_zero() const { return map_is_zero(theta) && h.is_zero(); }
};

/// delta(s) = -h.s + L_theta(s), exact polynomial output.
template <typename T>
VectorSection<T> apply(const LinearOperator<T>& op, const VectorSection<T>& s) {
    if (static_cast<int>(s.size()) != op.fibre_dim())
        throw DomainError("operator/section fibre dimension mismatch");
    const int n = op.dim(), m = op.fibre_dim();
    VectorSection<T> out;
    for (int r = 0; r < m; ++r) out.push_back(Polynomial<T>(n));
    // -h.s
    for (const auto& [a, c] : op.h.terms) {
        Polynomial<T> mono(n);
        mono.set(a, T(1));
        for (int r = 0; r < m; ++r)
            for (int col = 0; col < m; ++col) {
                if (c(r, col) == T(0)) continue;
                out[static_cast<size_t>(r)] =
                    out[static_cast<size_t>(r)] - (mono * s[static_cast<size_t>(col)]).scaled(c(r, col));
            }
    }
    // + L_theta s
    for (int r = 0; r < m; ++r)
        out[static_cast<size_t>(r)] = out[static_cast<size_t>(r)] + lie_derivative(op.theta, s[static_cast<size_t>(r)]);
    return out;
}

/// Verifies the symbol relation delta(f s) - f delta(s) = <theta, df> s, exactly.
template <typename T>
bool symbol_check(const LinearOperator<T>& op, const Polynomial<T>& f, const VectorSection<T>& s) {
    VectorSection<T> fs;
    for (const auto& p : s) fs.push_back(p * f);
    const VectorSection<T> lhs_full = apply(op, fs);
    const VectorSection<T> ds = apply(op, s);
    const Polynomial<T> df = lie_derivative(op.theta, f);
    for (size_t r = 0; r < s.size(); ++r) {
        const Polynomial<T> lhs = lhs_full[r] - f * ds[r];
        const Polynomial<T> rhs = df * s[r];
        if (!(lhs == rhs)) return false;
    }
    return true;
}

/// Structural commutator ([theta,theta'], -[h,h'] + L_theta h' - L_theta' h)
/// with [h,h'] = h h' - h' h; agrees with delta o delta' - delta' o delta.
template <typename T>
LinearOperator<T> commutator(const LinearOperator<T>& a, const LinearOperator<T>& b) {
    if (a.dim() != b.dim() || a.fibre_dim() != b.fibre_dim())
        throw DomainError("operator dimension mismatch");
    LinearOperator<T> out;
    out.theta = vf_bracket(a.theta, b.theta);
    out.h = -(a.h * b.h - b.h * a.h) + b.h.lie_along(a.theta) - a.h.lie_along(b.theta);
    return out;
}

/// The isomorphism with trivial-groupoid sections is the literal pairing.
template <typename T>
LinearOperator<T> operator_from_section(const TrivialSection<T>& s) {
    return {s.theta, s.h};
}
template <typename T>
TrivialSection<T> section_from_operator(const LinearOperator<T>& op) {
    return {op.theta, op.h};
}

// ---------------------------------------------------------------------------
// Prolongation j_k delta acting on jet sections of the bundle.
// ---------------------------------------------------------------------------

/// Term-list jet section of M x Q^m: sum f_i . j_k s_i.
template <typename T>
struct VectorJetSection {
    int n = 0;
    int m = 0;
    int k = 0;
    std::vector<std::pair<Polynomial<T>, VectorSection<T>>> terms;

    static VectorJetSection holonomic(int n, int k, const VectorSection<T>& s) {
        VectorJetSection out;
        out.n = n;
        out.m = static_cast<int>(s.size());
        out.k = k;
        out.terms.emplace_back(Polynomial<T>::constant(n, T(1)), s);
        return out;
    }

    VectorJetSection operator+(const VectorJetSection& o) const {
        VectorJetSection out(*this);
        for (const auto& t : o.terms) out.terms.push_back(t);
        return out;
    }
    VectorJetSection scaled_by_poly(const Polynomial<T>& g) const {
        VectorJetSection out(*this);
        for (auto& [f, s] : out.terms) f = f * g;
        return out;
    }
    VectorJetSection scaled(const T& c) const {
        VectorJetSection out(*this);
        for (auto& [f, s] : out.terms) f = f.scaled(c);
        return out;
    }
    VectorJetSection operator-() const { return scaled(T(-1)); }
};

template <typename T>
std::map<MultiIndex, PolyMap<T>, GradedLex> canonical_form(const VectorJetSection<T>& s) {
    std::map<MultiIndex, PolyMap<T>, GradedLex> out;
    for (const auto& alpha : multi_indices(s.n, 0, s.k)) {
        PolyMap<T> slot;
        for (int c = 0; c < s.m; ++c) slot.push_back(Polynomial<T>(s.n));
        for (const auto& [f, sec] : s.terms)
            for (int c = 0; c < s.m; ++c)
                slot[static_cast<size_t>(c)] = slot[static_cast<size_t>(c)] + f * taylor_slot(sec[static_cast<size_t>(c)], alpha);
        bool zero = true;
        for (const auto& p : slot)
            if (!p.is_zero()) zero = false;
        if (!zero) out.emplace(alpha, std::move(slot));
    }
    return out;
}

template <typename T>
bool sections_equal(const VectorJetSection<T>& a, const VectorJetSection<T>& b) {
    if (a.n != b.n || a.m != b.m || a.k != b.k) return false;
    return canonical_form(a) == canonical_form(b);
}

/// j_k delta (sum f_i j_k s_i) = sum f_i j_k(delta s_i) + (L_theta f_i) j_k s_i.
/// For k = 0 this is delta itself.
template <typename T>
VectorJetSection<T> prolong_apply(const LinearOperator<T>& op, const VectorJetSection<T>& s) {
    VectorJetSection<T> out;
    out.n = s.n;
    out.m = s.m;
    out.k = s.k;
    for (const auto& [f, sec] : s.terms) {
        out.terms.emplace_back(f, apply(op, sec));
        out.terms.emplace_back(lie_derivative(op.theta, f), sec);
    }
    return out;
}

} // namespace jetg
