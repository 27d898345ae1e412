// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "matrix.hpp"
#include "polynomial.hpp"

#include <optional>

namespace jetg {

/// Matrix-valued polynomial map M -> gl(m): exponent -> coefficient matrix.
template <typename T>
struct PolyMatrix {
    int n = 0; // base dimension
    int m = 0; // matrix size
    std::map<MultiIndex, Mat<T>, GradedLex> terms;

    static PolyMatrix zero(int n, int m) { return {n, m, {}}; }
    static PolyMatrix constant(int n, const Mat<T>& c) {
        PolyMatrix out{n, c.size(), {}};
        out.add_term(MultiIndex::zeros(n), c);
        return out;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const MultiIndex& a, const Mat<T>& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.try_emplace(a, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    PolyMatrix operator+(const PolyMatrix& o) const {
        PolyMatrix out(*this);
        for (const auto& [a, c] : o.terms) out.add_term(a, c);
        return out;
    }
    PolyMatrix operator-(const PolyMatrix& o) const {
        PolyMatrix out(*this);
        for (const auto& [a, c] : o.terms) out.add_term(a, -c);
        return out;
    }
    PolyMatrix operator-() const {
        PolyMatrix out(*this);
        for (auto& [a, c] : out.terms) c = -c;
        return out;
    }
    /// Pointwise matrix product (h h')(x) = h(x) h'(x).
    PolyMatrix operator*(const PolyMatrix& o) const {
        PolyMatrix out{n, m, {}};
        for (const auto& [a, ca] : terms)
            for (const auto& [b, cb] : o.terms) out.add_term(a.plus(b), ca * cb);
        return out;
    }
    PolyMatrix scaled_by_poly(const Polynomial<T>& f) const {
        PolyMatrix out{n, m, {}};
        for (const auto& [a, c] : terms)
            for (const auto& [b, fb] : f.terms()) out.add_term(a.plus(b), c.scaled(fb));
        return out;
    }
    PolyMatrix scaled(const T& c) const {
        PolyMatrix out{n, m, {}};
        for (const auto& [a, ca] : terms) out.add_term(a, ca.scaled(c));
        return out;
    }
    /// Entrywise directional derivative along a vector field.
    PolyMatrix lie_along(const PolyMap<T>& theta) const {
        PolyMatrix out{n, m, {}};
        for (const auto& [a, c] : terms) {
            Polynomial<T> mono(n);
            mono.set(a, T(1));
            const Polynomial<T> dmono = lie_derivative(theta, mono);
            for (const auto& [b, fb] : dmono.terms()) out.add_term(b, c.scaled(fb));
        }
        return out;
    }
    Mat<T> eval(const std::vector<T>& x) const {
        Mat<T> out(m);
        for (const auto& [a, c] : terms) {
            Polynomial<T> mono(n);
            mono.set(a, T(1));
            out = out + c.scaled(mono.eval(x));
        }
        return out;
    }
    template <typename S>
    Mat<S> eval_at(const std::vector<S>& x) const {
        Mat<S> out(m);
        for (const auto& [a, c] : terms) {
            S factor(1);
            for (int i = 0; i < n; ++i)
                for (int e = 0; e < a[i]; ++e) factor *= x[static_cast<size_t>(i)];
            for (int r = 0; r < m; ++r)
                for (int col = 0; col < m; ++col)
                    out(r, col) += Polynomial<T>::template scalar_cast<S>(c(r, col)) * factor;
        }
        return out;
    }

    bool operator==(const PolyMatrix& o) const { return n == o.n && m == o.m && terms == o.terms; }
};

/// Fibre-direction bracket: the paper's right-invariant convention, the
/// negative of the matrix commutator. Pinned by the flow (Campbell-Hausdorff)
/// oracle and by the structural match with the operator commutator.
template <typename T>
Mat<T> fibre_bracket(const Mat<T>& a, const Mat<T>& b) {
    return Mat<T>::commutator(b, a); // -(ab - ba)
}

template <typename T>
PolyMatrix<T> fibre_bracket(const PolyMatrix<T>& a, const PolyMatrix<T>& b) {
    return b * a - a * b;
}

/// Optional subalgebra constraint for the h-component of sections.
template <typename T>
struct MatrixAlgebraSpec {
    int m = 0;
    std::optional<std::vector<Mat<T>>> basis;

    /// True when target is an exact linear combination of the basis matrices.
    static bool in_span(const std::vector<Mat<T>>& basis, const Mat<T>& target) {
        if (basis.empty()) return target.is_zero();
        const int m = target.size();
        const int rows = m * m, cols = static_cast<int>(basis.size());
        // solve basis * c = target by Gaussian elimination on the stacked system
        std::vector<std::vector<T>> a(static_cast<size_t>(rows), std::vector<T>(static_cast<size_t>(cols + 1), T(0)));
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) a[static_cast<size_t>(r)][static_cast<size_t>(c)] = basis[static_cast<size_t>(c)].flat()[static_cast<size_t>(r)];
            a[static_cast<size_t>(r)][static_cast<size_t>(cols)] = target.flat()[static_cast<size_t>(r)];
        }
        int rank = 0;
        for (int c = 0; c < cols && rank < rows; ++c) {
            int pivot = -1;
            for (int r = rank; r < rows; ++r)
                if (!(a[static_cast<size_t>(r)][static_cast<size_t>(c)] == T(0))) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(a[static_cast<size_t>(pivot)], a[static_cast<size_t>(rank)]);
            const T d = a[static_cast<size_t>(rank)][static_cast<size_t>(c)];
            for (auto& v : a[static_cast<size_t>(rank)]) v /= d;
            for (int r = 0; r < rows; ++r) {
                if (r == rank) continue;
                const T f = a[static_cast<size_t>(r)][static_cast<size_t>(c)];
                if (f == T(0)) continue;
                for (int cc = 0; cc <= cols; ++cc)
                    a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -= f * a[static_cast<size_t>(rank)][static_cast<size_t>(cc)];
            }
            ++rank;
        }
        for (int r = rank; r < rows; ++r)
            if (!(a[static_cast<size_t>(r)][static_cast<size_t>(cols)] == T(0))) return false;
        // with reduced rows, leftover inconsistency shows as 0 = nonzero rows checked above
        for (int r = 0; r < rank; ++r) {
            bool all_zero = true;
            for (int c = 0; c < cols; ++c)
                if (!(a[static_cast<size_t>(r)][static_cast<size_t>(c)] == T(0))) all_zero = false;
            if (all_zero && !(a[static_cast<size_t>(r)][static_cast<size_t>(cols)] == T(0))) return false;
        }
        return true;
    }

    /// Exact check that the basis is closed under the commutator.
    void validate() const {
        if (!basis) return;
        for (const auto& x : *basis)
            for (const auto& y : *basis)
                if (!in_span(*basis, Mat<T>::commutator(x, y)))
                    throw DomainError("matrix algebra basis not closed under commutator");
    }

    bool contains(const PolyMatrix<T>& h) const {
        if (!basis) return true;
        for (const auto& [a, c] : h.terms)
            if (!in_span(*basis, c)) return false;
        return true;
    }
};

/// Algebroid section of a trivial groupoid: a pair (theta, h).
template <typename T>
struct TrivialSection {
    PolyMap<T> theta;  // vector field on M
    PolyMatrix<T> h;   // map M -> gl(m)

    int dim() const { return static_cast<int>(theta.size()); }
    int matrix_size() const { return h.m; }

    TrivialSection scaled_by_poly(const Polynomial<T>& f) const {
        TrivialSection out;
        for (const auto& p : theta) out.theta.push_back(p * f);
        out.h = h.scaled_by_poly(f);
        return out;
    }
    TrivialSection operator+(const TrivialSection& o) const {
        return {map_add(theta, o.theta), h + o.h};
    }
    TrivialSection scaled(const T& c) const { return {map_scaled(theta, c), h.scaled(c)}; }
    TrivialSection operator-() const { return scaled(T(-1)); }

    bool operator==(const TrivialSection& o) const { return theta == o.theta && h == o.h; }
    bool is_zero() const { return map_is_zero(theta) && h.is_zero(); }
};

namespace detail {
template <typename T>
void require_same_shape(const TrivialSection<T>& a, const TrivialSection<T>& b) {
    if (a.dim() != b.dim() || a.matrix_size() != b.matrix_size())
        throw DomainError("section dimension mismatch");
}
} // namespace detail

/// Bracket on trivial-groupoid sections:
/// ([theta,theta'], [h,h']_fibre + L_theta h' - L_theta' h).
template <typename T>
TrivialSection<T> bracket_trivial(const TrivialSection<T>& a, const TrivialSection<T>& b) {
    detail::require_same_shape(a, b);
    TrivialSection<T> out;
    out.theta = vf_bracket(a.theta, b.theta);
    out.h = fibre_bracket(a.h, b.h) + b.h.lie_along(a.theta) - a.h.lie_along(b.theta);
    return out;
}

/// ad Xi(Sigma) = -[Xi, Sigma].
template <typename T>
TrivialSection<T> ad_action(const TrivialSection<T>& xi, const TrivialSection<T>& sigma) {
    return -bracket_trivial(xi, sigma);
}

// ---------------------------------------------------------------------------
// Jet sections: O-combinations of holonomic jets.
// ---------------------------------------------------------------------------

/// Section of J_k T represented as a term list sum f_i . j_k mu_i.
template <typename T>
struct JetSection {
    int n = 0;
    int k = 0;
    std::vector<std::pair<Polynomial<T>, PolyMap<T>>> terms;

    static JetSection holonomic(int k, const PolyMap<T>& mu) {
        JetSection out;
        out.n = static_cast<int>(mu.size());
        out.k = k;
        out.terms.emplace_back(Polynomial<T>::constant(out.n, T(1)), mu);
        return out;
    }

    JetSection operator+(const JetSection& o) const {
        JetSection out(*this);
        for (const auto& t : o.terms) out.terms.push_back(t);
        out.merge();
        return out;
    }
    JetSection scaled(const T& c) const {
        JetSection out(*this);
        for (auto& [f, mu] : out.terms) f = f.scaled(c);
        out.merge();
        return out;
    }
    JetSection scaled_by_poly(const Polynomial<T>& g) const {
        JetSection out(*this);
        for (auto& [f, mu] : out.terms) f = f * g;
        out.merge();
        return out;
    }
    JetSection operator-() const { return scaled(T(-1)); }

    /// Normal form: merge terms with identical mu, drop zero terms.
    void merge() {
        std::vector<std::pair<Polynomial<T>, PolyMap<T>>> merged;
        for (auto& [f, mu] : terms) {
            if (f.is_zero() || map_is_zero(mu)) continue;
            bool found = false;
            for (auto& [g, eta] : merged)
                if (eta == mu) {
                    g = g + f;
                    found = true;
                    break;
                }
            if (!found) merged.emplace_back(std::move(f), std::move(mu));
        }
        for (auto it = merged.begin(); it != merged.end();)
            it = it->first.is_zero() ? merged.erase(it) : std::next(it);
        terms = std::move(merged);
    }
};

/// Derivative d^alpha p / alpha! as a polynomial.
template <typename T>
Polynomial<T> taylor_slot(const Polynomial<T>& p, const MultiIndex& alpha) {
    Polynomial<T> out = p;
    T factorial(1);
    for (int i = 0; i < alpha.dim(); ++i)
        for (int e = 0; e < alpha[i]; ++e) {
            out = out.derivative(i);
            factorial *= T(e + 1);
        }
    Polynomial<T> scaled(out.dim());
    for (const auto& [a, c] : out.terms()) scaled.add_term(a, c / factorial);
    return scaled;
}

/// Canonical coefficient form of a jet section: for each slot alpha with
/// |alpha| <= k, the polynomial map y -> sum_i f_i(y) (d^alpha mu_i)(y)/alpha!.
/// Distinct term lists representing the same section of J_k T agree here.
template <typename T>
std::map<MultiIndex, PolyMap<T>, GradedLex> canonical_form(const JetSection<T>& s) {
    std::map<MultiIndex, PolyMap<T>, GradedLex> out;
    for (const auto& alpha : multi_indices(s.n, 0, s.k)) {
        PolyMap<T> slot;
        for (int c = 0; c < s.n; ++c) slot.push_back(Polynomial<T>(s.n));
        for (const auto& [f, mu] : s.terms)
            for (int c = 0; c < s.n; ++c)
                slot[static_cast<size_t>(c)] = slot[static_cast<size_t>(c)] + f * taylor_slot(mu[static_cast<size_t>(c)], alpha);
        bool zero = true;
        for (const auto& p : slot)
            if (!p.is_zero()) zero = false;
        if (!zero) out.emplace(alpha, std::move(slot));
    }
    return out;
}

template <typename T>
bool sections_equal(const JetSection<T>& a, const JetSection<T>& b) {
    if (a.n != b.n || a.k != b.k) return false;
    return canonical_form(a) == canonical_form(b);
}

/// Anchor beta_*: order-0 part, the vector field sum f_i mu_i.
template <typename T>
PolyMap<T> anchor(const JetSection<T>& s) {
    PolyMap<T> out;
    for (int c = 0; c < s.n; ++c) out.push_back(Polynomial<T>(s.n));
    for (const auto& [f, mu] : s.terms)
        for (int c = 0; c < s.n; ++c) out[static_cast<size_t>(c)] = out[static_cast<size_t>(c)] + f * mu[static_cast<size_t>(c)];
    return out;
}

template <typename T>
PolyMap<T> anchor(const TrivialSection<T>& s) {
    return s.theta;
}

/// Bracket on jet sections, the bilinear extension of
/// [f j_k mu, g j_k eta] = fg j_k[mu,eta] + f(L_mu g) j_k eta - g(L_eta f) j_k mu.
template <typename T>
JetSection<T> bracket_jet(const JetSection<T>& a, const JetSection<T>& b) {
    if (a.k != b.k) throw DomainError("jet section order mismatch");
    if (a.n != b.n) throw DomainError("jet section dimension mismatch");
    JetSection<T> out;
    out.n = a.n;
    out.k = a.k;
    for (const auto& [f, mu] : a.terms)
        for (const auto& [g, eta] : b.terms) {
            out.terms.emplace_back(f * g, vf_bracket(mu, eta));
            out.terms.emplace_back(f * lie_derivative(mu, g), eta);
            out.terms.emplace_back(-(g * lie_derivative(eta, f)), mu);
        }
    out.merge();
    return out;
}

// ---------------------------------------------------------------------------
// Group-jet sections: sections of J_k(M, H) for a matrix algebra H.
// ---------------------------------------------------------------------------

template <typename T>
struct GroupJetSection {
    int n = 0;
    int m = 0;
    int k = 0;
    std::vector<std::pair<Polynomial<T>, PolyMatrix<T>>> terms;

    static GroupJetSection holonomic(int k, const PolyMatrix<T>& zeta) {
        GroupJetSection out;
        out.n = zeta.n;
        out.m = zeta.m;
        out.k = k;
        out.terms.emplace_back(Polynomial<T>::constant(zeta.n, T(1)), zeta);
        return out;
    }

    GroupJetSection operator+(const GroupJetSection& o) const {
        GroupJetSection out(*this);
        for (const auto& t : o.terms) out.terms.push_back(t);
        out.merge();
        return out;
    }
    GroupJetSection scaled(const T& c) const {
        GroupJetSection out(*this);
        for (auto& [f, z] : out.terms) f = f.scaled(c);
        out.merge();
        return out;
    }
    GroupJetSection scaled_by_poly(const Polynomial<T>& g) const {
        GroupJetSection out(*this);
        for (auto& [f, z] : out.terms) f = f * g;
        out.merge();
        return out;
    }
    GroupJetSection operator-() const { return scaled(T(-1)); }

    void merge() {
        std::vector<std::pair<Polynomial<T>, PolyMatrix<T>>> merged;
        for (auto& [f, z] : terms) {
            if (f.is_zero() || z.is_zero()) continue;
            bool found = false;
            for (auto& [g, w] : merged)
                if (w == z) {
                    g = g + f;
                    found = true;
                    break;
                }
            if (!found) merged.emplace_back(std::move(f), std::move(z));
        }
        for (auto it = merged.begin(); it != merged.end();)
            it = it->first.is_zero() ? merged.erase(it) : std::next(it);
        terms = std::move(merged);
    }
};

template <typename T>
PolyMatrix<T> taylor_slot(const PolyMatrix<T>& p, const MultiIndex& alpha) {
    PolyMatrix<T> out{p.n, p.m, {}};
    for (const auto& [a, c] : p.terms) {
        Polynomial<T> mono(p.n);
        mono.set(a, T(1));
        for (const auto& [b, fb] : taylor_slot(mono, alpha).terms()) out.add_term(b, c.scaled(fb));
    }
    return out;
}

template <typename T>
std::map<MultiIndex, PolyMatrix<T>, GradedLex> canonical_form(const GroupJetSection<T>& s) {
    std::map<MultiIndex, PolyMatrix<T>, GradedLex> out;
    for (const auto& alpha : multi_indices(s.n, 0, s.k)) {
        PolyMatrix<T> slot{s.n, s.m, {}};
        for (const auto& [f, z] : s.terms) slot = slot + taylor_slot(z, alpha).scaled_by_poly(f);
        if (!slot.is_zero()) out.emplace(alpha, std::move(slot));
    }
    return out;
}

template <typename T>
bool sections_equal(const GroupJetSection<T>& a, const GroupJetSection<T>& b) {
    if (a.n != b.n || a.m != b.m || a.k != b.k) return false;
    return canonical_form(a) == canonical_form(b);
}

/// O-bilinear bracket of Eq-(15) type: [f j_k zeta, g j_k eta] = fg j_k([zeta,eta]).
template <typename T>
GroupJetSection<T> bracket_group_jet(const GroupJetSection<T>& a, const GroupJetSection<T>& b) {
    if (a.k != b.k) throw DomainError("group-jet section order mismatch");
    if (a.n != b.n || a.m != b.m) throw DomainError("group-jet section dimension mismatch");
    GroupJetSection<T> out;
    out.n = a.n;
    out.m = a.m;
    out.k = a.k;
    for (const auto& [f, z] : a.terms)
        for (const auto& [g, w] : b.terms) out.terms.emplace_back(f * g, fibre_bracket(z, w));
    out.merge();
    return out;
}

/// Lie derivative of a group-jet section along a jet section, on holonomic
/// terms: L(j_k theta)(f j_k lambda) = (L_theta f) j_k lambda + f j_k(L_theta lambda),
/// extended O-linearly in the first slot.
template <typename T>
GroupJetSection<T> lie_derivative(const JetSection<T>& xi, const GroupJetSection<T>& lam) {
    if (xi.k != lam.k) throw DomainError("order mismatch in Lie derivative");
    if (xi.n != lam.n) throw DomainError("dimension mismatch in Lie derivative");
    GroupJetSection<T> out;
    out.n = lam.n;
    out.m = lam.m;
    out.k = lam.k;
    for (const auto& [g, theta] : xi.terms)
        for (const auto& [f, z] : lam.terms) {
            out.terms.emplace_back(g * lie_derivative(theta, f), z);
            out.terms.emplace_back(g * f, z.lie_along(theta));
        }
    out.merge();
    return out;
}

/// Scalar jet sections (combinations of jets of functions), the J_k-module
/// scalars acting on group-jet sections.
template <typename T>
struct ScalarJetSection {
    int n = 0;
    int k = 0;
    std::vector<std::pair<Polynomial<T>, Polynomial<T>>> terms; // (f, phi) meaning f . j_k phi

    static ScalarJetSection holonomic(int n, int k, const Polynomial<T>& phi) {
        ScalarJetSection out;
        out.n = n;
        out.k = k;
        out.terms.emplace_back(Polynomial<T>::constant(n, T(1)), phi);
        return out;
    }
};

/// L(Xi) f for a scalar jet section f.
template <typename T>
ScalarJetSection<T> lie_derivative(const JetSection<T>& xi, const ScalarJetSection<T>& f) {
    ScalarJetSection<T> out;
    out.n = f.n;
    out.k = f.k;
    for (const auto& [g, theta] : xi.terms)
        for (const auto& [a, phi] : f.terms) {
            out.terms.emplace_back(g * lie_derivative(theta, a), phi);
            out.terms.emplace_back(g * a, lie_derivative(theta, phi));
        }
    return out;
}

/// J_k-module action: pointwise truncated product of jets; on holonomic
/// terms j_k phi . j_k lambda = j_k(phi lambda).
template <typename T>
GroupJetSection<T> module_mul(const ScalarJetSection<T>& f, const GroupJetSection<T>& lam) {
    if (f.k != lam.k || f.n != lam.n) throw DomainError("module action shape mismatch");
    GroupJetSection<T> out;
    out.n = lam.n;
    out.m = lam.m;
    out.k = lam.k;
    for (const auto& [a, phi] : f.terms)
        for (const auto& [g, z] : lam.terms) out.terms.emplace_back(a * g, z.scaled_by_poly(phi));
    out.merge();
    return out;
}

/// Semi-direct bracket on pairs (Xi, Lambda):
/// ([Xi,Xi'], [Lambda,Lambda'] + L(Xi)Lambda' - L(Xi')Lambda).
template <typename T>
std::pair<JetSection<T>, GroupJetSection<T>> bracket_semidirect(
    const std::pair<JetSection<T>, GroupJetSection<T>>& a,
    const std::pair<JetSection<T>, GroupJetSection<T>>& b) {
    JetSection<T> first = bracket_jet(a.first, b.first);
    GroupJetSection<T> second = bracket_group_jet(a.second, b.second) + lie_derivative(a.first, b.second) +
                                (-lie_derivative(b.first, a.second));
    return {std::move(first), std::move(second)};
}

} // namespace jetg
