// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "jet.hpp"

namespace jetg {

/// Element of the groupoid of invertible k-jets over a coordinate patch.
/// source = jet.base, target = jet.value; the Jacobian is nonsingular.
template <typename T>
struct JetArrow {
    TruncatedJet<T> jet;

    JetArrow() = default;
    explicit JetArrow(TruncatedJet<T> j) : jet(std::move(j)) {
        if (jet.n != jet.m) throw DomainError("jet arrow must be square");
        if (jet.k >= 1 && determinant(jet.jacobian()) == T(0))
            throw DomainError("non-invertible element of J_k: singular Jacobian");
    }

    int dim() const { return jet.n; }
    int order() const { return jet.k; }
    const std::vector<T>& source() const { return jet.base; }
    const std::vector<T>& target() const { return jet.value; }

    bool operator==(const JetArrow& o) const { return jet == o.jet; }
};

template <typename T>
JetArrow<T> identity_arrow(const std::vector<T>& at, int k) {
    return JetArrow<T>(identity_jet(at, k));
}

/// Product in the jet groupoid; defined iff source(a) = target(b).
template <typename T>
JetArrow<T> arrow_compose(const JetArrow<T>& a, const JetArrow<T>& b) {
    return JetArrow<T>(jet_compose(a.jet, b.jet));
}

template <typename T>
JetArrow<T> arrow_invert(const JetArrow<T>& a) {
    return JetArrow<T>(jet_invert(a.jet));
}

/// rho_h, a groupoid morphism onto the order-h prolongation.
template <typename T>
JetArrow<T> arrow_project(const JetArrow<T>& a, int h) {
    return JetArrow<T>(jet_project(a.jet, h));
}

/// Prolonged action of a diffeomorphism: phi_k(X) = [j_k phi(target X)] . X.
/// A left translation, so it commutes with every right translation.
template <typename T>
JetArrow<T> prolong_diffeo_action(const PolyMap<T>& phi, const JetArrow<T>& x) {
    const auto outer = jet_of_polynomial(phi, x.target(), x.order());
    if (determinant(outer.jacobian()) == T(0))
        throw DomainError("prolongation undefined: map has singular Jacobian at the target point");
    return JetArrow<T>(jet_compose(outer, x.jet));
}

/// Value at X of the prolonged right-invariant field of theta: the derivative
/// at t = 0 of coefficients of (id + t theta) o X, i.e. the k-jet at source(X)
/// of u -> theta(X(u)). The returned jet is tangent data, not an arrow.
template <typename T>
TruncatedJet<T> prolong_vector_field(const PolyMap<T>& theta, const JetArrow<T>& x) {
    const auto theta_jet = jet_of_polynomial(theta, x.target(), x.order());
    return jet_compose(theta_jet, x.jet);
}

/// Pushforward of a tangent jet at X under right translation by Y
/// (composition is linear in the outer slot).
template <typename T>
TruncatedJet<T> push_right_translation(const TruncatedJet<T>& tangent, const JetArrow<T>& y) {
    return jet_compose(tangent, y.jet);
}

} // namespace jetg
