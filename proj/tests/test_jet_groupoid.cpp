// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jet_groupoid.hpp"
#include "random_gen.hpp"

using namespace jetg;

namespace {

// Dual numbers a + b.eps over the rationals (eps^2 = 0): exact first-order
// perturbation scalar for differentiating coefficient fields.
struct Dual {
    Rational re, eps;
    Dual() : re(0), eps(0) {}
    Dual(int v) : re(v), eps(0) {} // NOLINT: implicit by design, mirrors scalar use in templates
    Dual(Rational r, Rational e) : re(std::move(r)), eps(std::move(e)) {}

    Dual operator+(const Dual& o) const { return {re + o.re, eps + o.eps}; }
    Dual operator-(const Dual& o) const { return {re - o.re, eps - o.eps}; }
    Dual operator-() const { return {-re, -eps}; }
    Dual operator*(const Dual& o) const { return {re * o.re, re * o.eps + eps * o.re}; }
    Dual& operator+=(const Dual& o) {
        re += o.re;
        eps += o.eps;
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        re -= o.re;
        eps -= o.eps;
        return *this;
    }
    Dual& operator*=(const Dual& o) {
        *this = *this * o;
        return *this;
    }
    bool operator==(const Dual& o) const { return re == o.re && eps == o.eps; }
};

PolyMap<Dual> lift(const PolyMap<Rational>& f) {
    PolyMap<Dual> out;
    for (const auto& p : f) {
        Polynomial<Dual> q(p.dim());
        for (const auto& [a, c] : p.terms()) q.set(a, Dual(c, 0));
        out.push_back(std::move(q));
    }
    return out;
}

TruncatedJet<Dual> lift_perturbed(const TruncatedJet<Rational>& a, const TruncatedJet<Rational>& dir) {
    TruncatedJet<Dual> out;
    out.n = a.n;
    out.m = a.m;
    out.k = a.k;
    for (const auto& v : a.base) out.base.emplace_back(v, 0);
    for (int c = 0; c < a.m; ++c)
        out.value.emplace_back(a.value[static_cast<size_t>(c)], dir.value[static_cast<size_t>(c)]);
    for (const auto& key : multi_indices(a.n, 1, a.k)) {
        const auto va = a.coeff(key);
        const auto vd = dir.coeff(key);
        std::vector<Dual> v;
        for (int c = 0; c < a.m; ++c) v.emplace_back(va[static_cast<size_t>(c)], vd[static_cast<size_t>(c)]);
        out.coeffs.emplace(key, std::move(v));
    }
    out.normalize();
    return out;
}

TruncatedJet<Rational> eps_part(const TruncatedJet<Dual>& a) {
    TruncatedJet<Rational> out;
    out.n = a.n;
    out.m = a.m;
    out.k = a.k;
    for (const auto& v : a.base) out.base.push_back(v.re);
    for (const auto& v : a.value) out.value.push_back(v.eps);
    for (const auto& [key, v] : a.coeffs) {
        std::vector<Rational> w;
        for (const auto& c : v) w.push_back(c.eps);
        out.coeffs.emplace(key, std::move(w));
    }
    out.normalize();
    return out;
}

// tangent of the prolonged field at a raw jet (no invertibility gate needed)
template <typename T>
TruncatedJet<T> prolonged_at(const PolyMap<T>& theta, const TruncatedJet<T>& arrow) {
    return jet_compose(jet_of_polynomial(theta, arrow.value, arrow.k), arrow);
}

} // namespace

TEST_CASE("arrow composition and inversion") {
    RandomGen gen(3);
    SUBCASE("identity arrow is neutral") {
        const auto b = JetArrow<Rational>(gen.invertible_jet(2, 3, gen.point(2)));
        const auto id = identity_arrow(b.target(), 3);
        CHECK(arrow_compose(id, b) == b);
    }
    SUBCASE("1d k=2 worked example") {
        Polynomial<Rational> p(1);
        p.add_term(MultiIndex({1}), 1);
        p.add_term(MultiIndex({2}), 1);
        const auto a = JetArrow<Rational>(jet_of_polynomial<Rational>({p}, {rat(0)}, 2));
        const auto prod = arrow_compose(a, a);
        CHECK(prod.jet.coeff(MultiIndex({1})) == std::vector<Rational>{1});
        CHECK(prod.jet.coeff(MultiIndex({2})) == std::vector<Rational>{2});
    }
    SUBCASE("linear arrows multiply Jacobians") {
        const auto b = JetArrow<Rational>(gen.invertible_jet(2, 1, gen.point(2)));
        const auto a = JetArrow<Rational>(gen.invertible_jet(2, 1, b.target()));
        CHECK(arrow_compose(a, b).jet.jacobian() == a.jet.jacobian() * b.jet.jacobian());
    }
    SUBCASE("inverse law and endpoint swap") {
        const auto a = JetArrow<Rational>(gen.invertible_jet(2, 3, gen.point(2)));
        const auto inv = arrow_invert(a);
        CHECK(inv.source() == a.target());
        CHECK(inv.target() == a.source());
        CHECK(arrow_compose(a, inv) == identity_arrow(a.target(), 3));
    }
    SUBCASE("source/target laws") {
        const auto [a, b, c] = gen.composable_triple(2, 2);
        const auto A = JetArrow<Rational>(a), B = JetArrow<Rational>(b);
        const auto prod = arrow_compose(A, B);
        CHECK(prod.source() == B.source());
        CHECK(prod.target() == A.target());
    }
}

TEST_CASE("projection is a groupoid morphism") {
    RandomGen gen(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = gen.uniform_int(1, 2);
        const int k = gen.uniform_int(2, 4);
        const int h = gen.uniform_int(0, k);
        const auto bj = gen.invertible_jet(n, k, gen.point(n));
        const auto aj = gen.invertible_jet(n, k, bj.value);
        const auto A = JetArrow<Rational>(aj), B = JetArrow<Rational>(bj);
        CAPTURE(trial);
        CHECK(arrow_project(arrow_compose(A, B), h) ==
              arrow_compose(arrow_project(A, h), arrow_project(B, h)));
        CHECK(arrow_project(arrow_invert(A), h) == arrow_invert(arrow_project(A, h)));
    }
}

TEST_CASE("prolonged diffeomorphism action") {
    SUBCASE("identity map acts trivially") {
        RandomGen gen(5);
        const auto x = JetArrow<Rational>(gen.invertible_jet(2, 2, gen.point(2)));
        CHECK(prolong_diffeo_action(identity_map<Rational>(2), x) == x);
    }
    SUBCASE("phi(x) = 2x on the identity arrow at 1") {
        PolyMap<Rational> phi{Polynomial<Rational>::variable(1, 0).scaled(rat(2))};
        const auto x = identity_arrow<Rational>({rat(1)}, 1);
        const auto moved = prolong_diffeo_action(phi, x);
        CHECK(moved.target() == std::vector<Rational>{rat(2)});
        CHECK(moved.jet.jacobian()(0, 0) == rat(2));
    }
    SUBCASE("left action commutes with composition: phi_k(X.Y) = phi_k(X).Y") {
        RandomGen gen(23);
        const auto yj = gen.invertible_jet(2, 2, gen.point(2));
        const auto xj = gen.invertible_jet(2, 2, yj.value);
        const auto X = JetArrow<Rational>(xj), Y = JetArrow<Rational>(yj);
        const auto phi = gen.poly_map(2, 2, 2, 3);
        if (determinant(jet_of_polynomial(phi, X.target(), 1).jacobian()) != 0)
            CHECK(prolong_diffeo_action(phi, arrow_compose(X, Y)) ==
                  arrow_compose(prolong_diffeo_action(phi, X), Y));
    }
    SUBCASE("singular Jacobian at the target is rejected") {
        PolyMap<Rational> phi{Polynomial<Rational>::variable(1, 0) * Polynomial<Rational>::variable(1, 0)};
        const auto x = identity_arrow<Rational>({rat(0)}, 1);
        CHECK_THROWS_AS(prolong_diffeo_action(phi, x), DomainError);
    }
}

TEST_CASE("prolonged vector fields") {
    RandomGen gen(31);
    SUBCASE("zero field prolongs to zero") {
        const auto x = JetArrow<Rational>(gen.invertible_jet(2, 2, gen.point(2)));
        const PolyMap<Rational> zero{Polynomial<Rational>(2), Polynomial<Rational>(2)};
        const auto tangent = prolong_vector_field(zero, x);
        CHECK(tangent.coeffs.empty());
        CHECK(tangent.value == std::vector<Rational>{0, 0});
    }
    SUBCASE("x d/dx at a k=1 arrow gives (y, a)") {
        // arrow: base x0=2, value y=3, jacobian a=5
        TruncatedJet<Rational> j;
        j.n = j.m = 1;
        j.k = 1;
        j.base = {rat(2)};
        j.value = {rat(3)};
        j.coeffs.emplace(MultiIndex({1}), std::vector<Rational>{rat(5)});
        const auto x = JetArrow<Rational>(j);
        const PolyMap<Rational> theta{Polynomial<Rational>::variable(1, 0)};
        const auto tangent = prolong_vector_field(theta, x);
        CHECK(tangent.value == std::vector<Rational>{rat(3)});
        CHECK(tangent.coeff(MultiIndex({1})) == std::vector<Rational>{rat(5)});
    }
    SUBCASE("right invariance: tangent at X.Y is the pushforward of the tangent at X") {
        for (int trial = 0; trial < 10; ++trial) {
            const int n = gen.uniform_int(1, 2);
            const int k = gen.uniform_int(1, 3);
            const auto yj = gen.invertible_jet(n, k, gen.point(n));
            const auto xj = gen.invertible_jet(n, k, yj.value);
            const auto X = JetArrow<Rational>(xj), Y = JetArrow<Rational>(yj);
            const auto theta = gen.poly_map(n, n, 2, 4);
            CAPTURE(trial);
            CHECK(prolong_vector_field(theta, arrow_compose(X, Y)) ==
                  push_right_translation(prolong_vector_field(theta, X), Y));
        }
    }
    SUBCASE("linearity in the jet of theta") {
        const auto x = JetArrow<Rational>(gen.invertible_jet(2, 2, gen.point(2)));
        const auto t1 = gen.poly_map(2, 2, 2, 4);
        const auto t2 = gen.poly_map(2, 2, 2, 4);
        const auto sum = map_add(t1, t2);
        CHECK(prolong_vector_field(sum, x) ==
              jet_add(prolong_vector_field(t1, x), prolong_vector_field(t2, x)));
        CHECK(prolong_vector_field(map_scaled(t1, rat(7, 3)), x) ==
              jet_scaled(prolong_vector_field(t1, x), rat(7, 3)));
    }
    SUBCASE("injectivity on the monomial spanning set") {
        // a zero prolonged tangent forces the k-jet of theta at the target to vanish
        const auto x = JetArrow<Rational>(gen.invertible_jet(1, 2, gen.point(1)));
        for (int e = 0; e <= 2; ++e) {
            Polynomial<Rational> mono(1);
            mono.set(MultiIndex({e}), 1);
            const auto tangent = prolong_vector_field(PolyMap<Rational>{mono}, x);
            const bool theta_jet_zero = jet_of_polynomial(PolyMap<Rational>{mono}, x.target(), 2).value ==
                                            std::vector<Rational>{0} &&
                                        jet_of_polynomial(PolyMap<Rational>{mono}, x.target(), 2).coeffs.empty();
            const bool tangent_zero = tangent.value == std::vector<Rational>{0} && tangent.coeffs.empty();
            CHECK(tangent_zero == theta_jet_zero);
        }
    }
}

TEST_CASE("prolongation preserves brackets (exact dual-number derivative)") {
    RandomGen gen(71);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = gen.uniform_int(1, 2);
        const int k = gen.uniform_int(1, 3);
        const auto arrow = gen.invertible_jet(n, k, gen.point(n, 3), 3);
        const auto theta = gen.poly_map(n, n, 2, 3);
        const auto eta = gen.poly_map(n, n, 2, 3);

        const auto v_theta = prolonged_at(theta, arrow);
        const auto v_eta = prolonged_at(eta, arrow);

        // directional derivatives of the coefficient fields via eps-perturbation
        const auto d_eta_along_theta = eps_part(prolonged_at(lift(eta), lift_perturbed(arrow, v_theta)));
        const auto d_theta_along_eta = eps_part(prolonged_at(lift(theta), lift_perturbed(arrow, v_eta)));

        // [V_theta, V_eta](A) = DV_eta(A)[V_theta(A)] - DV_theta(A)[V_eta(A)]
        TruncatedJet<Rational> lie = d_eta_along_theta;
        lie = jet_add(lie, jet_scaled(d_theta_along_eta, rat(-1)));

        const auto expected = prolonged_at(vf_bracket(theta, eta), arrow);
        CAPTURE(trial);
        CHECK(lie == expected);
    }
    SUBCASE("the spec pair (d/dx, x d/dx) on a 1d k=2 arrow") {
        const auto arrow = gen.invertible_jet(1, 2, gen.point(1, 2), 2);
        const PolyMap<Rational> dx{Polynomial<Rational>::constant(1, 1)};
        const PolyMap<Rational> xdx{Polynomial<Rational>::variable(1, 0)};
        const auto v1 = prolonged_at(dx, arrow);
        const auto v2 = prolonged_at(xdx, arrow);
        const auto lie = jet_add(eps_part(prolonged_at(lift(xdx), lift_perturbed(arrow, v1))),
                                 jet_scaled(eps_part(prolonged_at(lift(dx), lift_perturbed(arrow, v2))), rat(-1)));
        CHECK(lie == prolonged_at(vf_bracket(dx, xdx), arrow));
    }
}

TEST_CASE("groupoid axioms for random jet arrow triples") {
    RandomGen gen(123);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = gen.uniform_int(1, 3);
        const int k = gen.uniform_int(1, 4);
        const auto [aj, bj, cj] = gen.composable_triple(n, k, 5);
        const auto a = JetArrow<Rational>(aj), b = JetArrow<Rational>(bj), c = JetArrow<Rational>(cj);
        CAPTURE(trial);
        CHECK(arrow_compose(arrow_compose(a, b), c) == arrow_compose(a, arrow_compose(b, c)));
        CHECK(arrow_compose(a, identity_arrow(a.source(), k)) == a);
        CHECK(arrow_compose(identity_arrow(a.target(), k), a) == a);
        CHECK(arrow_compose(arrow_invert(a), a) == identity_arrow(a.source(), k));
    }
}
