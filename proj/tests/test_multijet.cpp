// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jet.hpp"
#include "random_gen.hpp"

#include <array>

using namespace jetg;

namespace {

TruncatedJet<Rational> jet_1d(const std::vector<std::pair<int, Rational>>& powers,
                              const Rational& base, int k) {
    Polynomial<Rational> p(1);
    for (const auto& [e, c] : powers) p.add_term(MultiIndex({e}), c);
    return jet_of_polynomial<Rational>({p}, {base}, k);
}

} // namespace

TEST_CASE("taylor extraction of polynomials") {
    SUBCASE("x^2 at 0, k=2") {
        const auto j = jet_1d({{2, 1}}, 0, 2);
        CHECK(j.value == std::vector<Rational>{0});
        CHECK(j.coeff(MultiIndex({1})) == std::vector<Rational>{0});
        CHECK(j.coeff(MultiIndex({2})) == std::vector<Rational>{1});
    }
    SUBCASE("identity map, any base, k=1") {
        const std::vector<Rational> base{rat(3), rat(-5, 2)};
        const auto j = jet_of_polynomial<Rational>(identity_map<Rational>(2), base, 1);
        CHECK(j.value == base);
        CHECK(j.jacobian() == Mat<Rational>::identity(2));
    }
    SUBCASE("2x + x^2 at 1, k=2") {
        const auto j = jet_1d({{1, 2}, {2, 1}}, 1, 2);
        CHECK(j.value == std::vector<Rational>{3});
        CHECK(j.coeff(MultiIndex({1})) == std::vector<Rational>{4});
        CHECK(j.coeff(MultiIndex({2})) == std::vector<Rational>{1});
    }
    SUBCASE("dimension mismatch rejected") {
        CHECK_THROWS_AS(jet_of_polynomial<Rational>(identity_map<Rational>(2), {rat(0)}, 1), DomainError);
    }
}

TEST_CASE("truncated composition") {
    SUBCASE("y+y^2 after x+x^2 at 0, k=2 gives x+2x^2") {
        const auto inner = jet_1d({{1, 1}, {2, 1}}, 0, 2);
        const auto outer = jet_1d({{1, 1}, {2, 1}}, 0, 2);
        const auto comp = jet_compose(outer, inner);
        CHECK(comp.value == std::vector<Rational>{0});
        CHECK(comp.coeff(MultiIndex({1})) == std::vector<Rational>{1});
        CHECK(comp.coeff(MultiIndex({2})) == std::vector<Rational>{2});
    }
    SUBCASE("identity is neutral on both sides") {
        RandomGen gen(7);
        const auto a = gen.invertible_jet(2, 3, gen.point(2));
        CHECK(jet_compose(a, identity_jet(a.base, 3)) == a);
        CHECK(jet_compose(identity_jet(a.value, 3), a) == a);
    }
    SUBCASE("linear jets compose as matrix product") {
        // A = [[1,2],[3,4]], B = [[0,1],[1,1]]
        PolyMap<Rational> fa, fb;
        const auto x0 = Polynomial<Rational>::variable(2, 0);
        const auto x1 = Polynomial<Rational>::variable(2, 1);
        fa = {x0 + x1.scaled(rat(2)), x0.scaled(rat(3)) + x1.scaled(rat(4))};
        fb = {x1, x0 + x1};
        const std::vector<Rational> zero{0, 0};
        const auto ja = jet_of_polynomial(fa, zero, 1);
        const auto jb = jet_of_polynomial(fb, zero, 1);
        const auto comp = jet_compose(ja, jb);
        CHECK(comp.jacobian() == ja.jacobian() * jb.jacobian());
    }
    SUBCASE("composability precondition") {
        const auto a = jet_1d({{1, 1}}, 0, 1);         // base 0, value 0
        const auto b = jet_1d({{0, 5}, {1, 1}}, 0, 1); // base 0, value 5
        CHECK_THROWS_WITH_AS(jet_compose(b, b), doctest::Contains("alpha(g) != beta(h)"), DomainError);
        CHECK_NOTHROW(jet_compose(a, a));
        const auto c = jet_1d({{1, 1}}, 0, 2);
        CHECK_THROWS_AS(jet_compose(a, c), DomainError); // order mismatch
    }
}

TEST_CASE("inversion") {
    SUBCASE("2x + x^2 inverts to y/2 - y^2/8") {
        const auto f = jet_1d({{1, 2}, {2, 1}}, 0, 2);
        const auto inv = jet_invert(f);
        CHECK(inv.base == std::vector<Rational>{0});
        CHECK(inv.value == std::vector<Rational>{0});
        CHECK(inv.coeff(MultiIndex({1})) == std::vector<Rational>{rat(1, 2)});
        CHECK(inv.coeff(MultiIndex({2})) == std::vector<Rational>{rat(-1, 8)});
        CHECK(jet_compose(f, inv) == identity_jet(f.value, 2));
        CHECK(jet_compose(inv, f) == identity_jet(f.base, 2));
    }
    SUBCASE("identity inverts to identity") {
        const auto id = identity_jet<Rational>({rat(2), rat(3)}, 3);
        CHECK(jet_invert(id) == id);
    }
    SUBCASE("linear jet inverts to the inverse Jacobian") {
        RandomGen gen(11);
        const auto a = gen.invertible_jet(3, 1, gen.point(3));
        CHECK(jet_invert(a).jacobian() == inverse(a.jacobian()));
    }
    SUBCASE("singular Jacobian rejected") {
        const auto f = jet_1d({{2, 1}}, 0, 2); // derivative 0 at 0
        CHECK_THROWS_WITH_AS(jet_invert(f), doctest::Contains("singular Jacobian"), DomainError);
    }
}

TEST_CASE("ring operations") {
    const auto a = jet_1d({{1, 1}, {2, 1}}, 0, 2);  // x + x^2
    const auto b = jet_1d({{1, 1}, {2, -1}}, 0, 2); // x - x^2
    SUBCASE("cancellation in addition") {
        const auto s = jet_add(a, b);
        CHECK(s.coeff(MultiIndex({1})) == std::vector<Rational>{2});
        CHECK(s.coeffs.count(MultiIndex({2})) == 0);
    }
    SUBCASE("truncated product x*x = x^2") {
        const auto x = jet_1d({{1, 1}}, 0, 2);
        const auto p = jet_mul(x, x);
        CHECK(p.value == std::vector<Rational>{0});
        CHECK(p.coeff(MultiIndex({2})) == std::vector<Rational>{1});
        CHECK(p.coeffs.count(MultiIndex({1})) == 0);
    }
    SUBCASE("scalar multiple") {
        const auto j = jet_1d({{2, 1}}, 0, 2);
        CHECK(jet_scaled(j, rat(3)) == jet_1d({{2, 3}}, 0, 2));
    }
    SUBCASE("mismatched base points rejected") {
        const auto c = jet_1d({{1, 1}}, 1, 2);
        CHECK_THROWS_AS(jet_add(a, c), DomainError);
    }
}

TEST_CASE("groupoid laws on random invertible jets") {
    RandomGen gen(42);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = gen.uniform_int(1, 3);
        const int k = gen.uniform_int(1, 4);
        const auto [a, b, c] = gen.composable_triple(n, k, 5);
        CAPTURE(trial);
        CHECK(jet_compose(jet_compose(a, b), c) == jet_compose(a, jet_compose(b, c)));
        CHECK(jet_compose(a, jet_invert(a)) == identity_jet(a.value, k));
        CHECK(jet_compose(jet_invert(a), a) == identity_jet(a.base, k));
    }
}

TEST_CASE("truncation consistency against full symbolic composition") {
    RandomGen gen(99);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = gen.uniform_int(1, 2);
        const int k = gen.uniform_int(1, 3);
        const auto inner_poly = gen.poly_map(n, n, 2, 4);
        const auto outer_poly = gen.poly_map(n, n, 2, 4);
        const auto base = gen.point(n, 3);
        const auto inner_jet = jet_of_polynomial(inner_poly, base, k);
        std::vector<Rational> mid;
        for (const auto& p : inner_poly) mid.push_back(p.eval(base));
        const auto outer_jet = jet_of_polynomial(outer_poly, mid, k);
        const auto lhs = jet_compose(outer_jet, inner_jet);
        const auto rhs = jet_of_polynomial(compose_poly_maps(outer_poly, inner_poly), base, k);
        CAPTURE(trial);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("projection drops high orders and is a morphism") {
    const auto f = jet_1d({{1, 1}, {2, 2}}, 0, 2); // x + 2x^2
    SUBCASE("h = k is the identity") { CHECK(jet_project(f, 2) == f); }
    SUBCASE("to order 1") {
        const auto p = jet_project(f, 1);
        CHECK(p.k == 1);
        CHECK(p.jacobian()(0, 0) == 1);
        CHECK(p.coeffs.count(MultiIndex({2})) == 0);
    }
    SUBCASE("projection commutes with composition") {
        const auto g = jet_1d({{1, 1}, {2, 1}}, 0, 2);
        CHECK(jet_project(jet_compose(f, g), 1) == jet_compose(jet_project(f, 1), jet_project(g, 1)));
    }
    SUBCASE("out of range") { CHECK_THROWS_AS(jet_project(f, 3), DomainError); }
}
