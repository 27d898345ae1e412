// SPDX-License-Identifier: Apache-2.0
#include "flows.hpp"

#include <cmath>

namespace jetg {

double norm2(const Vec& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double norm_inf(const Vec& v) {
    double s = 0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    Vec out(a);
    for (size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

Polynomial<double> to_double_poly(const Polynomial<Rational>& p) {
    Polynomial<double> out(p.dim());
    for (const auto& [a, c] : p.terms()) out.set(a, to_double(c));
    return out;
}

PolyMap<double> to_double_map(const PolyMap<Rational>& p) {
    PolyMap<double> out;
    for (const auto& comp : p) out.push_back(to_double_poly(comp));
    return out;
}

PolyMatrix<double> to_double_matrix_poly(const PolyMatrix<Rational>& p) {
    PolyMatrix<double> out{p.n, p.m, {}};
    for (const auto& [a, c] : p.terms) {
        Mat<double> d(c.size());
        for (int i = 0; i < c.size(); ++i)
            for (int j = 0; j < c.size(); ++j) d(i, j) = to_double(c(i, j));
        out.add_term(a, d);
    }
    return out;
}

TrivialSection<double> to_double_section(const TrivialSection<Rational>& s) {
    return {to_double_map(s.theta), to_double_matrix_poly(s.h)};
}

JetSection<double> to_double_section(const JetSection<Rational>& s) {
    JetSection<double> out;
    out.n = s.n;
    out.k = s.k;
    for (const auto& [f, mu] : s.terms) out.terms.emplace_back(to_double_poly(f), to_double_map(mu));
    return out;
}

namespace {

/// Classical fixed-step RK4 on a flat state. Detects blow-ups on states and
/// stages; with cfg.richardson, every step is also taken as two half steps,
/// the pair is compared (halve-step estimate), and the composite half-step
/// value is kept. An estimate exceeding tol * max(1, |state|) reports the
/// flow as non-global at that internal time.
template <typename RHS>
Vec rk4_integrate(Vec y, double t_final, const FlowConfig& cfg, RHS&& rhs, double* err_accum = nullptr) {
    cfg.check();
    if (std::abs(t_final) > cfg.t_max) throw DomainError("requested time exceeds cfg.t_max");
    if (t_final == 0.0) return y;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t_final) / cfg.step)));
    const double h = t_final / steps;

    auto check_state = [&](const Vec& v, double at) {
        for (double x : v)
            if (!std::isfinite(x) || std::abs(x) > cfg.blowup_threshold)
                throw BlowUpError("blow-up detected at t = " + format_double(at) +
                                      ": flow is not global at this horizon",
                                  at);
    };
    auto one_step = [&](const Vec& v, double dt, double at) {
        const Vec k1 = rhs(v);
        Vec y2(v);
        for (size_t i = 0; i < v.size(); ++i) y2[i] += 0.5 * dt * k1[i];
        check_state(y2, at);
        const Vec k2 = rhs(y2);
        Vec y3(v);
        for (size_t i = 0; i < v.size(); ++i) y3[i] += 0.5 * dt * k2[i];
        check_state(y3, at);
        const Vec k3 = rhs(y3);
        Vec y4(v);
        for (size_t i = 0; i < v.size(); ++i) y4[i] += dt * k3[i];
        check_state(y4, at);
        const Vec k4 = rhs(y4);
        Vec out(v);
        for (size_t i = 0; i < v.size(); ++i)
            out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        return out;
    };

    double at = 0;
    for (int s = 0; s < steps; ++s) {
        at = (s + 1) * h;
        if (!cfg.richardson) {
            y = one_step(y, h, at);
            check_state(y, at);
            continue;
        }
        const Vec full = one_step(y, h, at);
        Vec half = one_step(y, 0.5 * h, at - 0.5 * h);
        half = one_step(half, 0.5 * h, at);
        check_state(half, at);
        const double est = norm2(vec_sub(full, half)) / 15.0;
        if (err_accum) *err_accum += est;
        if (est > cfg.tol * std::max(1.0, norm_inf(half)))
            throw BlowUpError("blow-up detected at t = " + format_double(at) +
                                  ": halve-step error estimate exceeds tolerance (flow not resolvable; "
                                  "non-global at this horizon)",
                              at);
        y = std::move(half);
        check_state(y, at);
    }
    return y;
}

Vec eval_map(const PolyMap<double>& f, const Vec& x) {
    Vec out;
    out.reserve(f.size());
    for (const auto& p : f) out.push_back(p.eval(x));
    return out;
}

} // namespace

FlowResult flow_vector_field(const PolyMap<double>& theta, const Vec& x, double t, const FlowConfig& cfg) {
    auto rhs = [&](const Vec& v) { return eval_map(theta, v); };
    FlowResult result;
    double err = 0;
    result.point = rk4_integrate(x, t, cfg, rhs, cfg.richardson ? &err : nullptr);
    if (cfg.richardson) result.err_estimate = err;
    return result;
}

namespace {

struct TrivialFlat {
    int n;
    int m;
    Vec flatten(const Vec& point, const Mat<double>& g) const {
        Vec out(point);
        out.insert(out.end(), g.flat().begin(), g.flat().end());
        return out;
    }
    Vec point_of(const Vec& state) const { return Vec(state.begin(), state.begin() + n); }
    Mat<double> g_of(const Vec& state) const {
        Mat<double> g(m);
        std::copy(state.begin() + n, state.end(), g.flat().begin());
        return g;
    }
};

} // namespace

TrivialFlowResult exp_trivial(const TrivialSection<double>& xi, const Vec& x, double t, const FlowConfig& cfg) {
    const TrivialFlat flat{static_cast<int>(x.size()), xi.h.m};
    auto rhs = [&](const Vec& state) {
        const Vec pt = flat.point_of(state);
        const Mat<double> g = flat.g_of(state);
        const Vec dpt = eval_map(xi.theta, pt);
        const Mat<double> dg = xi.h.eval_at(pt) * g;
        return flat.flatten(dpt, dg);
    };
    double err = 0;
    const Vec final_state = rk4_integrate(flat.flatten(x, Mat<double>::identity(flat.m)), t, cfg, rhs,
                                          cfg.richardson ? &err : nullptr);
    TrivialFlowResult out{flat.point_of(final_state), flat.g_of(final_state), std::nullopt};
    if (cfg.richardson) out.err_estimate = err;
    return out;
}

GroupPath exp_trivial_path(const TrivialSection<double>& xi, const Vec& x, double t, const FlowConfig& cfg) {
    GroupPath path;
    const int steps = t == 0.0 ? 0 : std::max(1, static_cast<int>(std::ceil(std::abs(t) / cfg.step)));
    path.push_back({0.0, x, Mat<double>::identity(xi.h.m)});
    // chain single steps; the matrix part composes by the cocycle law
    for (int s = 1; s <= steps; ++s) {
        const double at = t * s / steps;
        const auto& prev = path.back();
        const auto res = exp_trivial(xi, prev.point, t / steps, cfg);
        path.push_back({at, res.point, res.g * prev.g});
    }
    return path;
}

double group_law_defect(const TrivialSection<double>& xi, const Vec& x, double t, double u,
                        const FlowConfig& cfg) {
    const auto whole = exp_trivial(xi, x, t + u, cfg);
    const auto first = exp_trivial(xi, x, u, cfg);
    const auto second = exp_trivial(xi, first.point, t, cfg);
    const Mat<double> composite_g = second.g * first.g;
    return norm2(vec_sub(whole.point, second.point)) + frobenius_distance(whole.g, composite_g);
}

double bch_defect(const TrivialSection<double>& xi1, const TrivialSection<double>& xi2, const Vec& x, double t,
                  const FlowConfig& cfg, double bracket_weight) {
    // section composite Exp t Xi2 . Exp t Xi1 evaluated at x (Xi1 flows first)
    const auto first = exp_trivial(xi1, x, t, cfg);
    const auto second = exp_trivial(xi2, first.point, t, cfg);
    const Vec lhs_point = second.point;
    const Mat<double> lhs_g = second.g * first.g;

    TrivialSection<double> combined = xi1.scaled(t) + xi2.scaled(t);
    if (bracket_weight != 0.0)
        combined = combined + bracket_trivial(xi1, xi2).scaled(bracket_weight * t * t / 2.0);
    const auto rhs = exp_trivial(combined, x, 1.0, cfg);
    return norm2(vec_sub(lhs_point, rhs.point)) + frobenius_distance(lhs_g, rhs.g);
}

AdmissibleSection exp_section(const TrivialSection<double>& xi, double t, const FlowConfig& cfg) {
    return [xi, t, cfg](const Vec& x) {
        const auto res = exp_trivial(xi, x, t, cfg);
        return TrivialElement{res.point, res.g, x};
    };
}

AdmissibleSection unit_section(int m) {
    return [m](const Vec& x) { return TrivialElement{x, Mat<double>::identity(m), x}; };
}

TrivialElement right_translation(const TrivialElement& el, const AdmissibleSection& sigma) {
    // g . sigma(alpha(g))^-1 = (y, h, x) . (x, s, f(x))^-1 = (y, h s^-1, f(x))
    const TrivialElement s = sigma(el.source);
    return {el.target, el.g * inverse(s.g), s.target};
}

TrivialElement left_translation(const TrivialElement& el, const AdmissibleSection& sigma) {
    // sigma(beta(g)) . g = (f(y), s, y) . (y, h, x) = (f(y), s h, x)
    const TrivialElement s = sigma(el.target);
    return {s.target, s.g * el.g, el.source};
}

TrivialElement conjugation(const TrivialElement& el, const AdmissibleSection& sigma) {
    return left_translation(right_translation(el, sigma), sigma);
}

std::pair<Vec, Mat<double>> ad_of_section(const AdmissibleSection& sigma, const TrivialSection<double>& Sigma,
                                          const Vec& x, double du, const FlowConfig& cfg) {
    // central difference of u -> sigma . Exp u Sigma (x) . sigma(x)^-1 at u = 0
    auto conj_at = [&](double u) {
        const auto mid = exp_trivial(Sigma, x, u, cfg);
        return conjugation(TrivialElement{mid.point, mid.g, x}, sigma);
    };
    const TrivialElement plus = conj_at(du);
    const TrivialElement minus = conj_at(-du);
    Vec dpt(plus.target);
    for (size_t i = 0; i < dpt.size(); ++i) dpt[i] = (plus.target[i] - minus.target[i]) / (2.0 * du);
    Mat<double> dg(plus.g.size());
    for (int i = 0; i < dg.size(); ++i)
        for (int j = 0; j < dg.size(); ++j) dg(i, j) = (plus.g(i, j) - minus.g(i, j)) / (2.0 * du);
    return {dpt, dg};
}

JetArrow<double> exp_jet(const JetSection<double>& xi, const Vec& x, double t, const FlowConfig& cfg) {
    const int n = xi.n;
    const int k = xi.k;
    const auto keys = multi_indices(n, 1, k);

    auto flatten = [&](const TruncatedJet<double>& j) {
        Vec out(j.value);
        for (const auto& key : keys) {
            const auto v = j.coeff(key);
            out.insert(out.end(), v.begin(), v.end());
        }
        return out;
    };
    auto unflatten = [&](const Vec& state) {
        TruncatedJet<double> j;
        j.n = j.m = n;
        j.k = k;
        j.base = x;
        j.value.assign(state.begin(), state.begin() + n);
        size_t pos = static_cast<size_t>(n);
        for (const auto& key : keys) {
            std::vector<double> v(state.begin() + static_cast<long>(pos), state.begin() + static_cast<long>(pos + static_cast<size_t>(n)));
            pos += static_cast<size_t>(n);
            bool zero = true;
            for (double c : v)
                if (c != 0.0) zero = false;
            if (!zero) j.coeffs.emplace(key, std::move(v));
        }
        return j;
    };

    auto rhs = [&](const Vec& state) {
        const TruncatedJet<double> arrow = unflatten(state);
        if (std::abs(determinant(arrow.jacobian())) < cfg.jacobian_floor)
            throw DomainError("admissibility lost numerically: Jacobian determinant below floor");
        TruncatedJet<double> tangent;
        tangent.n = tangent.m = n;
        tangent.k = k;
        tangent.base = x;
        tangent.value.assign(static_cast<size_t>(n), 0.0);
        for (const auto& [f, mu] : xi.terms) {
            const double weight = f.eval(arrow.value);
            if (weight == 0.0) continue;
            const auto mu_jet = jet_of_polynomial(mu, arrow.value, k);
            tangent = jet_add(tangent, jet_scaled(jet_compose(mu_jet, arrow), weight));
        }
        return flatten(tangent);
    };

    const Vec final_state = rk4_integrate(flatten(identity_jet(x, k)), t, cfg, rhs);
    return JetArrow<double>(unflatten(final_state));
}

Vec operator_flow(const PolyMap<double>& theta, const PolyMatrix<double>& h, const PolyMap<double>& s,
                  const Vec& x, double t, const FlowConfig& cfg) {
    const auto res = exp_trivial(TrivialSection<double>{theta, h}, x, t, cfg);
    if (std::abs(determinant(res.g)) < cfg.jacobian_floor)
        throw DomainError("pull-back undefined: fundamental solution nearly singular");
    return inverse(res.g).apply(eval_map(s, res.point));
}

MatrixJet matrix_jet_of(const PolyMatrix<Rational>& zeta, const std::vector<Rational>& base, int k) {
    MatrixJet out;
    out.n = zeta.n;
    out.m = zeta.m;
    out.k = k;
    out.base = base;
    out.poly = PolyMatrix<Rational>::zero(zeta.n, zeta.m);
    for (const auto& alpha : multi_indices(zeta.n, 0, k)) {
        const Mat<Rational> c = taylor_slot(zeta, alpha).eval(base);
        out.poly.add_term(alpha, c);
    }
    return out;
}

namespace {
PolyMatrix<Rational> truncate(const PolyMatrix<Rational>& p, int k) {
    PolyMatrix<Rational> out{p.n, p.m, {}};
    for (const auto& [a, c] : p.terms) {
        if (a.order() > k) break;
        out.add_term(a, c);
    }
    return out;
}
} // namespace

MatrixJet matrix_jet_mul(const MatrixJet& a, const MatrixJet& b) {
    if (a.base != b.base || a.k != b.k || a.m != b.m) throw DomainError("matrix jet shape mismatch");
    MatrixJet out = a;
    out.poly = truncate(a.poly * b.poly, a.k);
    return out;
}

MatrixJet exp_group_jet(const PolyMatrix<Rational>& zeta, const std::vector<Rational>& x, const Rational& t,
                        int k) {
    const MatrixJet z = matrix_jet_of(zeta, x, k);
    PolyMatrix<Rational> scaled_arg = z.poly.scaled(t);

    // scaling: halve until the order-0 matrix is comfortably small
    double magnitude = 0;
    const auto it0 = scaled_arg.terms.find(MultiIndex::zeros(z.n));
    if (it0 != scaled_arg.terms.end())
        for (const auto& entry : it0->second.flat()) magnitude = std::max(magnitude, std::abs(to_double(entry)));
    int squarings = 0;
    while (magnitude > 0.5 && squarings < 40) {
        magnitude /= 2;
        ++squarings;
    }
    scaled_arg = scaled_arg.scaled(rat(1, 1L << std::min(squarings, 30)));
    if (squarings > 30) scaled_arg = scaled_arg.scaled(rat(1, 1L << (squarings - 30)));

    // series of order 12, truncating at jet order after every multiply
    PolyMatrix<Rational> sum = PolyMatrix<Rational>::constant(z.n, Mat<Rational>::identity(z.m));
    PolyMatrix<Rational> power = sum;
    Rational factorial(1);
    for (int j = 1; j <= 12; ++j) {
        power = truncate(power * scaled_arg, k);
        factorial *= Rational(j);
        if (power.is_zero()) break; // nilpotent: the series has terminated exactly
        sum = sum + power.scaled(Rational(1) / factorial);
    }
    for (int j = 0; j < squarings; ++j) sum = truncate(sum * sum, k);

    MatrixJet out;
    out.n = z.n;
    out.m = z.m;
    out.k = k;
    out.base = x;
    out.poly = std::move(sum);
    return out;
}

} // namespace jetg
