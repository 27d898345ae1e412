// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "matrix.hpp"
#include "polynomial.hpp"

#include <map>
#include <optional>
#include <vector>

namespace jetg {

namespace series {

/// Truncated multivariate power series: exponent -> coefficient, zero terms dropped.
/// The truncation order is carried by the operations, not the value.
template <typename T>
using Series = std::map<MultiIndex, T, GradedLex>;

template <typename T>
void add_scaled(Series<T>& dst, const Series<T>& src, const T& c) {
    if (c == T(0)) return;
    for (const auto& [a, v] : src) {
        auto [it, fresh] = dst.try_emplace(a, v * c);
        if (!fresh) {
            it->second += v * c;
            if (it->second == T(0)) dst.erase(it);
        }
    }
}

template <typename T>
Series<T> mul_trunc(const Series<T>& a, const Series<T>& b, int k) {
    Series<T> out;
    for (const auto& [aa, ca] : a) {
        const int rem = k - aa.order();
        if (rem < 0) break;
        for (const auto& [ab, cb] : b) {
            if (ab.order() > rem) break;
            const MultiIndex key = aa.plus(ab);
            auto [it, fresh] = out.try_emplace(key, ca * cb);
            if (!fresh) {
                it->second += ca * cb;
                if (it->second == T(0)) out.erase(it);
            }
        }
    }
    return out;
}

template <typename T>
int min_order(const Series<T>& s) {
    return s.empty() ? -1 : s.begin()->first.order();
}

/// Evaluates a polynomial at series arguments, truncating after every multiply.
/// Power products are cached across the polynomial's terms. var_dim is the
/// dimension of the series variables (which may differ from args.size()).
template <typename T>
class PowerCache {
public:
    PowerCache(const std::vector<Series<T>>& args, int var_dim, int k) : args_(args), k_(k) {
        cache_.emplace(MultiIndex::zeros(static_cast<int>(args.size())),
                       Series<T>{{MultiIndex::zeros(var_dim), T(1)}});
    }

    const Series<T>& power(const MultiIndex& beta) {
        auto it = cache_.find(beta);
        if (it != cache_.end()) return it->second;
        const int j = beta.first_nonzero();
        const Series<T>& lower = power(beta.minus_unit(j));
        Series<T> prod = mul_trunc(lower, args_[static_cast<size_t>(j)], k_);
        return cache_.emplace(beta, std::move(prod)).first->second;
    }

private:
    const std::vector<Series<T>>& args_;
    int k_;
    std::map<MultiIndex, Series<T>, GradedLex> cache_;
};

template <typename T>
Series<T> eval_polynomial(const Polynomial<T>& p, PowerCache<T>& powers,
                          const std::vector<int>& arg_min_orders, int k) {
    Series<T> out;
    for (const auto& [beta, c] : p.terms()) {
        long lower_bound = 0;
        for (int i = 0; i < beta.dim(); ++i) lower_bound += static_cast<long>(beta[i]) * arg_min_orders[static_cast<size_t>(i)];
        if (lower_bound > k) continue;
        add_scaled(out, powers.power(beta), c);
    }
    return out;
}

} // namespace series

/// Order-k Taylor data of a map Q^n -> Q^m at a base point:
/// value = f(base), coeffs[alpha] = (1/alpha!) d^alpha f(base) for 1 <= |alpha| <= k.
template <typename T>
struct TruncatedJet {
    int n = 0;
    int m = 0;
    int k = 0;
    std::vector<T> base;
    std::vector<T> value;
    std::map<MultiIndex, std::vector<T>, GradedLex> coeffs;

    void check() const {
        if (static_cast<int>(base.size()) != n || static_cast<int>(value.size()) != m)
            throw DomainError("jet dimension mismatch between points and declared dims");
        for (const auto& [a, v] : coeffs) {
            if (a.dim() != n) throw DomainError("jet coefficient key dimension mismatch");
            if (a.order() < 1 || a.order() > k) throw DomainError("jet coefficient order out of range");
            if (static_cast<int>(v.size()) != m) throw DomainError("jet coefficient vector length mismatch");
        }
    }

    void normalize() {
        for (auto it = coeffs.begin(); it != coeffs.end();) {
            bool zero = true;
            for (const auto& c : it->second)
                if (!(c == T(0))) {
                    zero = false;
                    break;
                }
            it = zero ? coeffs.erase(it) : std::next(it);
        }
    }

    std::vector<T> coeff(const MultiIndex& a) const {
        const auto it = coeffs.find(a);
        return it == coeffs.end() ? std::vector<T>(m, T(0)) : it->second;
    }

    /// Order-1 coefficient matrix (rows: target component, cols: source variable).
    Mat<T> jacobian() const {
        if (n != m) throw DomainError("jacobian requested for a non-square jet");
        Mat<T> j(n);
        for (int col = 0; col < n; ++col) {
            const auto it = coeffs.find(MultiIndex::unit(n, col));
            if (it == coeffs.end()) continue;
            for (int row = 0; row < m; ++row) j(row, col) = it->second[row];
        }
        return j;
    }

    bool operator==(const TruncatedJet& o) const {
        return n == o.n && m == o.m && k == o.k && base == o.base && value == o.value && coeffs == o.coeffs;
    }
};

template <typename T>
TruncatedJet<T> identity_jet(const std::vector<T>& base, int k) {
    TruncatedJet<T> out;
    out.n = out.m = static_cast<int>(base.size());
    out.k = k;
    out.base = base;
    out.value = base;
    if (k >= 1)
        for (int i = 0; i < out.n; ++i) {
            std::vector<T> e(out.n, T(0));
            e[i] = T(1);
            out.coeffs.emplace(MultiIndex::unit(out.n, i), std::move(e));
        }
    return out;
}

/// Exact order-k Taylor extraction of a polynomial map at a point.
template <typename T>
TruncatedJet<T> jet_of_polynomial(const PolyMap<T>& p, const std::vector<T>& base, int k) {
    if (k < 0) throw DomainError("jet order must be non-negative");
    const int n = static_cast<int>(base.size());
    for (const auto& comp : p)
        if (comp.dim() != n) throw DomainError("dimension mismatch between polynomial map and base point");
    const int m = static_cast<int>(p.size());

    // substitute x_i = base_i + u_i and expand, truncating at every multiply
    std::vector<series::Series<T>> args;
    std::vector<int> arg_min_orders;
    for (int i = 0; i < n; ++i) {
        series::Series<T> s;
        if (!(base[static_cast<size_t>(i)] == T(0))) s.emplace(MultiIndex::zeros(n), base[static_cast<size_t>(i)]);
        s.emplace(MultiIndex::unit(n, i), T(1));
        arg_min_orders.push_back(0);
        args.push_back(std::move(s));
    }
    series::PowerCache<T> powers(args, n, k);

    TruncatedJet<T> out;
    out.n = n;
    out.m = m;
    out.k = k;
    out.base = base;
    out.value.assign(static_cast<size_t>(m), T(0));
    for (int c = 0; c < m; ++c) {
        series::Series<T> s = series::eval_polynomial(p[static_cast<size_t>(c)], powers, arg_min_orders, k);
        for (const auto& [a, v] : s) {
            if (a.order() == 0) {
                out.value[static_cast<size_t>(c)] = v;
                continue;
            }
            auto it = out.coeffs.find(a);
            if (it == out.coeffs.end()) it = out.coeffs.emplace(a, std::vector<T>(static_cast<size_t>(m), T(0))).first;
            it->second[static_cast<size_t>(c)] = v;
        }
    }
    out.normalize();
    return out;
}

/// Truncated functional composition: the jet of (outer o inner) at inner.base.
/// Realizes the jet-groupoid product; the precondition is the groupoid
/// composability rule.
template <typename T>
TruncatedJet<T> jet_compose(const TruncatedJet<T>& outer, const TruncatedJet<T>& inner) {
    if (outer.k != inner.k) throw DomainError("non-composable jets: order mismatch");
    if (outer.n != inner.m) throw DomainError("non-composable jets: dimension mismatch");
    if (outer.base != inner.value)
        throw DomainError("non-composable: alpha(g) != beta(h) (outer base differs from inner value)");
    const int k = outer.k;

    // displacement series of the inner jet, one per outer variable
    std::vector<series::Series<T>> args;
    std::vector<int> arg_min_orders;
    for (int j = 0; j < outer.n; ++j) {
        series::Series<T> s;
        for (const auto& [a, v] : inner.coeffs)
            if (!(v[static_cast<size_t>(j)] == T(0))) s.emplace(a, v[static_cast<size_t>(j)]);
        arg_min_orders.push_back(1);
        args.push_back(std::move(s));
    }
    series::PowerCache<T> powers(args, inner.n, k);

    TruncatedJet<T> out;
    out.n = inner.n;
    out.m = outer.m;
    out.k = k;
    out.base = inner.base;
    out.value = outer.value;

    for (const auto& [beta, coeff_vec] : outer.coeffs) {
        long lower_bound = 0;
        for (int i = 0; i < beta.dim(); ++i) lower_bound += beta[i];
        if (lower_bound > k) continue;
        const series::Series<T>& pw = powers.power(beta);
        for (int c = 0; c < outer.m; ++c) {
            const T& cc = coeff_vec[static_cast<size_t>(c)];
            if (cc == T(0)) continue;
            for (const auto& [a, v] : pw) {
                if (a.order() == 0 || a.order() > k) continue;
                auto it = out.coeffs.find(a);
                if (it == out.coeffs.end())
                    it = out.coeffs.emplace(a, std::vector<T>(static_cast<size_t>(outer.m), T(0))).first;
                it->second[static_cast<size_t>(c)] += cc * v;
            }
        }
    }
    out.normalize();
    return out;
}

/// Inversion in the jet groupoid: coefficients solved degree by degree,
/// seeded with the exact Jacobian inverse. Terminates in k steps.
template <typename T>
TruncatedJet<T> jet_invert(const TruncatedJet<T>& a) {
    if (a.n != a.m) throw DomainError("non-invertible jet: not square");
    const int n = a.n;
    const int k = a.k;
    if (k == 0) {
        // order 0 is the pair groupoid: inversion swaps the endpoints
        TruncatedJet<T> out = a;
        std::swap(out.base, out.value);
        return out;
    }
    Mat<T> jac = a.jacobian();
    if (determinant(jac) == T(0))
        throw DomainError("non-invertible element of J_k: singular Jacobian (outside the invertible-jet groupoid)");
    const Mat<T> jac_inv = inverse(jac);

    // linear seed B_1(v) = J^{-1} v
    std::vector<series::Series<T>> b(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c)
        for (int j = 0; j < n; ++j)
            if (!(jac_inv(c, j) == T(0))) b[static_cast<size_t>(c)].emplace(MultiIndex::unit(n, j), jac_inv(c, j));

    if (k >= 2) {
        // displacement series of a
        std::vector<series::Series<T>> disp(static_cast<size_t>(n));
        for (const auto& [al, v] : a.coeffs)
            for (int c = 0; c < n; ++c)
                if (!(v[static_cast<size_t>(c)] == T(0))) disp[static_cast<size_t>(c)].emplace(al, v[static_cast<size_t>(c)]);
        std::vector<int> ones(static_cast<size_t>(n), 1);

        // linear series v -> J^{-1} v used to substitute into the degree-d defect
        std::vector<series::Series<T>> lin(static_cast<size_t>(n));
        for (int c = 0; c < n; ++c)
            for (int j = 0; j < n; ++j)
                if (!(jac_inv(c, j) == T(0))) lin[static_cast<size_t>(c)].emplace(MultiIndex::unit(n, j), jac_inv(c, j));

        for (int d = 2; d <= k; ++d) {
            // compose current b with disp, inspect the degree-d defect
            series::PowerCache<T> powers(disp, n, k);
            for (int c = 0; c < n; ++c) {
                Polynomial<T> bc(n);
                for (const auto& [al, v] : b[static_cast<size_t>(c)]) bc.set(al, v);
                series::Series<T> comp = series::eval_polynomial(bc, powers, ones, k);
                // defect: comp should be the identity displacement u_c up to degree d
                series::Series<T> defect;
                for (const auto& [al, v] : comp)
                    if (al.order() == d) defect.emplace(al, v);
                if (defect.empty()) continue;
                // B_d(v) = -defect(J^{-1} v)
                Polynomial<T> dp(n);
                for (const auto& [al, v] : defect) dp.set(al, v);
                series::PowerCache<T> lin_powers(lin, n, k);
                series::Series<T> corr = series::eval_polynomial(dp, lin_powers, ones, k);
                series::add_scaled(b[static_cast<size_t>(c)], corr, T(-1));
            }
        }
    }

    TruncatedJet<T> out;
    out.n = out.m = n;
    out.k = k;
    out.base = a.value;
    out.value = a.base;
    for (int c = 0; c < n; ++c)
        for (const auto& [al, v] : b[static_cast<size_t>(c)]) {
            auto it = out.coeffs.find(al);
            if (it == out.coeffs.end()) it = out.coeffs.emplace(al, std::vector<T>(static_cast<size_t>(n), T(0))).first;
            it->second[static_cast<size_t>(c)] = v;
        }
    out.normalize();
    return out;
}

namespace detail {
template <typename T>
void require_same_shape(const TruncatedJet<T>& a, const TruncatedJet<T>& b) {
    if (a.n != b.n || a.m != b.m) throw DomainError("jet dimension mismatch");
    if (a.k != b.k) throw DomainError("jet order mismatch");
    if (a.base != b.base) throw DomainError("jet base point mismatch");
}
} // namespace detail

template <typename T>
TruncatedJet<T> jet_add(const TruncatedJet<T>& a, const TruncatedJet<T>& b) {
    detail::require_same_shape(a, b);
    TruncatedJet<T> out = a;
    for (size_t i = 0; i < out.value.size(); ++i) out.value[i] += b.value[i];
    for (const auto& [al, v] : b.coeffs) {
        auto it = out.coeffs.find(al);
        if (it == out.coeffs.end())
            out.coeffs.emplace(al, v);
        else
            for (size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
    }
    out.normalize();
    return out;
}

template <typename T>
TruncatedJet<T> jet_scaled(const TruncatedJet<T>& a, const T& c) {
    TruncatedJet<T> out = a;
    for (auto& v : out.value) v *= c;
    for (auto& [al, v] : out.coeffs)
        for (auto& x : v) x *= c;
    out.normalize();
    return out;
}

/// Pointwise product of two scalar-valued jets (m == 1): truncated Cauchy product.
template <typename T>
TruncatedJet<T> jet_mul(const TruncatedJet<T>& a, const TruncatedJet<T>& b) {
    detail::require_same_shape(a, b);
    if (a.m != 1) throw DomainError("pointwise jet product requires scalar target (m = 1)");
    auto full = [](const TruncatedJet<T>& j) {
        series::Series<T> s;
        if (!(j.value[0] == T(0))) s.emplace(MultiIndex::zeros(j.n), j.value[0]);
        for (const auto& [al, v] : j.coeffs)
            if (!(v[0] == T(0))) s.emplace(al, v[0]);
        return s;
    };
    series::Series<T> prod = series::mul_trunc(full(a), full(b), a.k);
    TruncatedJet<T> out;
    out.n = a.n;
    out.m = 1;
    out.k = a.k;
    out.base = a.base;
    out.value.assign(1, T(0));
    for (const auto& [al, v] : prod) {
        if (al.order() == 0)
            out.value[0] = v;
        else
            out.coeffs.emplace(al, std::vector<T>{v});
    }
    return out;
}

/// rho_h: drop all coefficients of order above h.
template <typename T>
TruncatedJet<T> jet_project(const TruncatedJet<T>& a, int h) {
    if (h < 0 || h > a.k) throw DomainError("projection order out of range (0 <= h <= k required)");
    TruncatedJet<T> out;
    out.n = a.n;
    out.m = a.m;
    out.k = h;
    out.base = a.base;
    out.value = a.value;
    for (const auto& [al, v] : a.coeffs) {
        if (al.order() > h) break;
        out.coeffs.emplace(al, v);
    }
    return out;
}

} // namespace jetg
