// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "algebroid.hpp"
#include "jet_groupoid.hpp"

#include <functional>
#include <optional>

namespace jetg {

struct FlowConfig {
    double step = 1e-3;
    double t_max = 10.0;
    double tol = 1e-6;
    bool richardson = false;
    double blowup_threshold = 1e12;
    double jacobian_floor = 1e-9;

    void check() const {
        if (step <= 0) throw DomainError("flow step must be positive");
        if (tol <= 0) throw DomainError("flow tolerance must be positive");
    }
};

/// Non-global flow detected at an internal time: the Lemma-1 regime where
/// the projected field is not global.
struct BlowUpError : DomainError {
    double time;
    BlowUpError(const std::string& what, double t) : DomainError(what), time(t) {}
};

using Vec = std::vector<double>;

double norm2(const Vec& v);
double norm_inf(const Vec& v);
Vec vec_sub(const Vec& a, const Vec& b);

// --- exact -> float conversions -------------------------------------------

Polynomial<double> to_double_poly(const Polynomial<Rational>& p);
PolyMap<double> to_double_map(const PolyMap<Rational>& p);
PolyMatrix<double> to_double_matrix_poly(const PolyMatrix<Rational>& p);
TrivialSection<double> to_double_section(const TrivialSection<Rational>& s);
JetSection<double> to_double_section(const JetSection<Rational>& s);

// --- base flows -------------------------------------------------------------

struct FlowResult {
    Vec point;
    std::optional<double> err_estimate; // only when cfg.richardson
};

/// RK4 integral curve of a polynomial vector field.
FlowResult flow_vector_field(const PolyMap<double>& theta, const Vec& x, double t, const FlowConfig& cfg);

struct TrivialFlowResult {
    Vec point;        // exp t theta (x)
    Mat<double> g;    // fundamental solution of dg/dt = [h o exp t theta(x)] g, g(0) = I
    std::optional<double> err_estimate;
};

/// Exp t Xi on a trivial groupoid: the coupled system of the base flow and
/// the linear matrix equation, classical RK4, fixed step.
TrivialFlowResult exp_trivial(const TrivialSection<double>& xi, const Vec& x, double t, const FlowConfig& cfg);

struct GroupPathSample {
    double t;
    Vec point;
    Mat<double> g;
};
using GroupPath = std::vector<GroupPathSample>;

/// Like exp_trivial but records every accepted step (for CSV output).
GroupPath exp_trivial_path(const TrivialSection<double>& xi, const Vec& x, double t, const FlowConfig& cfg);

/// Norm of Exp(t+u)Xi(x) minus the groupoid composite of the two partial
/// flows (the 1-parameter-subgroup law).
double group_law_defect(const TrivialSection<double>& xi, const Vec& x, double t, double u, const FlowConfig& cfg);

/// Defect of the second-order Campbell-Hausdorff approximation:
/// the section composite (Exp t Xi2 . Exp t Xi1)(x) against
/// Exp(t Xi1 + t Xi2 + (t^2/2)[Xi1, Xi2])(x). The composite applies Xi1
/// first, which is the order the right-invariant conventions make exact to
/// O(t^3); this is the executable oracle pinning the bracket sign.
/// bracket_weight scales the bracket term (1 = the formula, 0 = control
/// experiment, -1 = sign-flip control).
double bch_defect(const TrivialSection<double>& xi1, const TrivialSection<double>& xi2, const Vec& x, double t,
                  const FlowConfig& cfg, double bracket_weight = 1.0);

// --- translations on a trivial groupoid -------------------------------------

/// Element (target, g, source) of M x H x M with H a matrix group.
struct TrivialElement {
    Vec target;
    Mat<double> g;
    Vec source;
};

using AdmissibleSection = std::function<TrivialElement(const Vec&)>;

/// sigma as an admissible section: x -> Exp t Xi (x).
AdmissibleSection exp_section(const TrivialSection<double>& xi, double t, const FlowConfig& cfg);
AdmissibleSection unit_section(int m);

/// phi(g) = g . sigma(alpha(g))^-1 (right translation by a section).
TrivialElement right_translation(const TrivialElement& el, const AdmissibleSection& sigma);
/// psi(g) = sigma(beta(g)) . g.
TrivialElement left_translation(const TrivialElement& el, const AdmissibleSection& sigma);
/// psi o phi: g -> sigma(beta(g)) . g . sigma(alpha(g))^-1, an automorphism
/// fixing the units.
TrivialElement conjugation(const TrivialElement& el, const AdmissibleSection& sigma);

/// Ad(sigma)Sigma evaluated at the (numerically computed) point beta(sigma(x)):
/// the u-derivative at 0 of the conjugated curve u -> sigma . Exp u Sigma . sigma^-1,
/// by central difference with spacing du.
std::pair<Vec, Mat<double>> ad_of_section(const AdmissibleSection& sigma, const TrivialSection<double>& Sigma,
                                          const Vec& x, double du, const FlowConfig& cfg);

// --- jet-coefficient flows ---------------------------------------------------

/// Exp t Xi on the invertible-jet groupoid: integrates the prolonged
/// right-invariant coefficient field starting at the identity arrow at x.
JetArrow<double> exp_jet(const JetSection<double>& xi, const Vec& x, double t, const FlowConfig& cfg);

/// ((Exp t Xi)^* s)(x) = g(t,x)^-1 . s(exp t theta(x)) for Xi = (theta, h).
Vec operator_flow(const PolyMap<double>& theta, const PolyMatrix<double>& h, const PolyMap<double>& s,
                  const Vec& x, double t, const FlowConfig& cfg);

// --- fibration-in-groups exponential (exact) ---------------------------------

/// Order-k jet at base of a matrix-valued map: displacement-polynomial matrix.
struct MatrixJet {
    int n = 0;
    int m = 0;
    int k = 0;
    std::vector<Rational> base;
    PolyMatrix<Rational> poly; // in displacement variables, degree <= k

    bool operator==(const MatrixJet& o) const {
        return n == o.n && m == o.m && k == o.k && base == o.base && poly == o.poly;
    }
};

MatrixJet matrix_jet_of(const PolyMatrix<Rational>& zeta, const std::vector<Rational>& base, int k);
/// Pointwise product of matrix jets at the same base, truncated.
MatrixJet matrix_jet_mul(const MatrixJet& a, const MatrixJet& b);

/// Exp t j_k zeta = j_k(exp t zeta): truncated-series matrix exponential on
/// jet coefficients, scaling-and-squaring with series order 12. Exact for
/// nilpotent inputs (nilpotency index <= 13).
MatrixJet exp_group_jet(const PolyMatrix<Rational>& zeta, const std::vector<Rational>& x, const Rational& t, int k);

} // namespace jetg
