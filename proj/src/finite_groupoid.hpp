// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "errors.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace jetg {

using Arrow = int;

/// Finite group given by its Cayley table; element 0 is the identity.
struct CayleyTable {
    std::string name;
    std::vector<std::vector<int>> mul;

    int order() const { return static_cast<int>(mul.size()); }
    int compose(int a, int b) const { return mul[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
    int inverse(int a) const {
        for (int b = 0; b < order(); ++b)
            if (compose(a, b) == 0) return b;
        throw DomainError("element without inverse in Cayley table");
    }
    void validate() const;

    static CayleyTable cyclic(int n);
    static CayleyTable direct_product(const CayleyTable& a, const CayleyTable& b);
    static CayleyTable symmetric3();
    static CayleyTable dihedral4();
};

/// Subgroups of |H| <= 24 by closure enumeration; each returned as a sorted element list.
std::vector<std::vector<int>> subgroups(const CayleyTable& h);
bool subgroup_is_normal(const CayleyTable& h, const std::vector<int>& sub);

/// Finite groupoid as an explicit table. Arrows are integers 0..size-1 with
/// optional display names. comp is a partial map stored densely (-1 = undefined).
class GroupoidTable {
public:
    GroupoidTable() = default;
    GroupoidTable(int num_arrows, std::vector<Arrow> units, std::vector<Arrow> src, std::vector<Arrow> tgt,
                  std::vector<std::vector<Arrow>> comp, std::vector<Arrow> inv,
                  std::vector<std::string> names = {});

    int size() const { return static_cast<int>(src_.size()); }
    const std::vector<Arrow>& units() const { return units_; }
    bool is_unit(Arrow a) const { return unit_flags_[static_cast<size_t>(a)]; }
    Arrow src(Arrow a) const { return src_[static_cast<size_t>(a)]; }
    Arrow tgt(Arrow a) const { return tgt_[static_cast<size_t>(a)]; }
    Arrow inv(Arrow a) const { return inv_[static_cast<size_t>(a)]; }
    bool composable(Arrow g, Arrow h) const { return src(g) == tgt(h); }
    /// Defined iff src(g) = tgt(h); throws otherwise.
    Arrow comp(Arrow g, Arrow h) const {
        const Arrow r = comp_[static_cast<size_t>(g)][static_cast<size_t>(h)];
        if (r < 0) throw DomainError("non-composable: alpha(g) != beta(h)");
        return r;
    }
    std::optional<Arrow> comp_opt(Arrow g, Arrow h) const {
        const Arrow r = comp_[static_cast<size_t>(g)][static_cast<size_t>(h)];
        return r < 0 ? std::nullopt : std::optional<Arrow>(r);
    }
    const std::string& name(Arrow a) const { return names_[static_cast<size_t>(a)]; }

    /// Arrows with source = target = e.
    std::vector<Arrow> isotropy(Arrow e) const;

    static GroupoidTable pair_groupoid(int num_points);
    /// Trivial groupoid M x H x M with |M| = num_points.
    static GroupoidTable trivial_groupoid(int num_points, const CayleyTable& h);
    static GroupoidTable disjoint_union(const GroupoidTable& a, const GroupoidTable& b);

    /// Arrow id of the trivial-groupoid element (y, h, x).
    static Arrow trivial_arrow(int num_points, int group_order, int y, int h, int x) {
        return (y * group_order + h) * num_points + x;
    }

private:
    std::vector<Arrow> units_;
    std::vector<bool> unit_flags_;
    std::vector<Arrow> src_, tgt_, inv_;
    std::vector<std::vector<Arrow>> comp_;
    std::vector<std::string> names_;

    friend class GroupoidBuilder;
};

/// One axiom violation with enough data to point at the offending entries.
struct AxiomViolation {
    std::string rule; // e.g. "associativity", "composability-domain", "unit", "inverse"
    std::vector<Arrow> witness;
    std::string detail;
};

struct AxiomReport {
    std::vector<AxiomViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks Definition-1 axioms plus the composability biconditional
/// (gh,k) composable iff (h,k) composable. Violations are data, not errors.
AxiomReport check_axioms(const GroupoidTable& t);

/// Wide subgroupoid (contains all units, closed under comp and inv).
struct Subgroupoid {
    std::vector<bool> member;

    static Subgroupoid units_only(const GroupoidTable& t);
    static Subgroupoid from_arrows(const GroupoidTable& t, const std::vector<Arrow>& arrows);
};

/// Throws DomainError if s is not a wide subgroupoid of t.
void validate_subgroupoid(const GroupoidTable& t, const Subgroupoid& s);

/// Right cosets Sigma_e . gamma, e = tgt(gamma). Blocks are canonicalized by
/// least arrow id and returned sorted by that representative.
std::vector<std::vector<Arrow>> cosets(const GroupoidTable& t, const Subgroupoid& s);
/// Left cosets gamma . Sigma_e, e = src(gamma); the paper's other procedure.
std::vector<std::vector<Arrow>> cosets_left(const GroupoidTable& t, const Subgroupoid& s);

struct NormalityResult {
    bool normal = false;
    std::optional<std::pair<Arrow, Arrow>> witness; // (gamma, x) with gamma.x.gamma^-1 outside
};

NormalityResult is_normal(const GroupoidTable& t, const Subgroupoid& s);

struct QuotientResult {
    GroupoidTable table;
    std::vector<std::vector<Arrow>> blocks;   // blocks[i] = arrows in quotient arrow i
    std::vector<int> block_of;                // arrow -> quotient arrow id
};

/// Quotient by a normal subgroupoid; composition by Eq-style representative
/// product, verified representative-independent. Throws on non-normal s
/// with the witness in the message.
QuotientResult quotient(const GroupoidTable& t, const Subgroupoid& s);

struct ComponentReport {
    std::vector<Arrow> units;
    bool transitive = false;            // beta v alpha surjective onto the component square
    bool isotropy_isomorphic = false;   // all isotropy groups pairwise isomorphic
    bool isotropy_checked = true;       // false when |isotropy| > 24 (reported unchecked)
    bool simply_transitive = false;     // isotropy action on beta-fibres of alpha-fibres
    int isotropy_order = 0;
};

struct LocalTrivialityReport {
    std::vector<ComponentReport> components;
};

/// Finite analogues of the local-triviality conditions, per connected
/// component of the unit set.
LocalTrivialityReport local_triviality_checks(const GroupoidTable& t);

/// Brute-force group isomorphism test for orders <= 24.
bool groups_isomorphic(const CayleyTable& a, const CayleyTable& b);

/// Isotropy group at e as a Cayley table (element 0 = the unit e).
CayleyTable isotropy_group(const GroupoidTable& t, Arrow e);

} // namespace jetg
