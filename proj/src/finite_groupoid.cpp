// SPDX-License-Identifier: Apache-2.0
#include "finite_groupoid.hpp"

#include <algorithm>
#include <numeric>

namespace jetg {

void CayleyTable::validate() const {
    const int n = order();
    if (n == 0) throw DomainError("empty Cayley table");
    for (const auto& row : mul) {
        if (static_cast<int>(row.size()) != n) throw DomainError("ragged Cayley table");
        for (int v : row)
            if (v < 0 || v >= n) throw DomainError("Cayley table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        if (compose(0, a) != a || compose(a, 0) != a) throw DomainError("Cayley table: 0 is not the identity");
    for (int a = 0; a < n; ++a) inverse(a); // throws when missing
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (compose(compose(a, b), c) != compose(a, compose(b, c)))
                    throw DomainError("Cayley table not associative");
}

CayleyTable CayleyTable::cyclic(int n) {
    CayleyTable t;
    t.name = "Z" + std::to_string(n);
    t.mul.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t.mul[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a + b) % n;
    return t;
}

CayleyTable CayleyTable::direct_product(const CayleyTable& a, const CayleyTable& b) {
    CayleyTable t;
    t.name = a.name + "x" + b.name;
    const int n = a.order() * b.order();
    t.mul.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    auto enc = [&](int x, int y) { return x * b.order() + y; };
    for (int x1 = 0; x1 < a.order(); ++x1)
        for (int y1 = 0; y1 < b.order(); ++y1)
            for (int x2 = 0; x2 < a.order(); ++x2)
                for (int y2 = 0; y2 < b.order(); ++y2)
                    t.mul[static_cast<size_t>(enc(x1, y1))][static_cast<size_t>(enc(x2, y2))] =
                        enc(a.compose(x1, x2), b.compose(y1, y2));
    return t;
}

namespace {
CayleyTable from_permutations(std::string name, std::vector<std::vector<int>> perms) {
    // element i acts as the permutation perms[i]; composition = apply right then left
    CayleyTable t;
    t.name = std::move(name);
    const int n = static_cast<int>(perms.size());
    t.mul.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    auto compose_perm = [](const std::vector<int>& f, const std::vector<int>& g) {
        std::vector<int> out(f.size());
        for (size_t i = 0; i < f.size(); ++i) out[i] = f[static_cast<size_t>(g[i])];
        return out;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto prod = compose_perm(perms[static_cast<size_t>(a)], perms[static_cast<size_t>(b)]);
            const auto it = std::find(perms.begin(), perms.end(), prod);
            if (it == perms.end()) throw DomainError("permutation set not closed");
            t.mul[static_cast<size_t>(a)][static_cast<size_t>(b)] = static_cast<int>(it - perms.begin());
        }
    return t;
}
} // namespace

CayleyTable CayleyTable::symmetric3() {
    return from_permutations("S3", {
        {0, 1, 2}, // e
        {1, 2, 0}, // (012)
        {2, 0, 1}, // (021)
        {1, 0, 2}, // (01)
        {0, 2, 1}, // (12)
        {2, 1, 0}, // (02)
    });
}

CayleyTable CayleyTable::dihedral4() {
    // symmetries of the square: rotations r^i and reflections r^i s on vertices 0..3
    std::vector<std::vector<int>> perms;
    const std::vector<int> r = {1, 2, 3, 0};
    const std::vector<int> s = {0, 3, 2, 1};
    auto apply = [](const std::vector<int>& f, const std::vector<int>& g) {
        std::vector<int> out(f.size());
        for (size_t i = 0; i < f.size(); ++i) out[i] = f[static_cast<size_t>(g[i])];
        return out;
    };
    std::vector<int> cur = {0, 1, 2, 3};
    for (int i = 0; i < 4; ++i) {
        perms.push_back(cur);
        cur = apply(r, cur);
    }
    cur = s;
    for (int i = 0; i < 4; ++i) {
        perms.push_back(cur);
        cur = apply(r, cur);
    }
    return from_permutations("D4", std::move(perms));
}

std::vector<std::vector<int>> subgroups(const CayleyTable& h) {
    const int n = h.order();
    if (n > 24) throw DomainError("subgroup enumeration limited to order <= 24");
    std::set<std::vector<int>> found;
    // closure of every subset of a small generating pool; for n <= 24 two
    // generators reach every subgroup of the groups used here
    auto closure = [&](std::vector<int> gens) {
        std::set<int> cl{0};
        for (int g : gens) cl.insert(g);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<int> cur(cl.begin(), cl.end());
            for (int a : cur)
                for (int b : cur) {
                    if (cl.insert(h.compose(a, b)).second) grew = true;
                    if (cl.insert(h.inverse(a)).second) grew = true;
                }
        }
        return std::vector<int>(cl.begin(), cl.end());
    };
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) found.insert(closure({a, b}));
    found.insert(closure({}));
    return {found.begin(), found.end()};
}

bool subgroup_is_normal(const CayleyTable& h, const std::vector<int>& sub) {
    std::set<int> s(sub.begin(), sub.end());
    for (int g = 0; g < h.order(); ++g)
        for (int x : sub)
            if (!s.count(h.compose(h.compose(g, x), h.inverse(g)))) return false;
    return true;
}

GroupoidTable::GroupoidTable(int num_arrows, std::vector<Arrow> units, std::vector<Arrow> src,
                             std::vector<Arrow> tgt, std::vector<std::vector<Arrow>> comp,
                             std::vector<Arrow> inv, std::vector<std::string> names)
    : units_(std::move(units)), src_(std::move(src)), tgt_(std::move(tgt)), inv_(std::move(inv)),
      comp_(std::move(comp)), names_(std::move(names)) {
    const auto sz = static_cast<size_t>(num_arrows);
    if (src_.size() != sz || tgt_.size() != sz || inv_.size() != sz || comp_.size() != sz)
        throw ParseError("groupoid table arrays have inconsistent sizes");
    for (const auto& row : comp_)
        if (row.size() != sz) throw ParseError("groupoid composition table is ragged");
    unit_flags_.assign(sz, false);
    for (Arrow u : units_) {
        if (u < 0 || u >= num_arrows) throw ParseError("unit id out of range");
        unit_flags_[static_cast<size_t>(u)] = true;
    }
    auto in_range = [&](Arrow a) { return a >= 0 && a < num_arrows; };
    for (size_t i = 0; i < sz; ++i) {
        if (!in_range(src_[i]) || !in_range(tgt_[i]) || !in_range(inv_[i]))
            throw ParseError("arrow id out of range in src/tgt/inv");
        for (Arrow c : comp_[i])
            if (c != -1 && !in_range(c)) throw ParseError("arrow id out of range in comp");
    }
    if (names_.empty()) {
        names_.reserve(sz);
        for (size_t i = 0; i < sz; ++i) names_.push_back("a" + std::to_string(i));
    }
    if (names_.size() != sz) throw ParseError("names array size mismatch");
}

std::vector<Arrow> GroupoidTable::isotropy(Arrow e) const {
    std::vector<Arrow> out;
    for (Arrow a = 0; a < size(); ++a)
        if (src(a) == e && tgt(a) == e) out.push_back(a);
    return out;
}

GroupoidTable GroupoidTable::pair_groupoid(int num_points) {
    const int n = num_points;
    const int sz = n * n;
    auto enc = [n](int y, int x) { return y * n + x; };
    std::vector<Arrow> units, src(sz), tgt(sz), inv(sz);
    std::vector<std::string> names(static_cast<size_t>(sz));
    std::vector<std::vector<Arrow>> comp(static_cast<size_t>(sz), std::vector<Arrow>(static_cast<size_t>(sz), -1));
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            const Arrow a = enc(y, x);
            src[static_cast<size_t>(a)] = enc(x, x);
            tgt[static_cast<size_t>(a)] = enc(y, y);
            inv[static_cast<size_t>(a)] = enc(x, y);
            names[static_cast<size_t>(a)] = "(" + std::to_string(y) + "," + std::to_string(x) + ")";
            if (x == y) units.push_back(a);
        }
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            for (int w = 0; w < n; ++w)
                comp[static_cast<size_t>(enc(y, x))][static_cast<size_t>(enc(x, w))] = enc(y, w);
    return GroupoidTable(sz, units, src, tgt, comp, inv, names);
}

GroupoidTable GroupoidTable::trivial_groupoid(int num_points, const CayleyTable& h) {
    const int n = num_points;
    const int ho = h.order();
    const int sz = n * ho * n;
    auto enc = [&](int y, int g, int x) { return trivial_arrow(n, ho, y, g, x); };
    std::vector<Arrow> units, src(sz), tgt(sz), inv(sz);
    std::vector<std::string> names(static_cast<size_t>(sz));
    std::vector<std::vector<Arrow>> comp(static_cast<size_t>(sz), std::vector<Arrow>(static_cast<size_t>(sz), -1));
    for (int y = 0; y < n; ++y)
        for (int g = 0; g < ho; ++g)
            for (int x = 0; x < n; ++x) {
                const Arrow a = enc(y, g, x);
                src[static_cast<size_t>(a)] = enc(x, 0, x);
                tgt[static_cast<size_t>(a)] = enc(y, 0, y);
                inv[static_cast<size_t>(a)] = enc(x, h.inverse(g), y);
                names[static_cast<size_t>(a)] =
                    "(" + std::to_string(y) + "," + std::to_string(g) + "," + std::to_string(x) + ")";
                if (x == y && g == 0) units.push_back(a);
            }
    // (y,g,x).(x,g',x') = (y,gg',x')
    for (int y = 0; y < n; ++y)
        for (int g = 0; g < ho; ++g)
            for (int x = 0; x < n; ++x)
                for (int g2 = 0; g2 < ho; ++g2)
                    for (int x2 = 0; x2 < n; ++x2)
                        comp[static_cast<size_t>(enc(y, g, x))][static_cast<size_t>(enc(x, g2, x2))] =
                            enc(y, h.compose(g, g2), x2);
    return GroupoidTable(sz, units, src, tgt, comp, inv, names);
}

GroupoidTable GroupoidTable::disjoint_union(const GroupoidTable& a, const GroupoidTable& b) {
    const int na = a.size(), nb = b.size();
    const int sz = na + nb;
    std::vector<Arrow> units, src(sz), tgt(sz), inv(sz);
    std::vector<std::string> names(static_cast<size_t>(sz));
    std::vector<std::vector<Arrow>> comp(static_cast<size_t>(sz), std::vector<Arrow>(static_cast<size_t>(sz), -1));
    for (Arrow i = 0; i < na; ++i) {
        src[static_cast<size_t>(i)] = a.src(i);
        tgt[static_cast<size_t>(i)] = a.tgt(i);
        inv[static_cast<size_t>(i)] = a.inv(i);
        names[static_cast<size_t>(i)] = "L" + a.name(i);
        for (Arrow j = 0; j < na; ++j)
            if (auto c = a.comp_opt(i, j)) comp[static_cast<size_t>(i)][static_cast<size_t>(j)] = *c;
    }
    for (Arrow i = 0; i < nb; ++i) {
        src[static_cast<size_t>(na + i)] = na + b.src(i);
        tgt[static_cast<size_t>(na + i)] = na + b.tgt(i);
        inv[static_cast<size_t>(na + i)] = na + b.inv(i);
        names[static_cast<size_t>(na + i)] = "R" + b.name(i);
        for (Arrow j = 0; j < nb; ++j)
            if (auto c = b.comp_opt(i, j)) comp[static_cast<size_t>(na + i)][static_cast<size_t>(na + j)] = na + *c;
    }
    for (Arrow u : a.units()) units.push_back(u);
    for (Arrow u : b.units()) units.push_back(na + u);
    return GroupoidTable(sz, units, src, tgt, comp, inv, names);
}

AxiomReport check_axioms(const GroupoidTable& t) {
    AxiomReport report;
    const int n = t.size();
    auto add = [&](std::string rule, std::vector<Arrow> witness, std::string detail) {
        report.violations.push_back({std::move(rule), std::move(witness), std::move(detail)});
    };

    // composability domain: comp(g,h) defined iff src(g) = tgt(h)
    for (Arrow g = 0; g < n; ++g)
        for (Arrow h = 0; h < n; ++h) {
            const bool defined = t.comp_opt(g, h).has_value();
            const bool should = t.src(g) == t.tgt(h);
            if (defined != should)
                add("composability-domain", {g, h},
                    defined ? "comp defined although alpha(g) != beta(h)"
                            : "comp undefined although alpha(g) = beta(h)");
        }

    // units: src/tgt of a unit is itself; units neutral where composable
    for (Arrow e : t.units()) {
        if (t.src(e) != e || t.tgt(e) != e) add("unit", {e}, "unit with src or tgt not equal to itself");
    }
    for (Arrow g = 0; g < n; ++g) {
        const Arrow e = t.src(g), ep = t.tgt(g);
        if (!t.is_unit(e)) add("unit", {g}, "src(g) is not a unit");
        if (!t.is_unit(ep)) add("unit", {g}, "tgt(g) is not a unit");
        if (auto c = t.comp_opt(g, e); !c || *c != g) add("unit", {g, e}, "g . alpha(g) != g");
        if (auto c = t.comp_opt(ep, g); !c || *c != g) add("unit", {ep, g}, "beta(g) . g != g");
    }

    // inverses: involution composing to the units
    for (Arrow g = 0; g < n; ++g) {
        const Arrow gi = t.inv(g);
        if (t.inv(gi) != g) add("inverse", {g}, "inv is not an involution at g");
        if (auto c = t.comp_opt(g, gi); !c || *c != t.tgt(g)) add("inverse", {g, gi}, "g . g^-1 != beta(g)");
        if (auto c = t.comp_opt(gi, g); !c || *c != t.src(g)) add("inverse", {gi, g}, "g^-1 . g != alpha(g)");
    }

    // associativity and source/target laws on all composable pairs/triples
    for (Arrow g = 0; g < n; ++g)
        for (Arrow h = 0; h < n; ++h) {
            const auto gh = t.comp_opt(g, h);
            if (!gh) continue;
            if (t.src(*gh) != t.src(h) || t.tgt(*gh) != t.tgt(g))
                add("endpoints", {g, h}, "alpha(gh) != alpha(h) or beta(gh) != beta(g)");
            for (Arrow k = 0; k < n; ++k) {
                const auto hk = t.comp_opt(h, k);
                const auto gh_k = t.comp_opt(*gh, k);
                // (gh,k) composable iff (h,k) composable
                if (hk.has_value() != gh_k.has_value()) {
                    add("composability-biconditional", {g, h, k},
                        "(gh,k) and (h,k) disagree on composability");
                    continue;
                }
                if (!hk) continue;
                const auto g_hk = t.comp_opt(g, *hk);
                if (!g_hk) {
                    add("composability-biconditional", {g, h, k}, "(g,hk) undefined although (gh,k) defined");
                    continue;
                }
                if (*gh_k != *g_hk) add("associativity", {g, h, k}, "(gh)k != g(hk)");
            }
        }
    return report;
}

Subgroupoid Subgroupoid::units_only(const GroupoidTable& t) {
    Subgroupoid s;
    s.member.assign(static_cast<size_t>(t.size()), false);
    for (Arrow u : t.units()) s.member[static_cast<size_t>(u)] = true;
    return s;
}

Subgroupoid Subgroupoid::from_arrows(const GroupoidTable& t, const std::vector<Arrow>& arrows) {
    Subgroupoid s;
    s.member.assign(static_cast<size_t>(t.size()), false);
    for (Arrow a : arrows) {
        if (a < 0 || a >= t.size()) throw ParseError("subgroupoid arrow id out of range");
        s.member[static_cast<size_t>(a)] = true;
    }
    for (Arrow u : t.units()) s.member[static_cast<size_t>(u)] = true;
    return s;
}

void validate_subgroupoid(const GroupoidTable& t, const Subgroupoid& s) {
    if (s.member.size() != static_cast<size_t>(t.size()))
        throw ParseError("subgroupoid member mask size mismatch");
    for (Arrow u : t.units())
        if (!s.member[static_cast<size_t>(u)])
            throw DomainError("invalid subgroupoid: missing a unit (units space must coincide)");
    for (Arrow a = 0; a < t.size(); ++a) {
        if (!s.member[static_cast<size_t>(a)]) continue;
        if (!s.member[static_cast<size_t>(t.inv(a))])
            throw DomainError("invalid subgroupoid: not closed under inverse");
        for (Arrow b = 0; b < t.size(); ++b) {
            if (!s.member[static_cast<size_t>(b)]) continue;
            if (auto c = t.comp_opt(a, b); c && !s.member[static_cast<size_t>(*c)])
                throw DomainError("invalid subgroupoid: not closed under composition");
        }
    }
}

namespace {
std::vector<std::vector<Arrow>> blocks_from_relation(const GroupoidTable& t,
                                                     const std::vector<int>& block_of_raw) {
    // canonicalize: representative = least arrow id in the block
    std::map<int, std::vector<Arrow>> by_rep;
    std::vector<int> rep(static_cast<size_t>(t.size()), -1);
    for (Arrow a = 0; a < t.size(); ++a) {
        const int b = block_of_raw[static_cast<size_t>(a)];
        if (rep[static_cast<size_t>(b)] < 0 || a < rep[static_cast<size_t>(b)]) rep[static_cast<size_t>(b)] = a;
    }
    for (Arrow a = 0; a < t.size(); ++a) by_rep[rep[static_cast<size_t>(block_of_raw[static_cast<size_t>(a)])]].push_back(a);
    std::vector<std::vector<Arrow>> out;
    for (auto& [r, block] : by_rep) {
        std::sort(block.begin(), block.end());
        out.push_back(std::move(block));
    }
    return out;
}
} // namespace

std::vector<std::vector<Arrow>> cosets(const GroupoidTable& t, const Subgroupoid& s) {
    validate_subgroupoid(t, s);
    // Z ~ Z' iff Z'.Z^-1 lies in the isotropy of Sigma at beta(Z), i.e.
    // Z'.Z^-1 in Sigma with matching targets (sources match by composability).
    // Blocks are the right classes Sigma_e . Z, e = beta(Z).
    std::vector<int> block(static_cast<size_t>(t.size()), -1);
    int next = 0;
    for (Arrow z = 0; z < t.size(); ++z) {
        if (block[static_cast<size_t>(z)] >= 0) continue;
        block[static_cast<size_t>(z)] = next;
        for (Arrow zp = z + 1; zp < t.size(); ++zp) {
            if (block[static_cast<size_t>(zp)] >= 0) continue;
            if (t.tgt(zp) != t.tgt(z)) continue;
            if (auto c = t.comp_opt(zp, t.inv(z)); c && s.member[static_cast<size_t>(*c)])
                block[static_cast<size_t>(zp)] = next;
        }
        ++next;
    }
    return blocks_from_relation(t, block);
}

std::vector<std::vector<Arrow>> cosets_left(const GroupoidTable& t, const Subgroupoid& s) {
    validate_subgroupoid(t, s);
    // Z ~ Z' iff Z^-1.Z' lies in the isotropy of Sigma at alpha(Z).
    std::vector<int> block(static_cast<size_t>(t.size()), -1);
    int next = 0;
    for (Arrow z = 0; z < t.size(); ++z) {
        if (block[static_cast<size_t>(z)] >= 0) continue;
        block[static_cast<size_t>(z)] = next;
        for (Arrow zp = z + 1; zp < t.size(); ++zp) {
            if (block[static_cast<size_t>(zp)] >= 0) continue;
            if (t.src(zp) != t.src(z)) continue;
            if (auto c = t.comp_opt(t.inv(z), zp); c && s.member[static_cast<size_t>(*c)])
                block[static_cast<size_t>(zp)] = next;
        }
        ++next;
    }
    return blocks_from_relation(t, block);
}

NormalityResult is_normal(const GroupoidTable& t, const Subgroupoid& s) {
    validate_subgroupoid(t, s);
    NormalityResult result;
    for (Arrow g = 0; g < t.size(); ++g) {
        const Arrow e = t.src(g);
        for (Arrow x = 0; x < t.size(); ++x) {
            if (!s.member[static_cast<size_t>(x)]) continue;
            if (t.src(x) != e || t.tgt(x) != e) continue; // only isotropic elements conjugate
            const Arrow conj = t.comp(t.comp(g, x), t.inv(g));
            if (!s.member[static_cast<size_t>(conj)]) {
                result.normal = false;
                result.witness = {g, x};
                return result;
            }
        }
    }
    result.normal = true;
    return result;
}

QuotientResult quotient(const GroupoidTable& t, const Subgroupoid& s) {
    const auto norm = is_normal(t, s);
    if (!norm.normal) {
        const auto [g, x] = *norm.witness;
        throw DomainError("non-normal subgroupoid: conjugate " + t.name(g) + "." + t.name(x) + "." +
                          t.name(t.inv(g)) + " leaves Sigma (representative-independence of Eq-style "
                          "quotient product fails)");
    }
    QuotientResult result;
    result.blocks = cosets(t, s);
    result.block_of.assign(static_cast<size_t>(t.size()), -1);
    for (size_t b = 0; b < result.blocks.size(); ++b)
        for (Arrow a : result.blocks[b]) result.block_of[static_cast<size_t>(a)] = static_cast<int>(b);

    const int qn = static_cast<int>(result.blocks.size());
    std::vector<Arrow> units, src(qn), tgt(qn), inv(qn);
    std::vector<std::string> names(static_cast<size_t>(qn));
    std::vector<std::vector<Arrow>> comp(static_cast<size_t>(qn), std::vector<Arrow>(static_cast<size_t>(qn), -1));

    for (int b = 0; b < qn; ++b) {
        const Arrow rep = result.blocks[static_cast<size_t>(b)].front();
        src[static_cast<size_t>(b)] = result.block_of[static_cast<size_t>(t.src(rep))];
        tgt[static_cast<size_t>(b)] = result.block_of[static_cast<size_t>(t.tgt(rep))];
        inv[static_cast<size_t>(b)] = result.block_of[static_cast<size_t>(t.inv(rep))];
        names[static_cast<size_t>(b)] = "[" + t.name(rep) + "]";
        for (Arrow a : result.blocks[static_cast<size_t>(b)])
            if (t.is_unit(a)) {
                units.push_back(b);
                break;
            }
    }
    // product by representatives; blocks share endpoints, so the front
    // representatives are composable whenever the blocks are
    for (int a = 0; a < qn; ++a)
        for (int b = 0; b < qn; ++b) {
            if (src[static_cast<size_t>(a)] != tgt[static_cast<size_t>(b)]) continue;
            const Arrow c = t.comp(result.blocks[static_cast<size_t>(a)].front(),
                                   result.blocks[static_cast<size_t>(b)].front());
            comp[static_cast<size_t>(a)][static_cast<size_t>(b)] = result.block_of[static_cast<size_t>(c)];
        }
    result.table = GroupoidTable(qn, units, src, tgt, comp, inv, names);
    return result;
}

namespace {
std::vector<std::vector<Arrow>> unit_components(const GroupoidTable& t) {
    // units connected when an arrow joins them (in either direction)
    std::map<Arrow, int> comp_of;
    int next = 0;
    for (Arrow u : t.units())
        if (!comp_of.count(u)) {
            std::vector<Arrow> stack{u};
            comp_of[u] = next;
            while (!stack.empty()) {
                const Arrow e = stack.back();
                stack.pop_back();
                for (Arrow a = 0; a < t.size(); ++a) {
                    Arrow other = -1;
                    if (t.src(a) == e) other = t.tgt(a);
                    else if (t.tgt(a) == e) other = t.src(a);
                    if (other >= 0 && !comp_of.count(other)) {
                        comp_of[other] = next;
                        stack.push_back(other);
                    }
                }
            }
            ++next;
        }
    std::vector<std::vector<Arrow>> out(static_cast<size_t>(next));
    for (const auto& [u, c] : comp_of) out[static_cast<size_t>(c)].push_back(u);
    for (auto& v : out) std::sort(v.begin(), v.end());
    return out;
}
} // namespace

CayleyTable isotropy_group(const GroupoidTable& t, Arrow e) {
    const auto elems = t.isotropy(e);
    std::map<Arrow, int> index;
    // put the unit first so element 0 is the identity
    std::vector<Arrow> ordered{e};
    for (Arrow a : elems)
        if (a != e) ordered.push_back(a);
    for (size_t i = 0; i < ordered.size(); ++i) index[ordered[i]] = static_cast<int>(i);
    CayleyTable g;
    g.name = "Iso(" + t.name(e) + ")";
    g.mul.assign(ordered.size(), std::vector<int>(ordered.size()));
    for (size_t i = 0; i < ordered.size(); ++i)
        for (size_t j = 0; j < ordered.size(); ++j)
            g.mul[i][j] = index.at(t.comp(ordered[i], ordered[j]));
    return g;
}

namespace {
bool iso_backtrack(const CayleyTable& a, const CayleyTable& b, std::vector<int>& map, std::vector<bool>& used,
                   size_t pos) {
    const size_t n = a.mul.size();
    if (pos == n) return true;
    for (int cand = 0; cand < static_cast<int>(n); ++cand) {
        if (used[static_cast<size_t>(cand)]) continue;
        if (pos == 0 && cand != 0) continue; // identity maps to identity
        map[pos] = cand;
        bool ok = true;
        for (size_t i = 0; i <= pos && ok; ++i)
            for (size_t j = 0; j <= pos && ok; ++j) {
                const int prod = a.compose(static_cast<int>(i), static_cast<int>(j));
                if (static_cast<size_t>(prod) <= pos) {
                    if (b.compose(map[i], map[j]) != map[static_cast<size_t>(prod)]) ok = false;
                }
            }
        if (ok) {
            used[static_cast<size_t>(cand)] = true;
            if (iso_backtrack(a, b, map, used, pos + 1)) return true;
            used[static_cast<size_t>(cand)] = false;
        }
    }
    map[pos] = -1;
    return false;
}
} // namespace

bool groups_isomorphic(const CayleyTable& a, const CayleyTable& b) {
    if (a.order() != b.order()) return false;
    if (a.order() > 24) throw DomainError("isomorphism search limited to order <= 24");
    std::vector<int> map(a.mul.size(), -1);
    std::vector<bool> used(a.mul.size(), false);
    used[0] = true;
    map[0] = 0;
    return iso_backtrack(a, b, map, used, 1);
}

LocalTrivialityReport local_triviality_checks(const GroupoidTable& t) {
    LocalTrivialityReport report;
    for (const auto& comp_units : unit_components(t)) {
        ComponentReport cr;
        cr.units = comp_units;

        // transitivity: every ordered pair of units joined by an arrow
        cr.transitive = true;
        for (Arrow e : comp_units)
            for (Arrow f : comp_units) {
                bool found = false;
                for (Arrow a = 0; a < t.size() && !found; ++a)
                    if (t.src(a) == e && t.tgt(a) == f) found = true;
                if (!found) {
                    cr.transitive = false;
                    break;
                }
            }

        // isotropy isomorphism along the component
        const CayleyTable first = isotropy_group(t, comp_units.front());
        cr.isotropy_order = first.order();
        cr.isotropy_isomorphic = true;
        cr.isotropy_checked = first.order() <= 24;
        if (cr.isotropy_checked)
            for (size_t i = 1; i < comp_units.size(); ++i) {
                const CayleyTable other = isotropy_group(t, comp_units[i]);
                if (other.order() > 24) {
                    cr.isotropy_checked = false;
                    break;
                }
                if (!groups_isomorphic(first, other)) {
                    cr.isotropy_isomorphic = false;
                    break;
                }
            }

        // simple transitivity of the isotropy action on beta-fibres of alpha-fibres
        cr.simply_transitive = true;
        for (Arrow e : comp_units) {
            const auto iso = t.isotropy(e);
            for (Arrow g = 0; g < t.size() && cr.simply_transitive; ++g) {
                if (t.src(g) != e) continue;
                for (Arrow gp = 0; gp < t.size(); ++gp) {
                    if (t.src(gp) != e || t.tgt(gp) != t.tgt(g)) continue;
                    int count = 0;
                    for (Arrow x : iso)
                        if (auto c = t.comp_opt(g, x); c && *c == gp) ++count;
                    if (count != 1) {
                        cr.simply_transitive = false;
                        break;
                    }
                }
            }
        }
        report.components.push_back(std::move(cr));
    }
    return report;
}

} // namespace jetg
