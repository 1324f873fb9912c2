#include "veerpoly/invariants.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>

#include "veerpoly/error.hpp"

namespace veerpoly {

LaurentPoly monomial_of(int b, const IVec& e, long coef) {
    Exponent ex{};
    for (int i = 0; i < b; ++i) ex[i] = std::int32_t(e[i]);
    return LaurentPoly::monomial(b, ex, coef);
}

LaurentMatrix edge_matrix(const Triangulation& tri, const HomologyModel& hm) {
    int n = int(tri.edges().size()), b = hm.b;
    LaurentMatrix m(n, n, b);
    for (int t = 0; t < tri.size(); ++t) {
        const TetInfo& ti = tri.tet(t);
        int col = ti.edge[ti.bottom_slot];
        m.at(col, col) += LaurentPoly::constant(b, 1);
        auto s = s_slots(tri, t);
        for (int slot : {ti.top_slot, s[0], s[1]}) m.at(ti.edge[slot], col) -= monomial_of(b, hm.h[t][slot]);
    }
    return m;
}

namespace {

// Slots of the bottom face `face` of t: bottom slot, its s slot and its r slot.
struct FaceSlots {
    int bottom, s, r;
};

FaceSlots bottom_face_slots(const Triangulation& tri, int t, int face) {
    auto s = s_slots(tri, t);
    auto r = r_slots(tri, t);
    FaceSlots fs;
    fs.bottom = tri.tet(t).bottom_slot;
    fs.s = face_contains_slot(face, s[0]) ? s[0] : s[1];
    fs.r = face_contains_slot(face, r[0]) ? r[0] : r[1];
    return fs;
}

}  // namespace

LaurentMatrix face_matrix(const Triangulation& tri, const HomologyModel& hm) {
    int ne = int(tri.edges().size()), nf = int(tri.faces().size()), b = hm.b;
    LaurentMatrix m(ne, nf, b);
    for (const auto& f : tri.faces()) {
        int t = f.upper.tet;
        FaceSlots fs = bottom_face_slots(tri, t, f.upper.face);
        const TetInfo& ti = tri.tet(t);
        m.at(ti.edge[fs.bottom], f.id) += LaurentPoly::constant(b, 1);
        m.at(ti.edge[fs.s], f.id) -= monomial_of(b, hm.h[t][fs.s]);
        m.at(ti.edge[fs.r], f.id) -= monomial_of(b, hm.h[t][fs.r]);
    }
    return m;
}

LaurentMatrix ab_matrix(const Triangulation& tri, const HomologyModel& hm, const AbPermutation& ab) {
    int nf = int(tri.faces().size()), b = hm.b;
    LaurentMatrix m = LaurentMatrix::identity(nf, b);
    for (int f = 0; f < nf; ++f) {
        int a = ab.image[f];
        m.at(a, f) += monomial_of(b, hm.phi[a]);
    }
    return m;
}

LaurentMatrix epsilon_matrix(const Triangulation& tri, int b) {
    LaurentMatrix m(tri.edges().size(), tri.faces().size(), b);
    for (const auto& f : tri.faces()) m.at(f.bottom_edge, f.id) = LaurentPoly::constant(b, 1);
    return m;
}

LaurentPoly veering_determinant(const Triangulation& tri, const HomologyModel& hm) {
    return det_laurent(edge_matrix(tri, hm));
}

LaurentPoly veering_polynomial(const Triangulation& tri, const HomologyModel& hm) {
    return normalize_unit(veering_determinant(tri, hm));
}

LaurentPoly clique_polynomial(const Digraph& g, const std::vector<IVec>& labels, int b, std::size_t cap,
                              std::size_t* cycle_count) {
    if (g.vertices > 64) throw Error(ErrorCode::DimensionBudgetExceeded, "clique_polynomial", "more than 64 vertices");
    auto cycles = simple_cycles(g, cap);
    if (cycle_count) *cycle_count = cycles.size();
    struct C {
        std::uint64_t mask;
        IVec cls;
    };
    std::vector<C> cs;
    for (const auto& c : cycles) {
        C x{0, IVec(b, 0)};
        for (int e : c) {
            x.mask |= std::uint64_t(1) << g.edges[e].first;
            for (int k = 0; k < b; ++k) x.cls[k] += labels[e][k];
        }
        cs.push_back(std::move(x));
    }
    std::map<Exponent, mpz_class> acc;
    acc[Exponent{}] += 1;
    Exponent cur{};
    std::function<void(std::size_t, std::uint64_t, int)> rec = [&](std::size_t start, std::uint64_t used, int size) {
        for (std::size_t i = start; i < cs.size(); ++i) {
            if (cs[i].mask & used) continue;
            for (int k = 0; k < b; ++k) cur[k] += std::int32_t(cs[i].cls[k]);
            acc[cur] += (size + 1) % 2 ? -1 : 1;
            rec(i + 1, used | cs[i].mask, size + 1);
            for (int k = 0; k < b; ++k) cur[k] -= std::int32_t(cs[i].cls[k]);
        }
    };
    rec(0, 0, 0);
    std::vector<Term> terms;
    for (auto& [e, c] : acc)
        if (c != 0) terms.push_back(Term{e, c});
    return LaurentPoly::from_terms(b, std::move(terms));
}

LaurentPoly labeled_adjacency_det(const Digraph& g, const std::vector<IVec>& labels, int b) {
    LaurentMatrix m = LaurentMatrix::identity(g.vertices, b);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto [from, to] = g.edges[i];
        m.at(to, from) -= monomial_of(b, labels[i]);
    }
    return det_laurent(m);
}

LaurentPoly perron_clique_oracle(const FlowGraph& phi, const HomologyModel& hm, std::size_t cap, std::size_t* cycle_count) {
    std::vector<IVec> labels;
    for (const auto& e : phi.edges) labels.push_back(path_class(hm, e.path));
    return clique_polynomial(phi.digraph(), labels, hm.b, cap, cycle_count);
}

LaurentPoly ab_cycle_product(int b, const std::vector<AbCycle>& cycles) {
    LaurentPoly p = LaurentPoly::constant(b, 1);
    for (const auto& c : cycles) p *= LaurentPoly::constant(b, 1) + monomial_of(b, c.cls, c.sign);
    return p;
}

AbPolynomial ab_polynomial(const Triangulation& tri, const HomologyModel& hm) {
    AbPermutation ab = ab_permutation(tri);
    AbPolynomial out;
    for (const auto& cyc : ab.cycles) {
        AbCycle c;
        c.faces = cyc;
        c.length = int(cyc.size());
        c.cls = cycle_class(hm, cyc);
        c.sign = c.length % 2 ? 1 : -1;
        out.cycles.push_back(std::move(c));
    }
    out.raw = ab_cycle_product(hm.b, out.cycles);
    out.canonical = normalize_unit(out.raw);
    LaurentPoly d = det_laurent(ab_matrix(tri, hm, ab));
    if (!equal_up_to_unit(d, out.raw))
        throw Error(ErrorCode::InternalMismatch, "ab_polynomial", "det(L^AB) = " + d.str() + " but cycle product = " + out.raw.str());
    return out;
}

std::string to_string(ThetaMode m) {
    switch (m) {
        case ThetaMode::Exact: return "exact";
        case ThetaMode::Division: return "division";
        case ThetaMode::Auto: return "auto";
    }
    return "?";
}

namespace {

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return std::size_t(r);
}

}  // namespace

LaurentPoly gcd_of_maximal_minors(const LaurentMatrix& m, std::size_t budget, std::size_t* count) {
    std::size_t r = m.rows(), c = m.cols();
    std::size_t total = binomial_capped(c, r, budget);
    if (total > budget)
        throw Error(ErrorCode::MinorBudgetExceeded, "gcd of minors",
                    "C(" + std::to_string(c) + "," + std::to_string(r) + ") exceeds budget " + std::to_string(budget));
    if (count) *count = total;
    LaurentPoly acc(m.nvars());
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    auto is_one = [](const LaurentPoly& p) { return p.is_constant() && !p.is_zero() && p.terms()[0].coef == 1; };
    while (true) {
        LaurentPoly d = det_laurent(m.select_columns(idx));
        if (!d.is_zero()) {
            if (acc.is_zero()) acc = normalize_unit(d);
            else if (!try_div_exact(d, acc)) acc = gcd_laurent(acc, d);
            if (is_one(acc)) break;
        }
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == c - r + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return acc;
}

LaurentMatrix reduced_face_presentation(const Triangulation& tri, const HomologyModel& hm, const AbPermutation& ab) {
    LaurentMatrix lt = face_matrix(tri, hm), l = edge_matrix(tri, hm);
    std::size_t ne = l.rows(), n = ab.cycles.size();
    LaurentMatrix m(ne, n + ne, hm.b);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < ne; ++r) m.at(r, i) = lt.at(r, ab.cycles[i].front());
    for (std::size_t j = 0; j < ne; ++j)
        for (std::size_t r = 0; r < ne; ++r) m.at(r, n + j) = l.at(r, j);
    return m;
}

std::vector<std::string> rank_one_factors(const LaurentPoly& v, const LaurentPoly& vab, const LaurentPoly& theta) {
    std::vector<std::string> out;
    if (v.nvars() != 1) return out;
    LaurentPoly one = LaurentPoly::constant(1, 1), t = LaurentPoly::monomial(1, std::vector<long>{1});
    LaurentPoly lhs = normalize_unit(vab * theta);
    for (auto& [name, c] : std::vector<std::pair<std::string, LaurentPoly>>{{"1", one}, {"1-t", one - t}, {"1+t", one + t}})
        if (normalize_unit(c * v) == lhs) out.push_back(name);
    return out;
}

TautResult taut_polynomial(const Triangulation& tri, const HomologyModel& hm, ThetaMode mode, std::size_t minor_budget) {
    AbPermutation ab = ab_permutation(tri);
    std::size_t ne = tri.edges().size(), n = ab.cycles.size();
    TautResult res;
    res.rank_one_caveat = hm.b == 1;
    bool affordable = binomial_capped(n + ne, ne, minor_budget) <= minor_budget;
    ThetaMode use = mode == ThetaMode::Auto ? (affordable ? ThetaMode::Exact : ThetaMode::Division) : mode;
    res.mode = use;
    LaurentPoly v = veering_polynomial(tri, hm);
    LaurentPoly vab = ab_polynomial(tri, hm).canonical;
    if (use == ThetaMode::Exact) {
        res.theta = gcd_of_maximal_minors(reduced_face_presentation(tri, hm, ab), minor_budget, &res.minors);
        if (hm.b == 1) {
            auto f = rank_one_factors(v, vab, res.theta);
            res.factor = f.size() == 1 ? f[0] : (f.empty() ? "none" : "ambiguous");
        }
        return res;
    }
    if (hm.b != 1) {
        res.theta = normalize_unit(div_exact(v, vab));
        return res;
    }
    LaurentPoly one = LaurentPoly::constant(1, 1), t = LaurentPoly::monomial(1, std::vector<long>{1});
    for (auto& [name, c] : std::vector<std::pair<std::string, LaurentPoly>>{{"1", one}, {"1-t", one - t}, {"1+t", one + t}}) {
        auto q = try_div_exact(c * v, vab);
        if (q) res.candidates.emplace_back(name, normalize_unit(*q));
    }
    if (res.candidates.empty())
        throw Error(ErrorCode::Inexact, "taut_polynomial", "no rank-one candidate divides exactly");
    if (res.candidates.size() == 1) {
        res.theta = res.candidates[0].second;
        res.factor = res.candidates[0].first;
    } else {
        res.theta = LaurentPoly(1);
        res.factor = "ambiguous";
    }
    return res;
}

IdentityVerdict structural_identities(const Triangulation& tri, const HomologyModel& hm) {
    IdentityVerdict v;
    AbPermutation ab = ab_permutation(tri);
    LaurentMatrix l = edge_matrix(tri, hm), lt = face_matrix(tri, hm), lab = ab_matrix(tri, hm, ab);
    LaurentMatrix eps = epsilon_matrix(tri, hm.b);
    LaurentMatrix lhs = lt * lab, rhs = l * eps;
    for (std::size_t f = 0; f < lhs.cols(); ++f) {
        ++v.matrix_checks;
        for (std::size_t r = 0; r < lhs.rows(); ++r)
            if (!(lhs.at(r, f) == rhs.at(r, f))) {
                v.matrix_identity = false;
                v.failures.push_back("matrix identity column " + std::to_string(f));
                break;
            }
    }
    for (const auto& f : tri.faces()) {
        int t = f.upper.tet;
        ++v.face_checks;
        FaceSlots fs = bottom_face_slots(tri, t, f.upper.face);
        int a = ab.image[f.id];
        int col = tri.bottom_edge(t);
        bool ok = tri.tet(t).edge[fs.r] == tri.face(a).bottom_edge;
        for (std::size_t r = 0; r < l.rows() && ok; ++r) {
            LaurentPoly x = lt.at(r, f.id) + monomial_of(hm.b, hm.h[t][fs.r]) * lt.at(r, a);
            if (!(x == l.at(r, col))) ok = false;
        }
        if (!ok) {
            v.face_sums = false;
            v.failures.push_back("face sum at face " + std::to_string(f.id));
        }
    }
    std::vector<AbCycle> cycles;
    for (const auto& cyc : ab.cycles) {
        AbCycle c;
        c.length = int(cyc.size());
        c.cls = cycle_class(hm, cyc);
        c.sign = c.length % 2 ? 1 : -1;
        cycles.push_back(c);
    }
    if (!(det_laurent(lab) == ab_cycle_product(hm.b, cycles))) {
        v.ab_determinant = false;
        v.failures.push_back("det(L^AB) differs from the cycle product");
    }
    return v;
}

}  // namespace veerpoly
