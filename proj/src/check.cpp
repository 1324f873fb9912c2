#include "veerpoly/check.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>

#include "veerpoly/error.hpp"

namespace veerpoly {

bool CheckSummary::ok() const {
    return std::none_of(items.begin(), items.end(), [](const CheckItem& c) { return c.status == "fail"; });
}

std::string CheckSummary::first_failure() const {
    for (const auto& c : items)
        if (c.status == "fail") return c.name;
    return {};
}

TriangulationRecord relabel(const TriangulationRecord& rec, const std::vector<int>& tet_perm,
                            const std::vector<Perm4>& vertex_perm) {
    int n = rec.tetrahedra;
    TriangulationRecord out;
    out.tetrahedra = n;
    out.gluings.resize(n);
    out.coorientations.resize(n);
    if (rec.veers) out.veers.emplace(n);
    for (int t = 0; t < n; ++t) {
        int nt = tet_perm[t];
        const Perm4& st = vertex_perm[t];
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = rec.gluings[t][f];
            const Perm4& su = vertex_perm[g.tet];
            Perm4 np = su * g.perm * st.inverse();
            out.gluings[nt][st[f]] = Gluing{tet_perm[g.tet], su[g.face], np};
            out.coorientations[nt][st[f]] = rec.coorientations[t][f];
        }
        if (rec.veers)
            for (int s = 0; s < 6; ++s) {
                auto [a, b] = kSlotVertices[s];
                (*out.veers)[nt][slot_of(st[a], st[b])] = (*rec.veers)[t][s];
            }
    }
    return out;
}

std::vector<std::vector<long>> transfer_matrix(const Triangulation& base, const HomologyModel& base_hm,
                                               const Triangulation& other, const HomologyModel& other_hm,
                                               const std::vector<int>& tet_perm, const std::vector<Perm4>& vertex_perm) {
    std::vector<int> face_map(base.faces().size());
    for (const auto& f : base.faces()) {
        int t = f.upper.tet;
        face_map[f.id] = other.tet(tet_perm[t]).face[vertex_perm[t][f.upper.face]];
    }
    std::vector<std::vector<long>> m(other_hm.b, std::vector<long>(base_hm.b, 0));
    for (int k = 0; k < base_hm.b; ++k) {
        IVec chain(other.faces().size(), 0);
        for (std::size_t f = 0; f < face_map.size(); ++f) chain[face_map[f]] += base_hm.basis_cycles[k][f];
        IVec c = chain_class(other_hm, chain);
        for (int i = 0; i < other_hm.b; ++i) m[i][k] = c[i];
    }
    return m;
}

InvariantSet compute_invariants(const Triangulation& tri, const HomologyModel& hm, const CheckOptions& opt) {
    InvariantSet s;
    s.b = hm.b;
    s.torsion = hm.torsion;
    s.veering = veering_polynomial(tri, hm);
    s.taut = taut_polynomial(tri, hm, opt.mode, opt.budgets.minor_budget).theta;
    s.ab = ab_polynomial(tri, hm).canonical;
    s.generators = homology_direction_generators(tri, hm, opt.budgets.cycle_cap);
    s.carried = carried_cone(tri, hm, opt.budgets.face_budget).presentation.cone;
    s.layered = open_half_space(hm.b, s.generators).feasible;
    return s;
}

namespace {

ZVec apply(const std::vector<std::vector<long>>& m, const ZVec& v, bool transpose) {
    std::size_t rows = transpose ? m.empty() ? 0 : m[0].size() : m.size();
    ZVec r(rows, 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t k = 0; k < m[i].size(); ++k) {
            if (transpose) r[k] += m[i][k] * v[i];
            else r[i] += m[i][k] * v[k];
        }
    return r;
}

std::vector<ZVec> zvecs(const std::vector<IVec>& v) {
    std::vector<ZVec> r;
    for (const auto& x : v) r.push_back(to_zvec(x));
    return r;
}

}  // namespace

std::string compare_invariants(const InvariantSet& base, const InvariantSet& other,
                               const std::vector<std::vector<long>>& m) {
    if (base.b != other.b) return "betti number";
    if (base.torsion != other.torsion) return "torsion";
    auto same_poly = [&](const LaurentPoly& p, const LaurentPoly& q) {
        if (p.is_zero() || q.is_zero()) return p.is_zero() == q.is_zero();
        return normalize_unit(substitute(p, m)) == normalize_unit(q);
    };
    if (!same_poly(base.veering, other.veering)) return "veering polynomial";
    if (!same_poly(base.taut, other.taut)) return "taut polynomial";
    if (!same_poly(base.ab, other.ab)) return "AB polynomial";
    std::vector<ZVec> moved;
    for (const auto& g : zvecs(base.generators)) moved.push_back(apply(m, g, false));
    if (!same_cone(cone_hull(base.b, moved), cone_hull(other.b, zvecs(other.generators)))) return "cycle generator cone";
    Cone back;
    back.dim = base.b;
    for (const auto& r : other.carried.rays) back.rays.push_back(primitive(apply(m, r, true)));
    for (const auto& r : other.carried.lineality) back.lineality.push_back(apply(m, r, true));
    if (!same_cone(back, base.carried)) return "carried cone";
    if (base.layered != other.layered) return "layeredness";
    return {};
}

namespace {

struct Runner {
    CheckSummary summary;

    void run(const std::string& name, const std::function<std::string()>& body) {
        CheckItem item{name, "pass", ""};
        try {
            item.detail = body();
            if (item.detail.rfind("skip: ", 0) == 0) item.status = "skip";
            else if (!item.detail.empty() && item.detail.rfind("ok", 0) != 0) item.status = "fail";
        } catch (const Error& e) {
            item.status = is_budget_error(e.code()) ? "skip" : "fail";
            item.detail = e.what();
        } catch (const std::exception& e) {
            item.status = "fail";
            item.detail = e.what();
        }
        summary.items.push_back(item);
    }
};

std::string vec_str(const IVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

}  // namespace

CheckSummary check_all(const TriangulationRecord& rec, const CheckOptions& opt) {
    Runner r;
    std::optional<Triangulation> valid;
    r.run("validate", [&]() -> std::string {
        valid.emplace(Triangulation::validate(rec));
        return {};
    });
    if (!valid) return r.summary;
    const Triangulation& tri = *valid;
    HomologyModel hm = homology_basis(tri);
    const Budgets& bud = opt.budgets;

    r.run("sector_labels", [&]() -> std::string {
        for (const auto& s : build_sectors(tri))
            if (path_class(hm, s.sides[0]) != path_class(hm, s.sides[1]))
                return "edge " + std::to_string(s.edge) + " sides differ";
        return {};
    });
    IdentityVerdict iv = structural_identities(tri, hm);
    r.run("matrix_identity", [&]() -> std::string {
        return iv.matrix_identity ? "" : "L^tri L^AB != L eps";
    });
    r.run("face_sums", [&]() -> std::string {
        return iv.face_sums ? "" : (iv.failures.empty() ? "face sum failed" : iv.failures.front());
    });
    r.run("ab_determinant", [&]() -> std::string { return iv.ab_determinant ? "" : "det(L^AB) != cycle product"; });

    LaurentPoly v_raw = veering_determinant(tri, hm);
    r.run("oracle_equality", [&]() -> std::string {
        LaurentPoly c = perron_clique_oracle(build_flow_graph(tri), hm, bud.cycle_cap);
        return v_raw == c ? "" : "det(L) = " + v_raw.str() + " but clique route = " + c.str();
    });
    r.run("factorization", [&]() -> std::string {
        LaurentPoly v = normalize_unit(v_raw);
        LaurentPoly vab = ab_polynomial(tri, hm).canonical;
        TautResult t = taut_polynomial(tri, hm, opt.mode, bud.minor_budget);
        if (hm.b >= 2) {
            if (normalize_unit(vab * t.theta) != v) return "V != V^AB * Theta";
            return {};
        }
        LaurentPoly theta = t.theta;
        if (theta.is_zero() && !t.candidates.empty()) theta = t.candidates.front().second;
        auto f = rank_one_factors(v, vab, theta);
        if (f.empty()) return "no factor in {1, 1-t, 1+t} relates V and V^AB * Theta";
        return {};
    });
    r.run("theta_modes", [&]() -> std::string {
        if (ab_polynomial(tri, hm).canonical.is_zero()) return "skip: V^AB = 0, division mode is undefined";
        TautResult a = taut_polynomial(tri, hm, ThetaMode::Division, bud.minor_budget);
        LaurentPoly b = taut_polynomial(tri, hm, ThetaMode::Exact, bud.minor_budget).theta;
        if (hm.b >= 2) return equal_up_to_unit(a.theta, b) ? "" : "division and exact Theta differ";
        for (const auto& [factor, p] : a.candidates)
            if (equal_up_to_unit(p, b)) return {};
        return "exact Theta is not among the division candidates";
    });

    std::vector<IVec> gens;
    r.run("cone_duality", [&]() -> std::string {
        gens = homology_direction_generators(tri, hm, bud.cycle_cap);
        if (gens.empty()) return "no cycle generators";
        CarriedCone cc = carried_cone(tri, hm, bud.face_budget);
        return same_cone(cc.presentation.cone, dual_cone(hm.b, zvecs(gens))) ? "" : "carried cone != dual cone";
    });
    r.run("direction_cones", [&]() -> std::string {
        auto g = homology_direction_generators(tri, hm, bud.cycle_cap);
        auto f = flow_direction_generators(tri, hm, bud.cycle_cap);
        return same_cone(cone_hull(hm.b, zvecs(g)), cone_hull(hm.b, zvecs(f))) ? "" : "dual-graph and flow-graph cones differ";
    });
    r.run("layered_certificate", [&]() -> std::string {
        LayerednessVerdict lv = is_layered(tri, hm, bud.cycle_cap);
        bool zero = std::any_of(lv.generators.begin(), lv.generators.end(),
                                [](const IVec& g) { return std::all_of(g.begin(), g.end(), [](long x) { return x == 0; }); });
        if (zero && lv.layered) return "zero cycle class but layered";
        if (!lv.layered) return verify_farkas(lv.generators, lv.farkas) ? "" : "invalid Farkas certificate";
        if (!verify_eta(lv.generators, lv.eta)) return "eta fails on a generator";
        QVec w;
        for (const auto& x : lv.weights) {
            if (x <= 0) return "fibered weight not strictly positive";
            w.emplace_back(x);
        }
        if (!satisfies_switch_conditions(tri, w)) return "fibered weights violate switch conditions";
        QVec y = weight_class(hm, tri, w);
        for (const auto& g : lv.generators) {
            mpq_class s = 0;
            for (int k = 0; k < hm.b; ++k) s += y[k] * g[k];
            if (s <= 0) return "fibered class not positive on " + vec_str(g);
        }
        return {};
    });
    r.run("norm_euler", [&]() -> std::string {
        CarriedCone cc = carried_cone(tri, hm, bud.face_budget);
        for (const auto& ray : cc.weight_rays) {
            QVec w(ray.begin(), ray.end());
            NormData nd = norm_data(tri, hm, w);
            if (nd.norm != nd.euler) return "x != -e on a weight ray";
        }
        return {};
    });
    r.run("determinism", [&]() -> std::string {
        CheckOptions o = opt;
        InvariantSet base = compute_invariants(tri, hm, o);
        std::mt19937 rng(opt.seed);
        std::vector<Perm4> even;
        for (int i = 0; i < 24; ++i)
            if (Perm4::from_lex_index(i).sign() == 1) even.push_back(Perm4::from_lex_index(i));
        int n = tri.size();
        for (int run = 0; run < opt.reruns; ++run) {
            std::vector<int> tp(n);
            std::iota(tp.begin(), tp.end(), 0);
            std::shuffle(tp.begin(), tp.end(), rng);
            std::vector<Perm4> vp(n);
            for (auto& p : vp) p = even[rng() % even.size()];
            Triangulation other = Triangulation::validate(relabel(rec, tp, vp));
            TreeChoice tc;
            tc.root = int(rng() % n);
            tc.edge_order.resize(other.faces().size());
            std::iota(tc.edge_order.begin(), tc.edge_order.end(), 0);
            std::shuffle(tc.edge_order.begin(), tc.edge_order.end(), rng);
            HomologyModel ohm = homology_basis(other, tc);
            auto m = transfer_matrix(tri, hm, other, ohm, tp, vp);
            std::string diff = compare_invariants(base, compute_invariants(other, ohm, o), m);
            if (!diff.empty()) return "re-run " + std::to_string(run) + ": " + diff;
        }
        return {};
    });
    return r.summary;
}

}  // namespace veerpoly
