#include "veerpoly/cones.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "veerpoly/error.hpp"
#include "veerpoly/graphs.hpp"

namespace veerpoly {

ZVec primitive(const ZVec& v) {
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0 || g == 1) return v;
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

ZVec clear_denominators(const QVec& v) {
    mpz_class l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_num() * (l / v[i].get_den());
    return r;
}

ZVec to_zvec(const IVec& v) {
    ZVec r;
    for (long x : v) r.emplace_back(x);
    return r;
}

namespace {

mpz_class dot(const ZVec& a, const ZVec& b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Line through sign: combination with positive scale on `keep`.
ZVec combine(const mpz_class& ka, const ZVec& a, const mpz_class& kb, const ZVec& b) {
    ZVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ka * a[i] + kb * b[i];
    return primitive(r);
}

bool is_zero(const ZVec& v) {
    return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
}

using Bits = std::vector<std::uint64_t>;

struct Ray {
    ZVec v;
    Bits z;
};

bool subset(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

Bits meet(const Bits& a, const Bits& b) {
    Bits r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
    return r;
}

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t(1) << (i % 64); }

struct DD {
    int dim;
    std::size_t words;
    std::size_t cap;
    std::vector<ZVec> lin;
    std::vector<Ray> rays;

    // Removes the lineality direction l0 (a.l0 != 0) by projecting everything else into a.x = 0.
    ZVec split_lineality(const ZVec& a, std::size_t which) {
        ZVec l0 = lin[which];
        mpz_class al0 = dot(a, l0);
        if (al0 < 0) {
            for (auto& x : l0) x = -x;
            al0 = -al0;
        }
        std::vector<ZVec> nl;
        for (std::size_t i = 0; i < lin.size(); ++i) {
            if (i == which) continue;
            mpz_class al = dot(a, lin[i]);
            nl.push_back(al == 0 ? lin[i] : combine(al0, lin[i], -al, l0));
        }
        lin = std::move(nl);
        for (auto& r : rays) {
            mpz_class ar = dot(a, r.v);
            if (ar != 0) r.v = combine(al0, r.v, -ar, l0);
        }
        return l0;
    }

    std::vector<Ray> adjacent_combinations(const std::vector<std::size_t>& pos, const std::vector<std::size_t>& neg,
                                           const std::vector<mpz_class>& s, const Bits* extra_bit, std::size_t bit) {
        std::vector<Ray> out;
        for (std::size_t p : pos)
            for (std::size_t n : neg) {
                Bits z = meet(rays[p].z, rays[n].z);
                bool adj = true;
                for (std::size_t r = 0; r < rays.size() && adj; ++r)
                    if (r != p && r != n && subset(z, rays[r].z)) adj = false;
                if (!adj) continue;
                Ray nr{combine(s[p], rays[n].v, -s[n], rays[p].v), z};
                if (extra_bit) set_bit(nr.z, bit);
                out.push_back(std::move(nr));
                if (out.size() + rays.size() > cap)
                    throw Error(ErrorCode::DimensionBudgetExceeded, "double description", "ray count exceeds " + std::to_string(cap));
            }
        return out;
    }

    void equality(const ZVec& a) {
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (dot(a, lin[i]) != 0) {
                split_lineality(a, i);
                return;
            }
        std::vector<mpz_class> s(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<Ray> keep;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            s[r] = dot(a, rays[r].v);
            if (s[r] > 0) pos.push_back(r);
            else if (s[r] < 0) neg.push_back(r);
            else keep.push_back(rays[r]);
        }
        auto added = adjacent_combinations(pos, neg, s, nullptr, 0);
        for (auto& r : added) keep.push_back(std::move(r));
        rays = std::move(keep);
    }

    void inequality(const ZVec& a, std::size_t bit) {
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (dot(a, lin[i]) != 0) {
                ZVec l0 = split_lineality(a, i);
                for (auto& r : rays) set_bit(r.z, bit);
                Bits z(words, 0);
                for (std::size_t k = 0; k < bit; ++k) set_bit(z, k);
                rays.push_back(Ray{l0, z});
                return;
            }
        std::vector<mpz_class> s(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            s[r] = dot(a, rays[r].v);
            if (s[r] > 0) pos.push_back(r);
            else if (s[r] < 0) neg.push_back(r);
        }
        Bits dummy;
        auto added = adjacent_combinations(pos, neg, s, &dummy, bit);
        std::vector<Ray> keep;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (s[r] < 0) continue;
            Ray x = rays[r];
            if (s[r] == 0) set_bit(x.z, bit);
            keep.push_back(std::move(x));
        }
        for (auto& r : added) keep.push_back(std::move(r));
        rays = std::move(keep);
    }
};

// Rational Gaussian elimination to reduced row echelon form; returns the nonzero rows.
std::vector<QVec> rref(std::vector<QVec> m, int cols) {
    std::size_t row = 0;
    for (int c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        mpq_class inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][c] == 0) continue;
            mpq_class f = m[i][c];
            for (int j = 0; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        ++row;
    }
    m.resize(row);
    return m;
}

QVec to_q(const ZVec& v) {
    QVec r;
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

}  // namespace

Cone dd_cone(int dim, const std::vector<ZVec>& ineq, const std::vector<ZVec>& eq, std::size_t ray_cap) {
    DD dd;
    dd.dim = dim;
    dd.words = (ineq.size() + 63) / 64 + 1;
    dd.cap = ray_cap;
    for (int i = 0; i < dim; ++i) {
        ZVec e(dim, 0);
        e[i] = 1;
        dd.lin.push_back(e);
    }
    for (const auto& a : eq) dd.equality(a);
    for (std::size_t i = 0; i < ineq.size(); ++i) dd.inequality(ineq[i], i);
    Cone c;
    c.dim = dim;
    c.lineality = dd.lin;
    for (auto& r : dd.rays)
        if (!is_zero(r.v)) c.rays.push_back(r.v);
    std::sort(c.rays.begin(), c.rays.end());
    c.rays.erase(std::unique(c.rays.begin(), c.rays.end()), c.rays.end());
    return c;
}

Cone dual_cone(int dim, const std::vector<ZVec>& gens, std::size_t ray_cap) { return dd_cone(dim, gens, {}, ray_cap); }

Cone cone_hull(int dim, const std::vector<ZVec>& gens, std::size_t ray_cap) {
    Cone d = dual_cone(dim, gens, ray_cap);
    return dd_cone(dim, d.rays, d.lineality, ray_cap);
}

Cone canonical(const Cone& c) {
    Cone out;
    out.dim = c.dim;
    std::vector<QVec> l;
    for (const auto& v : c.lineality) l.push_back(to_q(v));
    l = rref(l, c.dim);
    for (const auto& row : l) out.lineality.push_back(primitive(clear_denominators(row)));
    // Orthogonal projection onto the complement of the lineality space.
    std::size_t k = out.lineality.size();
    std::vector<QVec> gram(k, QVec(k + 1));
    for (const auto& r : c.rays) {
        QVec v = to_q(r);
        if (k > 0) {
            std::vector<QVec> sys(k, QVec(k + 1, 0));
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) sys[i][j] = mpq_class(dot(out.lineality[i], out.lineality[j]));
                sys[i][k] = mpq_class(dot(out.lineality[i], r));
            }
            sys = rref(sys, int(k + 1));
            for (std::size_t i = 0; i < k; ++i)
                for (int j = 0; j < c.dim; ++j) v[j] -= sys[i][k] * out.lineality[i][j];
        }
        ZVec z = primitive(clear_denominators(v));
        if (!is_zero(z)) out.rays.push_back(z);
    }
    std::sort(out.rays.begin(), out.rays.end());
    out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
    return out;
}

bool same_cone(const Cone& a, const Cone& b) {
    Cone x = canonical(a), y = canonical(b);
    return x.dim == y.dim && x.rays == y.rays && x.lineality == y.lineality;
}

int cone_dimension(const Cone& c) {
    std::vector<QVec> m;
    for (const auto& v : c.rays) m.push_back(to_q(v));
    for (const auto& v : c.lineality) m.push_back(to_q(v));
    return int(rref(m, c.dim).size());
}

CarriedCone carried_cone(const Triangulation& tri, const HomologyModel& hm, std::size_t face_budget) {
    int nf = int(tri.faces().size());
    if (std::size_t(nf) > face_budget)
        throw Error(ErrorCode::DimensionBudgetExceeded, "carried_cone",
                    std::to_string(nf) + " faces exceed the budget " + std::to_string(face_budget));
    std::vector<ZVec> eq, ineq;
    for (const auto& e : tri.edges()) {
        ZVec a(nf, 0);
        for (int f : e.side_faces[0]) a[f] += 1;
        for (int f : e.side_faces[1]) a[f] -= 1;
        if (!is_zero(a)) eq.push_back(a);
    }
    for (int f = 0; f < nf; ++f) {
        ZVec a(nf, 0);
        a[f] = 1;
        ineq.push_back(a);
    }
    Cone w = dd_cone(nf, ineq, eq);
    if (!w.lineality.empty())
        throw Error(ErrorCode::InternalMismatch, "carried_cone", "weight cone is not pointed");
    CarriedCone out;
    out.weight_rays = w.rays;
    std::vector<ZVec> proj;
    for (const auto& r : w.rays) {
        QVec q;
        for (const auto& x : r) q.emplace_back(x);
        proj.push_back(primitive(clear_denominators(weight_class(hm, tri, q))));
    }
    int b = hm.b;
    Cone d = dual_cone(b, proj);
    Cone c = dd_cone(b, d.rays, d.lineality);
    out.presentation.ambient = b;
    out.presentation.cone = canonical(c);
    out.presentation.inequalities = d.rays;
    out.presentation.equalities = d.lineality;
    return out;
}

namespace {

std::vector<IVec> dedupe_primitive(std::vector<IVec> classes) {
    std::set<IVec> seen;
    for (auto& c : classes) {
        ZVec p = primitive(to_zvec(c));
        IVec q;
        for (const auto& x : p) q.push_back(x.get_si());
        seen.insert(q);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<IVec> homology_direction_generators(const Triangulation& tri, const HomologyModel& hm, std::size_t cap,
                                                std::size_t* cycle_count) {
    Digraph g = build_dual_graph(tri);
    auto cycles = simple_cycles(g, cap);
    if (cycle_count) *cycle_count = cycles.size();
    std::vector<IVec> classes;
    for (const auto& c : cycles) classes.push_back(cycle_class(hm, c));
    return dedupe_primitive(std::move(classes));
}

std::vector<IVec> flow_direction_generators(const Triangulation& tri, const HomologyModel& hm, std::size_t cap) {
    FlowGraph phi = build_flow_graph(tri);
    auto cycles = simple_cycles(phi.digraph(), cap);
    std::vector<IVec> classes;
    for (const auto& c : cycles) {
        std::vector<int> path;
        for (int e : c) path.insert(path.end(), phi.edges[e].path.begin(), phi.edges[e].path.end());
        classes.push_back(cycle_class(hm, path));
    }
    return dedupe_primitive(std::move(classes));
}

HalfSpaceResult open_half_space(int b, const std::vector<IVec>& gens) {
    HalfSpaceResult res;
    int m = int(gens.size());
    for (int i = 0; i < m; ++i)
        if (std::all_of(gens[i].begin(), gens[i].end(), [](long x) { return x == 0; })) {
            res.farkas.assign(m, 0);
            res.farkas[i] = 1;
            return res;
        }
    if (m == 0) {
        res.feasible = true;
        res.eta.assign(b, 0);
        return res;
    }
    // Columns: p (b), q (b), s (m), a (m). Rows: G p - G q - s + a = 1.
    int nc = 2 * b + 2 * m;
    std::vector<QVec> t(m, QVec(nc + 1, 0));
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < b; ++k) {
            t[i][k] = gens[i][k];
            t[i][b + k] = -gens[i][k];
        }
        t[i][2 * b + i] = -1;
        t[i][2 * b + m + i] = 1;
        t[i][nc] = 1;
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = 2 * b + m + i;
    QVec d(nc + 1, 0);  // reduced costs; d[nc] = -objective
    for (int j = 0; j < nc; ++j) {
        mpq_class c = j >= 2 * b + m ? 1 : 0;
        for (int i = 0; i < m; ++i) c -= t[i][j];
        d[j] = c;
    }
    for (int i = 0; i < m; ++i) d[nc] -= t[i][nc];
    while (true) {
        int enter = -1;
        for (int j = 0; j < nc; ++j)
            if (d[j] < 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        mpq_class best;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            mpq_class ratio = t[i][nc] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) throw Error(ErrorCode::InternalMismatch, "simplex", "phase one unbounded");
        mpq_class pv = t[leave][enter];
        for (auto& x : t[leave]) x /= pv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            mpq_class f = t[i][enter];
            for (int j = 0; j <= nc; ++j) t[i][j] -= f * t[leave][j];
        }
        mpq_class f = d[enter];
        for (int j = 0; j <= nc; ++j) d[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    mpq_class objective = -d[nc];
    if (objective > 0) {
        QVec y(m);
        for (int i = 0; i < m; ++i) y[i] = 1 - d[2 * b + m + i];
        res.farkas = primitive(clear_denominators(y));
        return res;
    }
    QVec eta(b, 0);
    for (int i = 0; i < m; ++i) {
        int j = basis[i];
        if (j < b) eta[j] += t[i][nc];
        else if (j < 2 * b) eta[j - b] -= t[i][nc];
    }
    res.feasible = true;
    res.eta = clear_denominators(eta);
    return res;
}

bool verify_eta(const std::vector<IVec>& gens, const ZVec& eta) {
    for (const auto& g : gens) {
        mpz_class s = 0;
        for (std::size_t k = 0; k < g.size(); ++k) s += eta[k] * g[k];
        if (s < 1) return false;
    }
    return true;
}

bool verify_farkas(const std::vector<IVec>& gens, const ZVec& y) {
    if (y.size() != gens.size() || gens.empty()) return false;
    mpz_class total = 0;
    for (const auto& x : y) {
        if (x < 0) return false;
        total += x;
    }
    if (total <= 0) return false;
    for (std::size_t k = 0; k < gens[0].size(); ++k) {
        mpz_class s = 0;
        for (std::size_t i = 0; i < gens.size(); ++i) s += y[i] * gens[i][k];
        if (s != 0) return false;
    }
    return true;
}

LayerednessVerdict is_layered(const Triangulation& tri, const HomologyModel& hm, std::size_t cap) {
    LayerednessVerdict v;
    Digraph g = build_dual_graph(tri);
    auto cycles = simple_cycles(g, cap);
    std::vector<IVec> classes;
    for (const auto& c : cycles) classes.push_back(cycle_class(hm, c));
    v.generators = dedupe_primitive(classes);
    HalfSpaceResult hs = open_half_space(hm.b, v.generators);
    if (!hs.feasible) {
        v.farkas = hs.farkas;
        return v;
    }
    v.layered = true;
    v.eta = hs.eta;
    // Weights k*eta(phi(e)) + p(head) - p(tail) >= 1 with integer potentials p.
    auto eta_of = [&](const IVec& x) {
        mpz_class s = 0;
        for (int k = 0; k < hm.b; ++k) s += v.eta[k] * x[k];
        return s;
    };
    mpz_class k = 1;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        mpz_class len = long(cycles[i].size()), pair = eta_of(classes[i]);
        mpz_class need;
        mpz_cdiv_q(need.get_mpz_t(), len.get_mpz_t(), pair.get_mpz_t());
        if (need > k) k = need;
    }
    v.scale = k.get_si();
    int n = g.vertices, ne = int(g.edges.size());
    std::vector<mpz_class> c(ne);
    for (int e = 0; e < ne; ++e) c[e] = 1 - k * eta_of(hm.phi[e]);
    std::vector<mpz_class> p(n, 0);
    for (int it = 0; it <= n; ++it) {
        bool changed = false;
        for (int e = 0; e < ne; ++e) {
            auto [a, b] = g.edges[e];
            if (p[a] + c[e] > p[b]) {
                p[b] = p[a] + c[e];
                changed = true;
            }
        }
        if (!changed) break;
        if (it == n) throw Error(ErrorCode::InternalMismatch, "is_layered", "positive cycle in potential system");
    }
    v.weights.resize(ne);
    for (int e = 0; e < ne; ++e) {
        auto [a, b] = g.edges[e];
        v.weights[e] = k * eta_of(hm.phi[e]) + p[b] - p[a];
    }
    return v;
}

NormData norm_data(const Triangulation& tri, const HomologyModel& hm, const QVec& w, const std::vector<IVec>& generators) {
    NormData nd;
    nd.y = weight_class(hm, tri, w);
    mpq_class s = 0;
    for (const auto& x : w) s += x;
    nd.norm = s / 2;
    IVec total = total_class(hm);
    mpq_class e = 0;
    for (int k = 0; k < hm.b; ++k) e += nd.y[k] * total[k];
    nd.euler = e / 2;
    if (nd.euler != nd.norm)
        throw Error(ErrorCode::InternalMismatch, "norm_data", "Euler class " + nd.euler.get_str() + " differs from norm " + nd.norm.get_str());
    if (!generators.empty()) {
        std::vector<ZVec> gz;
        for (const auto& x : generators) gz.push_back(to_zvec(x));
        Cone d = dual_cone(hm.b, gz);
        nd.face_codimension = hm.b - cone_dimension(d);
    }
    return nd;
}

}  // namespace veerpoly
