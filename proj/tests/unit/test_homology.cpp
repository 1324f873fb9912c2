#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "support.hpp"
#include "veerpoly/error.hpp"
#include "veerpoly/smith.hpp"

using namespace testing;

namespace {

template <class F>
ErrorCode error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Io;
}

IntMatrix to_int_matrix(const std::vector<std::vector<long>>& m) {
    IntMatrix r;
    for (const auto& row : m) r.emplace_back(row.begin(), row.end());
    return r;
}

IVec add(IVec a, const IVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

IVec sub(IVec a, const IVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

std::vector<TreeChoice> alternative_trees(const Triangulation& tri, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<TreeChoice> out;
    for (int i = 0; i < count; ++i) {
        TreeChoice c;
        c.root = int(rng() % tri.size());
        c.edge_order.resize(tri.faces().size());
        for (std::size_t k = 0; k < c.edge_order.size(); ++k) c.edge_order[k] = int(k);
        std::shuffle(c.edge_order.begin(), c.edge_order.end(), rng);
        out.push_back(c);
    }
    return out;
}

mpq_class dot(const QVec& y, const IVec& v) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += y[i] * v[i];
    return s;
}

}  // namespace

TEST_SUITE("homology") {

TEST_CASE("Smith normal form readings") {
    SUBCASE("diag(2, 0)") {
        IntMatrix d{{2, 0}, {0, 0}};
        SmithForm s = smith_normal_form(d, 2, 2);
        CHECK(s.rank == 1);
        REQUIRE(s.diagonal.size() == 1);
        CHECK(s.diagonal[0] == 2);
        // rank-2 cycle space: b = 2 - rank, torsion [2]
        CHECK(2 - s.rank == 1);
    }
    SUBCASE("zero boundary") {
        IntMatrix d(3, std::vector<mpz_class>(2, 0));
        SmithForm s = smith_normal_form(d, 3, 2);
        CHECK(s.rank == 0);
        CHECK(s.diagonal.empty());
    }
    SUBCASE("random matrices") {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
            IntMatrix d(r, std::vector<mpz_class>(c));
            for (auto& row : d)
                for (auto& x : row) x = int(rng() % 9) - 4;
            SmithForm s = smith_normal_form(d, r, c);
            IntMatrix prod = multiply(multiply(s.U, d, r), s.V, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) CHECK(prod[i][j] == s.S[i][j]);
            CHECK(multiply(s.U, s.Uinv, r) == identity_matrix(r));
            for (int i = 0; i < s.rank; ++i) {
                CHECK(s.S[i][i] == s.diagonal[i]);
                CHECK(s.diagonal[i] > 0);
                if (i + 1 < s.rank) CHECK(mpz_divisible_p(s.diagonal[i + 1].get_mpz_t(), s.diagonal[i].get_mpz_t()) != 0);
            }
            CHECK(smith_normal_form(d, r, c).diagonal == s.diagonal);
        }
    }
}

TEST_CASE("rank and torsion match the independent computation") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        auto [tri, hm] = load_valid(name);
        const Json& e = entry(name);
        CHECK(hm.b == e["b"].get<int>());
        std::vector<long> torsion;
        for (const auto& t : hm.torsion) torsion.push_back(t.get_si());
        CHECK(torsion == e["torsion"].get<std::vector<long>>());
        CHECK(hm.phi.size() == tri.faces().size());
        CHECK(hm.basis_cycles.size() == std::size_t(hm.b));
    }
    auto [tri, hm] = load_valid("FIX-A");
    CHECK(hm.b == 1);
    CHECK(hm.torsion.empty());
}

TEST_CASE("basis cycles have unit classes and tree edges are unlabeled") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        auto [tri, hm] = load_valid(name);
        for (int k = 0; k < hm.b; ++k) {
            IVec expected(hm.b, 0);
            expected[k] = 1;
            CHECK(chain_class(hm, hm.basis_cycles[k]) == expected);
        }
        for (std::size_t f = 0; f < hm.phi.size(); ++f)
            if (hm.in_tree[f]) CHECK(hm.phi[f] == IVec(hm.b, 0));
        IVec total(hm.b, 0);
        for (const auto& p : hm.phi) total = add(total, p);
        CHECK(total_class(hm) == total);
    }
}

TEST_CASE("sector sides have equal labels") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        auto [tri, hm] = load_valid(name);
        for (const auto& s : build_sectors(tri)) CHECK(path_class(hm, s.sides[0]) == path_class(hm, s.sides[1]));
    }
}

TEST_CASE("path labels") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        auto [tri, hm] = load_valid(name);
        for (int t = 0; t < tri.size(); ++t) {
            const auto& info = tri.tet(t);
            CHECK(path_label_slot(hm, tri, t, info.bottom_slot) == IVec(hm.b, 0));
            if (std::count(info.edge.begin(), info.edge.end(), tri.bottom_edge(t)) == 1)
                CHECK(path_label(hm, tri, t, tri.bottom_edge(t)) == IVec(hm.b, 0));
            IVec via0 = path_class(hm, ascending_path(tri, t, info.top_slot, 0));
            IVec via1 = path_class(hm, ascending_path(tri, t, info.top_slot, 1));
            CHECK(via0 == via1);
            CHECK(path_label_slot(hm, tri, t, info.top_slot) == via0);
            for (int k = 0; k < 6; ++k) CHECK(hm.h[t][k] == path_label_slot(hm, tri, t, k));
        }
    }
}

TEST_CASE("path_label errors") {
    auto [tri, hm] = load_valid("FIX-C");
    int t = 0;
    int missing = -1;
    for (const auto& e : tri.edges())
        if (std::find(tri.tet(t).edge.begin(), tri.tet(t).edge.end(), e.id) == tri.tet(t).edge.end()) missing = e.id;
    REQUIRE(missing >= 0);
    CHECK(error_of([&] { path_label(hm, tri, t, missing); }) == ErrorCode::NotIncident);
    CHECK(error_of([&] { path_label(hm, tri, tri.size(), 0); }) == ErrorCode::NotIncident);
    CHECK(error_of([&] { path_label_slot(hm, tri, 0, 6); }) == ErrorCode::NotIncident);
}

TEST_CASE("tree choice changes labels by a unimodular basis change and a coboundary") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        auto [tri, hm] = load_valid(name);
        auto cycles = simple_cycles(build_dual_graph(tri));
        for (const auto& choice : alternative_trees(tri, 3, 11)) {
            HomologyModel other = homology_basis(tri, choice);
            CHECK(other.b == hm.b);
            CHECK(other.torsion == hm.torsion);
            auto m = basis_change(hm, other);
            SmithForm s = smith_normal_form(to_int_matrix(m), hm.b, hm.b);
            CHECK(s.rank == hm.b);
            for (const auto& d : s.diagonal) CHECK(d == 1);
            for (const auto& c : cycles) CHECK(cycle_class(other, c) == testing::apply(m, cycle_class(hm, c)));

            // phi' - M phi = c(head) - c(tail) for a potential c on tetrahedra
            std::vector<IVec> pot(tri.size());
            std::vector<char> seen(tri.size(), 0);
            pot[0] = IVec(hm.b, 0);
            seen[0] = 1;
            bool grew = true;
            while (grew) {
                grew = false;
                for (const auto& f : tri.faces()) {
                    IVec delta = sub(other.phi[f.id], testing::apply(m, hm.phi[f.id]));
                    if (seen[f.below()] && !seen[f.above()]) {
                        pot[f.above()] = add(pot[f.below()], delta);
                        seen[f.above()] = grew = 1;
                    } else if (seen[f.above()] && !seen[f.below()]) {
                        pot[f.below()] = sub(pot[f.above()], delta);
                        seen[f.below()] = grew = 1;
                    }
                }
            }
            for (const auto& f : tri.faces())
                CHECK(sub(other.phi[f.id], testing::apply(m, hm.phi[f.id])) == sub(pot[f.above()], pot[f.below()]));
            for (int t = 0; t < tri.size(); ++t)
                for (int k = 0; k < 6; ++k) {
                    int up = tri.edge(tri.tet(t).edge[k]).upper_tet();
                    CHECK(other.h[t][k] == add(testing::apply(m, hm.h[t][k]), sub(pot[up], pot[t])));
                }
        }
    }
}

TEST_CASE("basis change round trip") {
    auto [tri, hm] = load_valid("s776");
    REQUIRE(hm.b == 3);
    HomologyModel other = homology_basis(tri, TreeChoice{tri.size() - 1, {}});
    auto there = basis_change(hm, other);
    auto back = basis_change(other, hm);
    for (int k = 0; k < hm.b; ++k) {
        IVec unit(hm.b, 0);
        unit[k] = 1;
        CHECK(testing::apply(back, testing::apply(there, unit)) == unit);
    }
}

TEST_CASE("AB-cycle classes match the independent computation") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        auto [tri, hm] = load_valid(name);
        const Json& e = entry(name);
        auto n = oracle_matrix(tri, hm, e);
        std::vector<std::pair<int, IVec>> ours, theirs;
        for (const auto& c : ab_permutation(tri).cycles) ours.push_back({int(c.size()), testing::apply(n, cycle_class(hm, c))});
        for (const auto& c : e["ab_cycles"]) theirs.push_back({c["length"].get<int>(), c["class"].get<IVec>()});
        std::sort(ours.begin(), ours.end());
        std::sort(theirs.begin(), theirs.end());
        CHECK(ours == theirs);
    }
}

TEST_CASE("cycle classes: rotation, additivity, chains") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        auto [tri, hm] = load_valid(name);
        Digraph g = build_dual_graph(tri);
        auto cycles = simple_cycles(g);
        for (const auto& c : cycles) {
            IVec cls = cycle_class(hm, c);
            for (std::size_t r = 1; r < c.size(); ++r) {
                std::vector<int> rot(c.begin() + r, c.end());
                rot.insert(rot.end(), c.begin(), c.begin() + r);
                CHECK(cycle_class(hm, rot) == cls);
            }
            IVec chain(tri.faces().size(), 0);
            for (int f : c) ++chain[f];
            CHECK(chain_class(hm, chain) == cls);
        }
        // concatenation at a common base vertex
        auto rotate_to = [&](const std::vector<int>& c, int v) {
            for (std::size_t r = 0; r < c.size(); ++r)
                if (g.edges[c[r]].first == v) {
                    std::vector<int> rot(c.begin() + r, c.end());
                    rot.insert(rot.end(), c.begin(), c.begin() + r);
                    return rot;
                }
            return std::vector<int>{};
        };
        int pairs = 0;
        for (std::size_t i = 0; i < cycles.size() && pairs < 50; ++i)
            for (std::size_t j = i + 1; j < cycles.size() && pairs < 50; ++j) {
                int v = g.edges[cycles[i][0]].first;
                auto a = rotate_to(cycles[i], v);
                auto b = rotate_to(cycles[j], v);
                if (b.empty()) continue;
                std::vector<int> cat = a;
                cat.insert(cat.end(), b.begin(), b.end());
                CHECK(cycle_class(hm, cat) == add(cycle_class(hm, a), cycle_class(hm, b)));
                ++pairs;
            }
        CHECK(pairs > 0);
    }
}

TEST_CASE("cycle_class rejects open paths") {
    auto [tri, hm] = load_valid("FIX-B");
    Digraph g = build_dual_graph(tri);
    auto c = simple_cycles(g).front();
    if (c.size() > 1) {
        std::vector<int> open(c.begin(), c.end() - 1);
        CHECK(error_of([&] { cycle_class(hm, open); }) == ErrorCode::NotClosed);
    }
    int f = 0, h = -1;
    for (int k = 0; k < int(g.edges.size()); ++k)
        if (g.edges[f].second != g.edges[k].first) h = k;
    REQUIRE(h >= 0);
    CHECK(error_of([&] { cycle_class(hm, {f, h}); }) == ErrorCode::NotClosed);
    CHECK(error_of([&] { cycle_class(hm, {int(g.edges.size())}); }) == ErrorCode::NotClosed);
    CHECK(cycle_class(hm, {}) == IVec(hm.b, 0));
}

TEST_CASE("weight classes") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        auto [tri, hm] = load_valid(name);
        std::size_t nf = tri.faces().size();
        QVec zero(nf, 0);
        CHECK(weight_class(hm, tri, zero) == QVec(hm.b, 0));
        CarriedCone cc = carried_cone(tri, hm);
        auto cycles = simple_cycles(build_dual_graph(tri));
        std::mt19937 rng(5);
        std::vector<QVec> samples;
        for (const auto& r : cc.weight_rays) samples.emplace_back(r.begin(), r.end());
        for (int k = 0; k < 5 && !cc.weight_rays.empty(); ++k) {
            QVec w(nf, 0);
            for (const auto& r : cc.weight_rays) {
                mpq_class c(int(rng() % 7), 1 + int(rng() % 3));
                c.canonicalize();
                for (std::size_t f = 0; f < nf; ++f) w[f] += c * r[f];
            }
            samples.push_back(w);
        }
        for (const auto& w : samples) {
            CHECK(satisfies_switch_conditions(tri, w));
            QVec y = weight_class(hm, tri, w);
            for (const auto& c : cycles) {
                mpq_class direct = 0;
                for (int f : c) direct += w[f];
                CHECK(dot(y, cycle_class(hm, c)) == direct);
            }
        }
        for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
            QVec sum(nf);
            for (std::size_t f = 0; f < nf; ++f) sum[f] = samples[i][f] + samples[i + 1][f];
            QVec ys = weight_class(hm, tri, sum), y1 = weight_class(hm, tri, samples[i]),
                 y2 = weight_class(hm, tri, samples[i + 1]);
            for (int k = 0; k < hm.b; ++k) CHECK(ys[k] == y1[k] + y2[k]);
        }
    }
}

TEST_CASE("FIX-A fiber weights pair to a generator") {
    auto [tri, hm] = load_valid("FIX-A");
    CarriedCone cc = carried_cone(tri, hm);
    REQUIRE_FALSE(cc.weight_rays.empty());
    for (const auto& r : cc.weight_rays) {
        QVec w(r.begin(), r.end());
        QVec y = weight_class(hm, tri, w);
        REQUIRE(y.size() == 1);
        CHECK(abs(y[0]) == 1);
        mpq_class direct = 0;
        for (std::size_t f = 0; f < w.size(); ++f) direct += w[f] * hm.basis_cycles[0][f];
        CHECK(y[0] == direct);
    }
}

TEST_CASE("switch condition violations") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        auto [tri, hm] = load_valid(name);
        std::size_t nf = tri.faces().size();
        QVec w(nf, 0);
        w[0] = 1;
        CHECK_FALSE(satisfies_switch_conditions(tri, w));
        CHECK(error_of([&] { weight_class(hm, tri, w); }) == ErrorCode::SwitchConditionViolated);
        CHECK(error_of([&] { check_switch_conditions(tri, QVec(nf + 1, 0)); }) == ErrorCode::SwitchConditionViolated);
    }
}

}  // TEST_SUITE
