// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "support.hpp"
#include "veerpoly/error.hpp"
#ifdef VEERPOLY_HAVE_ISOSIG
#include "veerpoly/isosig.hpp"
#endif

using namespace testing;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Fixture {
    std::string name;
    Json entry;
    Triangulation tri;
    HomologyModel hm;
};

std::vector<Fixture> load_fixtures() {
    std::vector<Fixture> out;
    for (const auto& name : fixture_names()) {
        auto [tri, hm] = load_valid(name);
        out.push_back({name, entry(name), std::move(tri), std::move(hm)});
    }
    return out;
}

// Collects failures; detail of the first one is reported.
struct Verdict {
    bool ok = true;
    std::string first;
    std::string summary;
    void fail(const std::string& why) {
        if (ok) first = why;
        ok = false;
    }
};

mpq_class half_sum(const QVec& w) {
    mpq_class s = 0;
    for (const auto& x : w) s += x;
    return s / 2;
}

Verdict oracle_equality(const std::vector<Fixture>& fx) {
    Verdict v;
    int covered = 0;
    double worst = 0;
    for (const auto& f : fx) {
        if (f.tri.size() > 6) continue;
        auto start = Clock::now();
        std::size_t cycles = 0;
        LaurentPoly oracle;
        try {
            oracle = perron_clique_oracle(build_flow_graph(f.tri), f.hm, 10000, &cycles);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::CycleBudgetExceeded) continue;
            throw;
        }
        LaurentPoly det = veering_determinant(f.tri, f.hm);
        double t = seconds_since(start);
        worst = std::max(worst, t);
        ++covered;
        if (!(det == oracle)) v.fail(f.name + ": det(L) differs from the clique expansion");
        if (t > 10) v.fail(f.name + ": took " + std::to_string(t) + " s");
    }
    if (covered == 0) v.fail("no fixture within scope");
    v.summary = std::to_string(covered) + " fixtures, slowest " + std::to_string(int(worst * 1e6)) + " us";
    return v;
}

Verdict factorization(const std::vector<Fixture>& fx) {
    Verdict v;
    int multi = 0, single = 0;
    std::string factors;
    for (const auto& f : fx) {
        LaurentPoly vt = veering_polynomial(f.tri, f.hm);
        LaurentPoly vab = ab_polynomial(f.tri, f.hm).canonical;
        TautResult t = taut_polynomial(f.tri, f.hm, ThetaMode::Auto);
        if (f.hm.b >= 2) {
            ++multi;
            if (!(normalize_unit(vab * t.theta) == vt)) v.fail(f.name + ": V != V^AB * Theta");
        } else {
            ++single;
            auto c = rank_one_factors(vt, vab, t.theta);
            if (c.size() != 1) v.fail(f.name + ": " + std::to_string(c.size()) + " rank-one factors fit");
            else if (t.factor != c[0]) v.fail(f.name + ": reported factor " + t.factor + ", fitting factor " + c[0]);
            factors += " " + f.name + "=" + t.factor;
        }
    }
    if (multi == 0) v.fail("no fixture with b >= 2");
    v.summary = std::to_string(multi) + " with b>=2; rank one:" + factors;
    return v;
}

Verdict ab_identity(const std::vector<Fixture>& fx) {
    Verdict v;
    for (const auto& f : fx) {
        AbPolynomial ab = ab_polynomial(f.tri, f.hm);
        LaurentPoly det = det_laurent(ab_matrix(f.tri, f.hm, ab_permutation(f.tri)));
        if (!(det == ab_cycle_product(f.hm.b, ab.cycles))) v.fail(f.name + ": det(L^AB) differs from the cycle product");
    }
    v.summary = std::to_string(fx.size()) + " fixtures";
    return v;
}

Verdict matrix_identity(const std::vector<Fixture>& fx) {
    Verdict v;
    int columns = 0, faces = 0;
    for (const auto& f : fx) {
        IdentityVerdict iv = structural_identities(f.tri, f.hm);
        columns += iv.matrix_checks;
        faces += iv.face_checks;
        if (!iv.matrix_identity) v.fail(f.name + ": matrix identity");
        if (!iv.face_sums) v.fail(f.name + ": face sums");
        if (iv.face_checks != 2 * f.tri.size()) v.fail(f.name + ": not every bottom face checked");
        LaurentMatrix lhs = face_matrix(f.tri, f.hm) * ab_matrix(f.tri, f.hm, ab_permutation(f.tri));
        LaurentMatrix rhs = edge_matrix(f.tri, f.hm) * epsilon_matrix(f.tri, f.hm.b);
        if (!(lhs == rhs)) v.fail(f.name + ": entrywise product differs");
    }
    v.summary = std::to_string(columns) + " columns, " + std::to_string(faces) + " face sums";
    return v;
}

Verdict sector_labels(const std::vector<Fixture>& fx) {
    Verdict v;
    int edges = 0;
    for (const auto& f : fx)
        for (const auto& s : build_sectors(f.tri)) {
            ++edges;
            if (path_class(f.hm, s.sides[0]) != path_class(f.hm, s.sides[1]))
                v.fail(f.name + ": edge " + std::to_string(s.edge));
        }
    v.summary = std::to_string(edges) + " edges";
    return v;
}

Verdict cone_duality(const std::vector<Fixture>& fx) {
    Verdict v;
    int covered = 0;
    for (const auto& f : fx) {
        if (f.hm.b > 3 || f.tri.faces().size() > 24) continue;
        ++covered;
        Cone carried = canonical(carried_cone(f.tri, f.hm).presentation.cone);
        std::vector<ZVec> gens;
        for (const auto& g : homology_direction_generators(f.tri, f.hm)) gens.push_back(to_zvec(g));
        Cone dual = canonical(dual_cone(f.hm.b, gens));
        if (carried.rays != dual.rays || carried.lineality != dual.lineality) v.fail(f.name + ": ray sets differ");
    }
    if (covered == 0) v.fail("no fixture within scope");
    v.summary = std::to_string(covered) + " fixtures";
    return v;
}

Verdict layeredness(const std::vector<Fixture>& fx) {
    Verdict v;
    int layered = 0, nonlayered = 0;
    for (const auto& f : fx) {
        LayerednessVerdict lv = is_layered(f.tri, f.hm);
        if (lv.layered != f.entry["layered"].get<bool>()) v.fail(f.name + ": verdict differs from census flag");
        if (lv.layered) {
            ++layered;
            if (!verify_eta(lv.generators, lv.eta)) v.fail(f.name + ": eta certificate");
            QVec w(lv.weights.begin(), lv.weights.end());
            bool positive = w.size() == f.tri.faces().size();
            for (const auto& x : w) positive = positive && x > 0;
            if (!positive) v.fail(f.name + ": weights not strictly positive");
            if (!satisfies_switch_conditions(f.tri, w)) v.fail(f.name + ": weights not carried");
        } else {
            ++nonlayered;
            if (!verify_farkas(lv.generators, lv.farkas)) v.fail(f.name + ": Farkas certificate");
        }
    }
    int sampled = 0, agree = 0;
#ifdef VEERPOLY_HAVE_ISOSIG
    std::ifstream list(fixture_path("census_sample.txt"));
    for (std::string line; std::getline(list, line);) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        std::string code = line.substr(0, tab), flag = line.substr(tab + 1);
        Triangulation tri = Triangulation::validate(import_taut_isosig(code));
        HomologyModel hm = homology_basis(tri);
        LayerednessVerdict lv = is_layered(tri, hm);
        bool certified = lv.layered ? verify_eta(lv.generators, lv.eta) : verify_farkas(lv.generators, lv.farkas);
        ++sampled;
        if (lv.layered == (flag == "layered") && certified) ++agree;
        else v.fail(code + ": census flag " + flag);
    }
#endif
    if (sampled < 10) v.fail("only " + std::to_string(sampled) + " census codes sampled");
    v.summary = std::to_string(layered) + " layered and " + std::to_string(nonlayered) + " nonlayered fixtures; census " +
                std::to_string(agree) + "/" + std::to_string(sampled);
    return v;
}

Verdict norm_euler(const std::vector<Fixture>& fx) {
    Verdict v;
    std::mt19937 rng(1729);
    long tested = 0;
    for (const auto& f : fx) {
        CarriedCone cc = carried_cone(f.tri, f.hm);
        if (cc.weight_rays.empty()) continue;
        std::size_t nf = f.tri.faces().size();
        IVec total = total_class(f.hm);
        for (int trial = 0; trial < 1000; ++trial) {
            QVec w(nf, 0);
            for (const auto& r : cc.weight_rays) {
                mpq_class c(long(rng() % 10), long(1 + rng() % 4));
                c.canonicalize();
                for (std::size_t i = 0; i < nf; ++i) w[i] += c * r[i];
            }
            NormData nd = norm_data(f.tri, f.hm, w);
            mpq_class direct = half_sum(w), euler = 0;
            for (int k = 0; k < f.hm.b; ++k) euler += nd.y[k] * total[k];
            euler /= 2;
            ++tested;
            if (nd.norm != direct || euler != direct || nd.euler != direct) {
                v.fail(f.name + ": x=" + nd.norm.get_str() + " -e=" + euler.get_str() + " half-sum=" + direct.get_str());
                break;
            }
        }
    }
    const Fixture& a = fx.front();
    CarriedCone cc = carried_cone(a.tri, a.hm);
    bool fiber = !cc.weight_rays.empty();
    for (const auto& r : cc.weight_rays) {
        QVec w(r.begin(), r.end());
        NormData nd = norm_data(a.tri, a.hm, w);
        fiber = fiber && abs(nd.y[0]) == 1 && nd.norm == 1;
    }
    if (a.name != "FIX-A" || !fiber) v.fail("FIX-A primitive fiber class does not have x = 1");
    v.summary = std::to_string(tested) + " carried vectors; FIX-A fiber x = 1";
    return v;
}

std::string full_report(const TriangulationRecord& rec) {
    Input in{"fixture", "path", rec};
    Triangulation tri = Triangulation::validate(rec);
    HomologyModel hm = homology_basis(tri);
    Budgets b;
    Json j = header_json(in);
    j["homology"] = homology_json(hm);
    j["polynomials"] = polynomials_json(tri, hm, "all", ThetaMode::Auto, b);
    j["cones"] = cones_json(tri, hm, b);
    j["layered"] = layered_json(tri, hm, b);
    j["norm"] = norm_json(tri, hm, b);
    return render(j, "json") + render(j, "text");
}

Verdict determinism(const std::vector<Fixture>& fx) {
    Verdict v;
    int reruns = 0;
    for (const auto& f : fx) {
        CheckOptions opt;
        opt.reruns = 5;
        CheckSummary s = check_all(f.tri.record(), opt);
        bool found = false;
        for (const auto& item : s.items)
            if (item.name == "determinism") {
                found = true;
                if (item.status != "pass") v.fail(f.name + ": " + item.detail);
            }
        if (!found) v.fail(f.name + ": determinism not run");
        reruns += opt.reruns;
        if (full_report(f.tri.record()) != full_report(f.tri.record())) v.fail(f.name + ": report bytes differ");
        TriangulationRecord reread = parse_vt(serialize_vt(f.tri.record()));
        if (full_report(reread) != full_report(f.tri.record())) v.fail(f.name + ": report differs after round trip");
    }
    v.summary = std::to_string(reruns) + " re-runs";
    return v;
}

}  // namespace

int main() {
    auto suite_start = Clock::now();
    std::cout << std::fixed << std::setprecision(3);
    std::vector<Fixture> fx = load_fixtures();
    std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"oracle equality", [&] { return oracle_equality(fx); }},
        {"factorization", [&] { return factorization(fx); }},
        {"AB identity", [&] { return ab_identity(fx); }},
        {"matrix identity and face sums", [&] { return matrix_identity(fx); }},
        {"sector label equality", [&] { return sector_labels(fx); }},
        {"cone duality", [&] { return cone_duality(fx); }},
        {"layeredness", [&] { return layeredness(fx); }},
        {"norm and Euler class", [&] { return norm_euler(fx); }},
        {"determinism", [&] { return determinism(fx); }},
    };
    bool all = true;
    int index = 0;
    for (auto& [name, run] : criteria) {
        ++index;
        auto start = Clock::now();
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        all = all && v.ok;
        std::cout << (v.ok ? "PASS" : "FAIL") << " " << index << " " << name << ": "
                  << (v.ok ? v.summary : v.first) << " (" << seconds_since(start) << " s)" << std::endl;
    }

    // The unit and property suites count toward the time budget as well.
    auto unit_start = Clock::now();
    int unit_status = std::system(VEERPOLY_UNIT_TESTS " --minimal > /dev/null 2>&1");
    double unit_time = seconds_since(unit_start);
    double total = seconds_since(suite_start);
    bool fast = unit_status == 0 && total <= 120;
    all = all && fast;
    std::cout << (fast ? "PASS" : "FAIL") << " 10 full suite: " << total << " s total, unit and property tests "
              << unit_time << " s" << (unit_status == 0 ? "" : ", unit tests failed") << std::endl;
    return all ? 0 : 1;
}
