#include "veerpoly/report.hpp"

#include <filesystem>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "veerpoly/error.hpp"
#include "veerpoly/vt_format.hpp"
#ifdef VEERPOLY_HAVE_ISOSIG
#include "veerpoly/isosig.hpp"
#endif

namespace veerpoly {

Input load_input(const std::string& arg) {
    Input in;
    in.identity = arg;
    if (std::filesystem::exists(arg)) {
        in.kind = "path";
        in.record = read_vt_file(arg);
        if (!in.record.veers) in.record = with_inferred_veers(in.record);
        return in;
    }
    if (arg.find_first_of("/.") != std::string::npos) throw Error(ErrorCode::Io, arg, "no such file");
    in.kind = "code";
#ifdef VEERPOLY_HAVE_ISOSIG
    in.record = import_taut_isosig(arg);
#else
    throw Error(ErrorCode::Io, arg, "no such file (census code import disabled in this build)");
#endif
    return in;
}

std::string content_hash(const TriangulationRecord& rec) {
    std::string text = serialize_vt(rec);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

std::string poly_string(const LaurentPoly& p) { return p.str(); }

Json ivec_json(const IVec& v) { return Json(v); }

Json zvec_json(const ZVec& v) {
    Json a = Json::array();
    for (const auto& x : v) {
        if (x.fits_slong_p()) a.push_back(x.get_si());
        else a.push_back(x.get_str());
    }
    return a;
}

Json qvec_json(const QVec& v) {
    Json a = Json::array();
    for (const auto& x : v) {
        if (x.get_den() == 1 && x.get_num().fits_slong_p()) a.push_back(x.get_num().get_si());
        else a.push_back(x.get_str());
    }
    return a;
}

namespace {

Json rays_json(const std::vector<ZVec>& rays) {
    Json a = Json::array();
    for (const auto& r : rays) a.push_back(zvec_json(r));
    return a;
}

Json ivecs_json(const std::vector<IVec>& v) {
    Json a = Json::array();
    for (const auto& r : v) a.push_back(r);
    return a;
}

std::string q_string(const mpq_class& q) { return q.get_str(); }

}  // namespace

Json header_json(const Input& in) {
    Json j;
    j["schema"] = kReportSchema;
    j["version"] = kToolVersion;
    j["input"] = {{"identity", in.identity}, {"kind", in.kind}, {"sha256", content_hash(in.record)}};
    return j;
}

Json triangulation_json(const Triangulation& tri) {
    Json j;
    j["tetrahedra"] = tri.size();
    j["edges"] = tri.edges().size();
    j["faces"] = tri.faces().size();
    Json edges = Json::array();
    for (const auto& e : tri.edges())
        edges.push_back({{"id", e.id},
                         {"veer", std::string(1, veer_char(e.veer))},
                         {"degree", e.degree},
                         {"side_lengths", {e.side_faces[0].size() - 1, e.side_faces[1].size() - 1}}});
    j["edge_classes"] = edges;
    return j;
}

Json homology_json(const HomologyModel& hm) {
    Json j;
    j["b"] = hm.b;
    Json tor = Json::array();
    for (const auto& t : hm.torsion) tor.push_back(t.get_str());
    j["torsion"] = tor;
    j["variables"] = default_var_names(hm.b);
    // Basis cycle representatives as integer chains on dual-graph edges (= face classes).
    j["basis_cycles"] = ivecs_json(hm.basis_cycles);
    j["tree_root"] = hm.root;
    return j;
}

Json polynomials_json(const Triangulation& tri, const HomologyModel& hm, const std::string& which, ThetaMode mode,
                      const Budgets& budgets) {
    bool all = which == "all";
    Json j;
    LaurentPoly v;
    AbPolynomial ab;
    bool need_v = all || which == "veering" || which == "taut";
    bool need_ab = all || which == "ab" || which == "taut";
    if (need_v) v = veering_polynomial(tri, hm);
    if (need_ab) ab = ab_polynomial(tri, hm);
    if (all || which == "veering") j["veering"] = poly_string(v);
    if (all || which == "ab") {
        j["ab"]["polynomial"] = poly_string(ab.canonical);
        Json cyc = Json::array();
        for (const auto& c : ab.cycles)
            cyc.push_back({{"faces", c.faces}, {"length", c.length}, {"class", c.cls}, {"sign", c.sign}});
        j["ab"]["cycles"] = cyc;
    }
    if (all || which == "taut") {
        TautResult t = taut_polynomial(tri, hm, mode, budgets.minor_budget);
        Json tj;
        tj["polynomial"] = t.theta.is_zero() ? Json(nullptr) : Json(poly_string(t.theta));
        tj["mode"] = to_string(t.mode);
        tj["rank_one_caveat"] = t.rank_one_caveat;
        tj["minors"] = t.minors;
        if (t.rank_one_caveat) {
            tj["factor"] = t.factor;
            Json cand = Json::array();
            for (const auto& [c, p] : t.candidates) cand.push_back({{"factor", c}, {"theta", poly_string(p)}});
            tj["candidates"] = cand;
        }
        j["taut"] = tj;
    }
    return j;
}

Json cones_json(const Triangulation& tri, const HomologyModel& hm, const Budgets& budgets) {
    Json j;
    std::size_t count = 0;
    auto gens = homology_direction_generators(tri, hm, budgets.cycle_cap, &count);
    j["simple_cycles"] = count;
    j["cycle_generators"] = ivecs_json(gens);
    CarriedCone cc = carried_cone(tri, hm, budgets.face_budget);
    j["carried"]["rays"] = rays_json(cc.presentation.cone.rays);
    j["carried"]["lineality"] = rays_json(cc.presentation.cone.lineality);
    j["carried"]["inequalities"] = rays_json(cc.presentation.inequalities);
    j["carried"]["equalities"] = rays_json(cc.presentation.equalities);
    j["carried"]["weight_rays"] = rays_json(cc.weight_rays);
    std::vector<ZVec> gz;
    for (const auto& g : gens) gz.push_back(to_zvec(g));
    j["duality"] = same_cone(cc.presentation.cone, dual_cone(hm.b, gz));
    return j;
}

Json layered_json(const Triangulation& tri, const HomologyModel& hm, const Budgets& budgets) {
    LayerednessVerdict v = is_layered(tri, hm, budgets.cycle_cap);
    Json j;
    j["layered"] = v.layered;
    if (v.layered) {
        j["eta"] = zvec_json(v.eta);
        j["weights"] = zvec_json(v.weights);
        j["scale"] = v.scale;
    } else {
        j["farkas"] = zvec_json(v.farkas);
        j["generators"] = ivecs_json(v.generators);
    }
    return j;
}

Json norm_json(const Triangulation& tri, const HomologyModel& hm, const Budgets& budgets) {
    Json j;
    auto gens = homology_direction_generators(tri, hm, budgets.cycle_cap);
    CarriedCone cc = carried_cone(tri, hm, budgets.face_budget);
    Json rows = Json::array();
    int codim = 0;
    for (const auto& r : cc.weight_rays) {
        QVec w(r.begin(), r.end());
        NormData nd = norm_data(tri, hm, w, {});
        rows.push_back({{"weights", zvec_json(r)}, {"class", qvec_json(nd.y)}, {"norm", q_string(nd.norm)},
                        {"euler", q_string(nd.euler)}});
    }
    if (!gens.empty()) codim = norm_data(tri, hm, QVec(tri.faces().size(), 0), gens).face_codimension;
    j["weight_rays"] = rows;
    j["face_codimension"] = codim;
    LayerednessVerdict v = is_layered(tri, hm, budgets.cycle_cap);
    if (v.layered) {
        QVec w(v.weights.begin(), v.weights.end());
        NormData nd = norm_data(tri, hm, w, {});
        j["fibered"] = {{"weights", zvec_json(v.weights)}, {"class", qvec_json(nd.y)}, {"norm", q_string(nd.norm)},
                        {"euler", q_string(nd.euler)}};
    }
    return j;
}

namespace {

void render_value(std::ostringstream& os, const Json& v, int indent, const std::string& key) {
    std::string pad(indent * 2, ' ');
    if (v.is_object()) {
        if (!key.empty()) os << pad << key << ":\n";
        for (const auto& [k, x] : v.items()) render_value(os, x, key.empty() ? indent : indent + 1, k);
        return;
    }
    bool nested = v.is_array() && std::any_of(v.begin(), v.end(), [](const Json& x) { return x.is_object(); });
    if (nested) {
        os << pad << key << ":\n";
        int i = 0;
        for (const auto& x : v) render_value(os, x, indent + 1, "[" + std::to_string(i++) + "]");
        return;
    }
    os << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

}  // namespace

std::string render_text(const Json& report) {
    std::ostringstream os;
    render_value(os, report, 0, "");
    return os.str();
}

std::string render(const Json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";
    return render_text(report);
}

}  // namespace veerpoly
