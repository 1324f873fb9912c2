#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "veerpoly/check.hpp"
#include "veerpoly/cones.hpp"
#include "veerpoly/graphs.hpp"
#include "veerpoly/homology.hpp"
#include "veerpoly/invariants.hpp"
#include "veerpoly/report.hpp"
#include "veerpoly/triangulation.hpp"
#include "veerpoly/vt_format.hpp"

namespace testing {

using namespace veerpoly;

inline std::string fixture_path(const std::string& file) { return std::string(VEERPOLY_FIXTURES) + "/" + file; }

inline const Json& manifest() {
    static const Json m = [] {
        std::ifstream f(fixture_path("manifest.json"));
        return Json::parse(f);
    }();
    return m;
}

inline const Json& entry(const std::string& name) {
    for (const auto& e : manifest()["fixtures"])
        if (e["name"] == name) return e;
    throw std::runtime_error("no fixture " + name);
}

inline std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto& e : manifest()["fixtures"]) out.push_back(e["name"]);
    return out;
}

inline TriangulationRecord load(const std::string& name) { return read_vt_file(fixture_path(name + ".vt")); }

struct Loaded {
    Triangulation tri;
    HomologyModel hm;
};

inline Loaded load_valid(const std::string& name) {
    Triangulation tri = Triangulation::validate(load(name));
    HomologyModel hm = homology_basis(tri);
    return {std::move(tri), std::move(hm)};
}

// N with oracle_class(c) = N * phi(c): the manifest's cocycles evaluated on our basis cycles.
inline std::vector<std::vector<long>> oracle_matrix(const Triangulation& tri, const HomologyModel& hm, const Json& e) {
    const auto& slots = e["face_slots"];
    const auto& cocycles = e["cocycles"];
    std::vector<std::vector<long>> n(cocycles.size(), std::vector<long>(hm.b, 0));
    for (std::size_t k = 0; k < cocycles.size(); ++k)
        for (int j = 0; j < hm.b; ++j)
            for (std::size_t f = 0; f < slots.size(); ++f) {
                int ours = tri.tet(slots[f][0].get<int>()).face[slots[f][1].get<int>()];
                n[k][j] += cocycles[k][f].get<long>() * hm.basis_cycles[j][ours];
            }
    return n;
}

inline IVec apply(const std::vector<std::vector<long>>& m, const IVec& v) {
    IVec r(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k) r[i] += m[i][k] * v[k];
    return r;
}

inline LaurentPoly in_oracle_basis(const LaurentPoly& p, const std::vector<std::vector<long>>& n) {
    return normalize_unit(substitute(p, n));
}

inline LaurentPoly oracle_poly(const Json& e, const char* key) {
    return normalize_unit(parse_laurent(e[key].get<std::string>(), e["b"].get<int>()));
}

}  // namespace testing
