#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "veerpoly/cones.hpp"
#include "veerpoly/homology.hpp"
#include "veerpoly/invariants.hpp"
#include "veerpoly/triangulation.hpp"

namespace veerpoly {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "veerpoly-report/1";

using Json = nlohmann::json;

struct Budgets {
    std::size_t cycle_cap = kDefaultCycleCap;
    std::size_t minor_budget = kDefaultMinorBudget;
    std::size_t face_budget = kDefaultFaceBudget;
};

// A loaded input: a .vt file path, or a census code when no such file exists.
struct Input {
    std::string identity;
    std::string kind;  // "path" or "code"
    TriangulationRecord record;
};

Input load_input(const std::string& arg);

// SHA-256 (hex) of the canonical vt serialization.
std::string content_hash(const TriangulationRecord& rec);

std::string poly_string(const LaurentPoly& p);
Json ivec_json(const IVec& v);
Json zvec_json(const ZVec& v);
Json qvec_json(const QVec& v);

// Report sections; each returns an object keyed by section content.
Json header_json(const Input& in);
Json triangulation_json(const Triangulation& tri);
Json homology_json(const HomologyModel& hm);
// which: veering, taut, ab or all.
Json polynomials_json(const Triangulation& tri, const HomologyModel& hm, const std::string& which, ThetaMode mode,
                      const Budgets& budgets);
Json cones_json(const Triangulation& tri, const HomologyModel& hm, const Budgets& budgets);
Json layered_json(const Triangulation& tri, const HomologyModel& hm, const Budgets& budgets);
Json norm_json(const Triangulation& tri, const HomologyModel& hm, const Budgets& budgets);

// Indented key/value rendering of a report.
std::string render_text(const Json& report);
std::string render(const Json& report, const std::string& format);

}  // namespace veerpoly
