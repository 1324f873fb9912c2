#pragma once

#include <string>
#include <string_view>

#include "veerpoly/triangulation.hpp"

namespace veerpoly {

// A vt/1 document is a JSON object with keys coorientations, format, gluings,
// tetrahedra, veers. Each gluing is [partner tet, partner face, "abcd"], where
// vertex i of this tetrahedron goes to vertex abcd[i] of the partner.
using VtDocument = TriangulationRecord;

inline constexpr std::string_view kVtFormat = "vt/1";

VtDocument parse_vt(std::string_view text);
std::string serialize_vt(const VtDocument& doc);

VtDocument read_vt_file(const std::string& path);

}  // namespace veerpoly
