#pragma once

#include <string>
#include <string_view>

#include "veerpoly/vt_format.hpp"

namespace veerpoly {

// Decodes a connected Regina isomorphism signature into raw gluings.
std::vector<std::array<Gluing, 4>> decode_isosig(std::string_view sig);

// "isoSig_digits": digit d in {0,1,2} per tetrahedron selects the pi pair
// {01,23}, {02,13} or {03,12}. Tetrahedra are reoriented consistently with
// tetrahedron 0 kept, and tetrahedron 0's pi-pair split has its first two faces on top.
VtDocument import_taut_isosig(std::string_view code);

// The taut part only (gluings and coorientations, veers unset); MalformedCode, or
// NonVeering when the angle structure admits no coorientation.
VtDocument import_taut_structure(std::string_view code);

}  // namespace veerpoly
