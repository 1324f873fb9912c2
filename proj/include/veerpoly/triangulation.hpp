#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "veerpoly/perm4.hpp"

namespace veerpoly {

enum class Veer : unsigned char { L, R };

inline char veer_char(Veer v) { return v == Veer::L ? 'L' : 'R'; }
inline Veer flip(Veer v) { return v == Veer::L ? Veer::R : Veer::L; }

struct FaceSlot {
    int tet = 0;
    int face = 0;
    friend auto operator<=>(const FaceSlot&, const FaceSlot&) = default;
};

struct EdgeSlot {
    int tet = 0;
    int slot = 0;  // 0..5 = 01,02,03,12,13,23
    friend auto operator<=>(const EdgeSlot&, const EdgeSlot&) = default;
};

std::string to_string(const FaceSlot& f);
std::string to_string(const EdgeSlot& e);

struct Gluing {
    int tet = 0;
    int face = 0;
    Perm4 perm;
    friend bool operator==(const Gluing&, const Gluing&) = default;
};

// Raw triangulation data as read from a file. veers empty means "infer".
struct TriangulationRecord {
    int tetrahedra = 0;
    std::vector<std::array<Gluing, 4>> gluings;
    std::vector<std::array<int, 4>> coorientations;  // +1 top (out), -1 bottom (in)
    std::optional<std::vector<std::array<Veer, 6>>> veers;
    friend bool operator==(const TriangulationRecord&, const TriangulationRecord&) = default;
};

enum class SlotKind : unsigned char { Top, Bottom, Side };

struct SlotRole {
    SlotKind kind = SlotKind::Side;
    int side = 0;      // for Side
    int position = 0;  // 1-based index in the side's tetrahedron list
};

struct EdgeClass {
    int id = 0;
    Veer veer = Veer::L;
    int degree = 0;
    std::vector<EdgeSlot> incidences;  // cyclic, starting at the D(e) slot
    EdgeSlot below;                    // slot in D(e), where e is the top edge
    EdgeSlot above;                    // slot in U(e), where e is the bottom edge
    std::array<std::vector<EdgeSlot>, 2> sides;   // ascending fan slots t_1..t_k
    std::array<std::vector<int>, 2> side_faces;   // ascending face classes, k+1 each
    int lower_tet() const { return below.tet; }
    int upper_tet() const { return above.tet; }
};

struct FaceClass {
    int id = 0;
    FaceSlot lower;  // top face of the tetrahedron below
    FaceSlot upper;  // bottom face of the tetrahedron above
    std::array<int, 3> edges{};  // edge classes of the upper slot's slots, ascending slot number
    int bottom_edge = 0;
    int below() const { return lower.tet; }
    int above() const { return upper.tet; }
};

struct TetInfo {
    std::array<int, 2> top_faces{};
    std::array<int, 2> bottom_faces{};
    int top_slot = 0;
    int bottom_slot = 0;
    std::array<int, 6> edge{};  // edge class per slot
    std::array<int, 4> face{};  // face class per local face
    std::array<SlotRole, 6> role{};
    std::array<Veer, 6> veer{};  // as stored per slot
};

// Immutable, validated veering triangulation with derived tables.
class Triangulation {
public:
    static Triangulation validate(const TriangulationRecord& rec);
    // Skips the veer agreement and model checks; for negative-control tests only.
    static Triangulation validate_without_veer_checks(const TriangulationRecord& rec);

    int size() const { return int(tets_.size()); }
    const TriangulationRecord& record() const { return rec_; }
    const std::vector<EdgeClass>& edges() const { return edges_; }
    const std::vector<FaceClass>& faces() const { return faces_; }
    const std::vector<TetInfo>& tets() const { return tets_; }
    const EdgeClass& edge(int e) const { return edges_[e]; }
    const FaceClass& face(int f) const { return faces_[f]; }
    const TetInfo& tet(int t) const { return tets_[t]; }

    Veer veer_of(int t, int slot) const { return tets_[t].veer[slot]; }
    int top_edge(int t) const { return tets_[t].edge[tets_[t].top_slot]; }
    int bottom_edge(int t) const { return tets_[t].edge[tets_[t].bottom_slot]; }
    // Tetrahedron whose bottom edge is e.
    int tet_above_edge(int e) const { return edges_[e].above.tet; }
    bool is_side_slot(int t, int slot) const { return slot != tets_[t].top_slot && slot != tets_[t].bottom_slot; }

private:
    static Triangulation build(const TriangulationRecord& rec, bool check_veers);
    TriangulationRecord rec_;
    std::vector<EdgeClass> edges_;
    std::vector<FaceClass> faces_;
    std::vector<TetInfo> tets_;
};

// The frozen model veering tetrahedron: one row per orientation-preserving relabeling.
struct ModelRow {
    Perm4 relabel;
    std::array<int, 4> coorientation;
    std::array<int, 6> veer;  // -1 unconstrained (top/bottom slot), else 0 = L, 1 = R
};
const std::vector<ModelRow>& model_table();

// Fan data per edge class (the tables computed by validate).
std::vector<EdgeClass> edge_fans(const Triangulation& tri);

struct VeerInference {
    bool ok = false;
    bool unsatisfiable = false;
    std::vector<Veer> veers;             // per edge class (ids as in validation order)
    std::vector<int> undetermined;       // edge classes without a forced veer
    std::vector<std::array<Veer, 6>> per_slot;
};

// Requires a taut record; ignores any stored veers.
VeerInference infer_veers(const TriangulationRecord& rec);

// Fills veers of a record carrying "infer"; throws Unsatisfiable or Ambiguous.
TriangulationRecord with_inferred_veers(const TriangulationRecord& rec);

}  // namespace veerpoly
