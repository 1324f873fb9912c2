#include "veerpoly/vt_format.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "veerpoly/error.hpp"

namespace veerpoly {

using nlohmann::json;

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + " column " + std::to_string(col);
}

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::SyntaxError, where, what);
}

int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<int>();
}

const json& get_array(const json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array");
    return j;
}

Perm4 parse_perm(const json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a permutation string");
    auto s = j.get<std::string>();
    if (s.size() != 4) bad(where, "permutation must have four digits");
    Perm4 p;
    for (int i = 0; i < 4; ++i) {
        if (s[i] < '0' || s[i] > '3') bad(where, "permutation digit out of range");
        p.img[i] = std::uint8_t(s[i] - '0');
    }
    if (!p.is_valid()) bad(where, "permutation repeats a digit");
    return p;
}

}  // namespace

VtDocument parse_vt(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, line_col(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
    if (!root.is_object()) bad("/", "document must be an object");
    if (!root.contains("format")) bad("/format", "missing key");
    if (!root["format"].is_string()) bad("/format", "expected a string");
    if (root["format"].get<std::string>() != kVtFormat)
        throw Error(ErrorCode::UnknownFormatVersion, "/format", root["format"].get<std::string>());
    for (auto it = root.begin(); it != root.end(); ++it) {
        const auto& k = it.key();
        if (k != "format" && k != "tetrahedra" && k != "gluings" && k != "coorientations" && k != "veers")
            bad("/" + k, "unknown key");
    }
    for (const char* k : {"tetrahedra", "gluings", "coorientations", "veers"})
        if (!root.contains(k)) bad(std::string("/") + k, "missing key");

    VtDocument doc;
    doc.tetrahedra = get_int(root["tetrahedra"], "/tetrahedra");
    if (doc.tetrahedra < 1) throw Error(ErrorCode::CountMismatch, "/tetrahedra", "must be positive");
    int n = doc.tetrahedra;

    const json& gl = get_array(root["gluings"], "/gluings");
    if (int(gl.size()) != n) throw Error(ErrorCode::CountMismatch, "/gluings", "expected " + std::to_string(n) + " rows");
    for (int t = 0; t < n; ++t) {
        std::string w = "/gluings/" + std::to_string(t);
        const json& row = get_array(gl[t], w);
        if (row.size() != 4) throw Error(ErrorCode::CountMismatch, w, "expected 4 faces");
        std::array<Gluing, 4> g;
        for (int f = 0; f < 4; ++f) {
            std::string wf = w + "/" + std::to_string(f);
            const json& e = get_array(row[f], wf);
            if (e.size() != 3) bad(wf, "gluing needs [tet, face, perm]");
            g[f].tet = get_int(e[0], wf + "/0");
            g[f].face = get_int(e[1], wf + "/1");
            g[f].perm = parse_perm(e[2], wf + "/2");
            if (g[f].tet < 0 || g[f].tet >= n) bad(wf + "/0", "tetrahedron index out of range");
            if (g[f].face < 0 || g[f].face > 3) bad(wf + "/1", "face index out of range");
        }
        doc.gluings.push_back(g);
    }

    const json& co = get_array(root["coorientations"], "/coorientations");
    if (int(co.size()) != n) throw Error(ErrorCode::CountMismatch, "/coorientations", "expected " + std::to_string(n) + " rows");
    for (int t = 0; t < n; ++t) {
        std::string w = "/coorientations/" + std::to_string(t);
        const json& row = get_array(co[t], w);
        if (row.size() != 4) throw Error(ErrorCode::CountMismatch, w, "expected 4 signs");
        std::array<int, 4> c{};
        for (int f = 0; f < 4; ++f) {
            c[f] = get_int(row[f], w + "/" + std::to_string(f));
            if (c[f] != 1 && c[f] != -1) bad(w + "/" + std::to_string(f), "sign must be 1 or -1");
        }
        doc.coorientations.push_back(c);
    }

    const json& ve = root["veers"];
    if (ve.is_string()) {
        if (ve.get<std::string>() != "infer") bad("/veers", "expected an array or \"infer\"");
    } else {
        get_array(ve, "/veers");
        if (int(ve.size()) != n) throw Error(ErrorCode::CountMismatch, "/veers", "expected " + std::to_string(n) + " rows");
        std::vector<std::array<Veer, 6>> vs;
        for (int t = 0; t < n; ++t) {
            std::string w = "/veers/" + std::to_string(t);
            const json& row = get_array(ve[t], w);
            if (row.size() != 6) throw Error(ErrorCode::CountMismatch, w, "expected 6 symbols");
            std::array<Veer, 6> v{};
            for (int k = 0; k < 6; ++k) {
                const json& x = row[k];
                std::string wk = w + "/" + std::to_string(k);
                if (!x.is_string()) bad(wk, "expected \"L\" or \"R\"");
                auto s = x.get<std::string>();
                if (s == "L") v[k] = Veer::L;
                else if (s == "R") v[k] = Veer::R;
                else bad(wk, "expected \"L\" or \"R\"");
            }
            vs.push_back(v);
        }
        doc.veers = std::move(vs);
    }
    return doc;
}

std::string serialize_vt(const VtDocument& doc) {
    std::ostringstream os;
    int n = doc.tetrahedra;
    os << "{\n  \"coorientations\": [";
    for (int t = 0; t < n; ++t) {
        os << (t ? ", " : "") << "[";
        for (int f = 0; f < 4; ++f) os << (f ? ", " : "") << doc.coorientations[t][f];
        os << "]";
    }
    os << "],\n  \"format\": \"" << kVtFormat << "\",\n  \"gluings\": [\n";
    for (int t = 0; t < n; ++t) {
        os << "    [";
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = doc.gluings[t][f];
            os << (f ? ", " : "") << "[" << g.tet << ", " << g.face << ", \"" << g.perm.str() << "\"]";
        }
        os << "]" << (t + 1 < n ? "," : "") << "\n";
    }
    os << "  ],\n  \"tetrahedra\": " << n << ",\n  \"veers\": ";
    if (!doc.veers) {
        os << "\"infer\"";
    } else {
        os << "[";
        for (int t = 0; t < n; ++t) {
            os << (t ? ", " : "") << "[";
            for (int k = 0; k < 6; ++k) os << (k ? ", " : "") << "\"" << veer_char((*doc.veers)[t][k]) << "\"";
            os << "]";
        }
        os << "]";
    }
    os << "\n}\n";
    return os.str();
}

VtDocument read_vt_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_vt(ss.str());
}

}  // namespace veerpoly
