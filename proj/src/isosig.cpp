#include "veerpoly/isosig.hpp"

#include <vector>

#include "veerpoly/error.hpp"

namespace veerpoly {

namespace {

int sig_value(char c) {
    if (c >= 'a' && c <= 'z') return c - 'a';
    if (c >= 'A' && c <= 'Z') return c - 'A' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '-') return 63;
    return -1;
}

[[noreturn]] void malformed(std::string_view code, const std::string& why) {
    throw Error(ErrorCode::MalformedCode, std::string(code), why);
}

// Faces of the pi-pair split: the first two share the edge of the pair's second slot.
constexpr int kSplit[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};

}  // namespace

std::vector<std::array<Gluing, 4>> decode_isosig(std::string_view sig) {
    std::size_t pos = 0;
    auto next = [&]() {
        if (pos >= sig.size()) malformed(sig, "truncated signature");
        int v = sig_value(sig[pos++]);
        if (v < 0) malformed(sig, "invalid character");
        return v;
    };
    auto read_n = [&](int chars) {
        long v = 0;
        for (int i = 0; i < chars; ++i) v |= long(next()) << (6 * i);
        return v;
    };
    long n = next();
    int nchars = 1;
    if (n == 63) {
        nchars = next();
        if (nchars < 1 || nchars > 4) malformed(sig, "bad size prefix");
        n = read_n(nchars);
    }
    if (n < 1) malformed(sig, "empty triangulation");
    if (n > 4096) malformed(sig, "too many tetrahedra");

    std::vector<int> actions;
    long facets = 0, joins = 0;
    while (facets < 4 * n) {
        int v = next();
        for (int j = 0; j < 3; ++j) {
            int a = (v >> (2 * j)) & 3;
            if (facets == 4 * n) {
                if (a != 0) malformed(sig, "trailing facet action");
                continue;
            }
            if (a == 0) {
                malformed(sig, "boundary faces are not allowed");
            } else if (a == 1 || a == 2) {
                facets += 2;
                if (a == 2) ++joins;
            } else {
                malformed(sig, "bad facet action");
            }
            if (facets > 4 * n) malformed(sig, "facet count overflow");
            actions.push_back(a);
        }
    }
    std::vector<long> dest(joins);
    for (auto& d : dest) d = read_n(nchars);
    std::vector<int> perm(joins);
    for (auto& p : perm) {
        p = int(read_n(1));
        if (p >= 24) malformed(sig, "bad permutation index");
    }
    if (pos != sig.size()) malformed(sig, "trailing characters (only connected triangulations are supported)");

    std::vector<std::array<Gluing, 4>> g(n);
    std::vector<std::array<bool, 4>> glued(n, {false, false, false, false});
    long next_unused = 1;
    std::size_t ai = 0, ji = 0;
    for (long t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            if (glued[t][f]) continue;
            int a = actions.at(ai++);
            long other;
            Perm4 p;
            if (a == 1) {
                if (next_unused >= n) malformed(sig, "too many new tetrahedra");
                other = next_unused++;
            } else {
                other = dest[ji];
                p = Perm4::from_lex_index(perm[ji]);
                ++ji;
                if (other >= next_unused) malformed(sig, "join to unseen tetrahedron");
            }
            int of = p[f];
            if (glued[other][of] || (other == t && of == f)) malformed(sig, "face glued twice");
            g[t][f] = Gluing{int(other), of, p};
            g[other][of] = Gluing{int(t), f, p.inverse()};
            glued[t][f] = glued[other][of] = true;
        }
    if (next_unused != n) malformed(sig, "disconnected signature");
    return g;
}

VtDocument import_taut_structure(std::string_view code) {
    auto us = code.rfind('_');
    if (us == std::string_view::npos) malformed(code, "missing '_' separator");
    auto sig = code.substr(0, us);
    auto digits = code.substr(us + 1);
    auto gl = decode_isosig(sig);
    int n = int(gl.size());
    if (int(digits.size()) != n) malformed(code, "angle suffix length differs from tetrahedron count");
    std::vector<int> pi(n);
    for (int t = 0; t < n; ++t) {
        if (digits[t] < '0' || digits[t] > '2') malformed(code, "angle digit must be 0, 1 or 2");
        pi[t] = digits[t] - '0';
    }

    // Orient: tet 0 keeps its labeling; every other tet is flipped if needed by the
    // transposition (0 p+1), which preserves its pi pair.
    std::vector<int> orient(n, 0);
    orient[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = gl[t][f];
            int want = -g.perm.sign() * orient[t];
            if (orient[g.tet] == 0) {
                orient[g.tet] = want;
                stack.push_back(g.tet);
            } else if (orient[g.tet] != want) {
                throw Error(ErrorCode::NonVeering, std::string(code), "triangulation is not orientable");
            }
        }
    }
    std::vector<Perm4> sigma(n);
    for (int t = 0; t < n; ++t)
        if (orient[t] < 0) {
            Perm4 s;
            s.img[0] = std::uint8_t(pi[t] + 1);
            s.img[pi[t] + 1] = 0;
            sigma[t] = s;
        }
    std::vector<std::array<Gluing, 4>> fixed(n);
    for (int t = 0; t < n; ++t)
        for (int j = 0; j < 4; ++j) {
            const Gluing& g = gl[t][sigma[t][j]];
            Perm4 np = sigma[g.tet].inverse() * g.perm * sigma[t];
            fixed[t][j] = Gluing{g.tet, np[j], np};
        }

    // Coorientations seeded at tet 0 and propagated through the gluings.
    std::vector<std::array<int, 4>> coor(n, {0, 0, 0, 0});
    auto assign = [&](int t, int dir) {
        for (int i = 0; i < 4; ++i) coor[t][kSplit[pi[t]][i]] = i < 2 ? dir : -dir;
    };
    assign(0, 1);
    std::vector<bool> seen(n, false);
    seen[0] = true;
    stack = {0};
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = fixed[t][f];
            if (seen[g.tet]) continue;
            int c = -coor[t][f];
            bool first = g.face == kSplit[pi[g.tet]][0] || g.face == kSplit[pi[g.tet]][1];
            assign(g.tet, first ? c : -c);
            seen[g.tet] = true;
            stack.push_back(g.tet);
        }
    }
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f)
            if (coor[t][f] == coor[fixed[t][f].tet][fixed[t][f].face])
                throw Error(ErrorCode::NonVeering, std::string(code), "angle structure is not transverse taut");

    VtDocument doc;
    doc.tetrahedra = n;
    doc.gluings = fixed;
    doc.coorientations = coor;
    return doc;
}

VtDocument import_taut_isosig(std::string_view code) {
    VtDocument doc = import_taut_structure(code);
    try {
        doc = with_inferred_veers(doc);
        Triangulation::validate(doc);
    } catch (const Error& e) {
        throw Error(ErrorCode::NonVeering, std::string(code), e.what());
    }
    return doc;
}

}  // namespace veerpoly
