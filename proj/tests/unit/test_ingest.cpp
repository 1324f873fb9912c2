#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"
#include "veerpoly/error.hpp"
#ifdef VEERPOLY_HAVE_ISOSIG
#include "veerpoly/isosig.hpp"
#endif

using namespace testing;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

ErrorCode parse_error(std::string_view text, std::string* message = nullptr) {
    try {
        parse_vt(text);
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.code();
    }
    FAIL("parsed");
    return ErrorCode::Io;
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("FIX-A parses to a two-tetrahedron document") {
    VtDocument d = parse_vt(slurp(fixture_path("FIX-A.vt")));
    CHECK(d.tetrahedra == 2);
    CHECK(d.gluings.size() == 2);
    CHECK(d.veers.has_value());
}

TEST_CASE("unknown format version") {
    CHECK(parse_error(slurp(fixture_path("broken/unknown-version.vt"))) == ErrorCode::UnknownFormatVersion);
}

TEST_CASE("truncated file reports a located syntax error") {
    std::string msg;
    CHECK(parse_error(slurp(fixture_path("broken/truncated.vt")), &msg) == ErrorCode::SyntaxError);
    CHECK(msg.find("line ") != std::string::npos);
    CHECK(msg.find("column ") != std::string::npos);
}

TEST_CASE("parsing is total on mutated input") {
    std::string base = slurp(fixture_path("FIX-A.vt"));
    std::mt19937 rng(31);
    const std::string alphabet = "{}[],:\"0123-LRx \n";
    for (int i = 0; i < 500; ++i) {
        std::string t = base;
        int edits = 1 + int(rng() % 4);
        for (int k = 0; k < edits; ++k) {
            std::size_t pos = rng() % t.size();
            switch (rng() % 3) {
                case 0: t[pos] = alphabet[rng() % alphabet.size()]; break;
                case 1: t.erase(pos, 1 + rng() % 5); break;
                default: t = t.substr(0, pos); break;
            }
            if (t.empty()) break;
        }
        try {
            parse_vt(t);
        } catch (const Error&) {
        }
    }
    CHECK(true);
}

TEST_CASE("structural errors") {
    Json d = Json::parse(slurp(fixture_path("FIX-A.vt")));
    SUBCASE("count mismatch") {
        d["tetrahedra"] = 3;
        CHECK(parse_error(d.dump()) == ErrorCode::CountMismatch);
    }
    SUBCASE("missing key") {
        d.erase("coorientations");
        CHECK(parse_error(d.dump()) == ErrorCode::SyntaxError);
    }
    SUBCASE("unknown key") {
        d["extra"] = 1;
        CHECK(parse_error(d.dump()) == ErrorCode::SyntaxError);
    }
    SUBCASE("bad permutation") {
        d["gluings"][0][0][2] = "0012";
        CHECK(parse_error(d.dump()) == ErrorCode::SyntaxError);
    }
    SUBCASE("bad veer symbol") {
        d["veers"][0][0] = "Q";
        CHECK(parse_error(d.dump()) == ErrorCode::SyntaxError);
    }
    SUBCASE("infer token") {
        d["veers"] = "infer";
        CHECK_FALSE(parse_vt(d.dump()).veers.has_value());
    }
}

TEST_CASE("serialize is canonical and round-trips") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        std::string text = slurp(fixture_path(name + ".vt"));
        VtDocument d = parse_vt(text);
        std::string canon = serialize_vt(d);
        CHECK(canon == text);
        CHECK(parse_vt(canon) == d);
        CHECK(serialize_vt(parse_vt(canon)) == canon);
        // key order of the input does not matter
        Json j = Json::parse(text);
        std::string reordered = "{";
        std::vector<std::string> keys;
        for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
        std::reverse(keys.begin(), keys.end());
        for (std::size_t i = 0; i < keys.size(); ++i)
            reordered += (i ? "," : "") + Json(keys[i]).dump() + ":" + j[keys[i]].dump();
        reordered += "}";
        CHECK(serialize_vt(parse_vt(reordered)) == canon);
    }
}

#ifdef VEERPOLY_HAVE_ISOSIG
TEST_CASE("census import reproduces the independently generated fixtures") {
    for (const auto& e : manifest()["fixtures"]) {
        CAPTURE(e["name"].get<std::string>());
        VtDocument d = import_taut_isosig(e["code"].get<std::string>());
        CHECK(serialize_vt(d) == slurp(fixture_path(e["file"].get<std::string>())));
        CHECK_NOTHROW(Triangulation::validate(d));
    }
}

TEST_CASE("census import errors") {
    auto code_of = [](std::string_view c) {
        try {
            import_taut_isosig(c);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;
    };
    CHECK(code_of("cPcbbbiht_1") == ErrorCode::MalformedCode);
    CHECK(code_of("cPcbbbiht_123") == ErrorCode::MalformedCode);
    CHECK(code_of("cPcbbbiht") == ErrorCode::MalformedCode);
    CHECK(code_of("cPc!bbiht_12") == ErrorCode::MalformedCode);
    CHECK(code_of("cPcbbbiht_13") == ErrorCode::MalformedCode);
    // taut but not veering according to the census tooling
    CHECK(code_of("cPcbbbiht_01") == ErrorCode::NonVeering);
    CHECK(code_of("dLQacccjsnk_122") == ErrorCode::NonVeering);
    // not transverse taut
    CHECK(code_of("cPcbbbiht_00") == ErrorCode::NonVeering);
}

TEST_CASE("every census sample code imports and validates") {
    std::ifstream f(fixture_path("census_sample.txt"));
    std::string line;
    int n = 0;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::string code = line.substr(0, line.find('\t'));
        CAPTURE(code);
        CHECK_NOTHROW(Triangulation::validate(import_taut_isosig(code)));
        ++n;
    }
    CHECK(n >= 50);
}
#endif

}  // TEST_SUITE
