#include "veerpoly/cli.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "veerpoly/check.hpp"
#include "veerpoly/error.hpp"
#include "veerpoly/report.hpp"

namespace veerpoly {

namespace {

std::vector<long> parse_class(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long v = std::stol(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument(text);
    return out;
}

ThetaMode parse_mode(const std::string& m) {
    if (m == "exact") return ThetaMode::Exact;
    if (m == "division") return ThetaMode::Division;
    return ThetaMode::Auto;
}

std::string row_for(const std::string& input, const std::string& format) {
    Json row;
    row["input"] = input;
    try {
        Input in = load_input(input);
        Triangulation tri = Triangulation::validate(in.record);
        HomologyModel hm = homology_basis(tri);
        row["status"] = "ok";
        row["tetrahedra"] = tri.size();
        row["b"] = hm.b;
        Json tor = Json::array();
        for (const auto& t : hm.torsion) tor.push_back(t.get_str());
        row["torsion"] = tor;
        row["veering"] = veering_polynomial(tri, hm).str();
        TautResult t = taut_polynomial(tri, hm, ThetaMode::Auto);
        row["taut"] = t.theta.is_zero() ? Json(nullptr) : Json(t.theta.str());
        row["ab"] = ab_polynomial(tri, hm).canonical.str();
        row["layered"] = is_layered(tri, hm).layered;
    } catch (const std::exception& e) {
        row["status"] = "failed";
        row["error"] = e.what();
    }
    if (format == "json") return row.dump();
    auto field = [&](const char* k) -> std::string {
        if (!row.contains(k) || row[k].is_null()) return "-";
        return row[k].is_string() ? row[k].get<std::string>() : row[k].dump();
    };
    std::string s = field("input") + "\t" + field("status");
    if (row["status"] == "ok") {
        for (const char* k : {"tetrahedra", "b", "torsion", "layered", "veering", "taut", "ab"}) s += "\t" + field(k);
    } else {
        s += "\t" + field("error");
    }
    return s;
}

}  // namespace

std::vector<std::string> batch_rows(const std::vector<std::string>& inputs, int jobs, const std::string& format) {
    std::vector<std::string> rows(inputs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < inputs.size(); i = next++) rows[i] = row_for(inputs[i], format);
    };
    int n = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Veering triangulation polynomials, cones and layeredness", "veerpoly"};
    app.require_subcommand(1);
    std::string input, which = "all", mode = "auto", cls, format = "text", out_path;
    std::size_t cycle_cap = kDefaultCycleCap, minor_budget = kDefaultMinorBudget, face_budget = kDefaultFaceBudget;
    int jobs = 1;
    bool timing = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("input", input, "vt file or census code")->required();
        sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", out_path, "write the report here");
        sub->add_option("--cycle-cap", cycle_cap, "simple-cycle budget");
        sub->add_option("--minor-budget", minor_budget, "maximal-minor budget");
        sub->add_option("--face-budget", face_budget, "double-description face budget");
        sub->add_flag("--timing", timing, "include elapsed time");
    };
    auto with_which = [&](CLI::App* sub) {
        sub->add_option("--which", which, "veering, taut, ab or all")
            ->check(CLI::IsMember({"veering", "taut", "ab", "all"}));
        sub->add_option("--mode", mode, "exact, division or auto")->check(CLI::IsMember({"exact", "division", "auto"}));
    };
    auto* validate = app.add_subcommand("validate", "validate a triangulation");
    auto* info = app.add_subcommand("info", "combinatorics and homology");
    auto* poly = app.add_subcommand("poly", "veering, taut and AB polynomials");
    auto* cones = app.add_subcommand("cones", "carried cone and cycle generators");
    auto* layered = app.add_subcommand("layered", "layeredness verdict with certificate");
    auto* norm = app.add_subcommand("norm", "norm and Euler class on carried weights");
    auto* spec = app.add_subcommand("specialize", "specialize polynomials at a class");
    auto* check = app.add_subcommand("check", "run every internal consistency check");
    auto* batch = app.add_subcommand("batch", "key invariants for a list of inputs");
    for (auto* s : {validate, info, poly, cones, layered, norm, spec, check}) common(s);
    with_which(poly);
    with_which(spec);
    spec->add_option("--class", cls, "comma-separated integers")->required();
    batch->add_option("list", input, "file with one input per line")->required();
    batch->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    batch->add_option("--out", out_path, "write rows here");
    batch->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    auto emit = [&](const std::string& text) -> int {
        if (out_path.empty()) {
            out << text;
            return kExitOk;
        }
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "cannot write " << out_path << "\n";
            return kExitUsage;
        }
        f << text;
        return kExitOk;
    };

    auto started = std::chrono::steady_clock::now();
    try {
        if (batch->parsed()) {
            std::ifstream f(input);
            if (!f) {
                err << "cannot read " << input << "\n";
                return kExitUsage;
            }
            std::vector<std::string> inputs;
            std::string line;
            while (std::getline(f, line)) {
                auto a = line.find_first_not_of(" \t\r");
                if (a == std::string::npos || line[a] == '#') continue;
                auto b = line.find_last_not_of(" \t\r");
                inputs.push_back(line.substr(a, b - a + 1));
            }
            std::string text;
            if (format == "text") text = "input\tstatus\ttetrahedra\tb\ttorsion\tlayered\tveering\ttaut\tab\n";
            for (const auto& r : batch_rows(inputs, jobs, format)) text += r + "\n";
            return emit(text);
        }

        Budgets bud{cycle_cap, minor_budget, face_budget};
        Input in = load_input(input);
        Json report = header_json(in);
        report["command"] = app.get_subcommands().front()->get_name();
        int status = kExitOk;

        if (validate->parsed()) {
            Triangulation tri = Triangulation::validate(in.record);
            report["valid"] = true;
            report["triangulation"] = triangulation_json(tri);
        } else if (check->parsed()) {
            CheckOptions opt;
            opt.budgets = bud;
            CheckSummary s = check_all(in.record, opt);
            Json items = Json::array();
            for (const auto& c : s.items) items.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
            report["checks"] = items;
            report["passed"] = s.ok();
            if (!s.ok()) {
                report["first_failure"] = s.first_failure();
                status = kExitMath;
            }
        } else {
            Triangulation tri = Triangulation::validate(in.record);
            HomologyModel hm = homology_basis(tri);
            report["homology"] = homology_json(hm);
            if (info->parsed()) {
                report["triangulation"] = triangulation_json(tri);
            } else if (poly->parsed()) {
                report["polynomials"] = polynomials_json(tri, hm, which, parse_mode(mode), bud);
            } else if (cones->parsed()) {
                report["cones"] = cones_json(tri, hm, bud);
            } else if (layered->parsed()) {
                report["layered"] = layered_json(tri, hm, bud);
            } else if (norm->parsed()) {
                report["norm"] = norm_json(tri, hm, bud);
            } else if (spec->parsed()) {
                std::vector<long> alpha;
                try {
                    alpha = parse_class(cls);
                } catch (const std::exception&) {
                    err << "usage error: --class expects comma-separated integers\n";
                    return kExitUsage;
                }
                if (int(alpha.size()) != hm.b) {
                    err << "usage error: --class needs " << hm.b << " integers\n";
                    return kExitUsage;
                }
                Json polys = polynomials_json(tri, hm, which, parse_mode(mode), bud);
                Json sp;
                sp["class"] = alpha;
                auto spec_one = [&](const std::string& text) {
                    LaurentPoly p = parse_laurent(text, hm.b);
                    return specialize(p, alpha).str({"t"});
                };
                if (polys.contains("veering")) sp["veering"] = spec_one(polys["veering"].get<std::string>());
                if (polys.contains("ab")) sp["ab"] = spec_one(polys["ab"]["polynomial"].get<std::string>());
                if (polys.contains("taut")) {
                    if (polys["taut"]["polynomial"].is_null()) sp["taut"] = nullptr;
                    else sp["taut"] = spec_one(polys["taut"]["polynomial"].get<std::string>());
                }
                report["specialized"] = sp;
            }
        }
        if (timing)
            report["timing_ms"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
        int e = emit(render(report, format));
        return e != kExitOk ? e : status;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (is_budget_error(e.code())) return kExitBudget;
        if (e.code() == ErrorCode::Io) return kExitUsage;
        return kExitMath;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitMath;
    }
}

}  // namespace veerpoly
