#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "incilab/incilab.hpp"

using namespace incilab;

namespace {

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
}

Rational parse_cli_rational(const std::string& s, const char* name) {
    try {
        return parse_rational(s);
    } catch (const ParseError& e) {
        throw InvalidArgument(std::string("--") + name + ": " + e.what());
    }
}

// Full invariant suite on one configuration; prints one line per check.
int verify(const Configuration& cfg) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : ": " + detail) << "\n";
        failures += !ok;
    };
    const IncidenceTally naive = count_incidences(cfg, CountStrategy::Naive);
    const IncidenceTally grid = count_incidences(cfg, CountStrategy::Grid);
    check("grid tally equals naive tally", naive == grid, "I = " + std::to_string(naive.total));
    std::uint64_t sp = 0, sl = 0;
    for (auto v : naive.per_point) sp += v;
    for (auto v : naive.per_line) sl += v;
    check("sum per point = sum per line = I", sp == naive.total && sl == naive.total);

    const CoplanarMax cop = max_coplanar_lines(cfg.lines);
    bool witness_ok = true;
    if (cop.witness)
        for (auto j : cop.lines) witness_ok = witness_ok && cop.witness->contains(cfg.lines[j]);
    check("coplanarity witness contains its lines", witness_ok, "s = " + std::to_string(cop.s));

    std::optional<long> D;
    try {
        degree_plan(cfg.m(), cfg.n());
    } catch (const Error&) {
        D = 2;
    }
    const StageReport s1 = run_stage1(cfg, D);
    check("stage-1 accounting identity", s1.identity_holds(),
          std::to_string(s1.I) + " = " + std::to_string(s1.I_P1_L1) + " + " + std::to_string(s1.I_P1_L1c) + " + " +
              std::to_string(s1.I_P1c_L1c));
    check("stage-1 pruned + residual + cross-charge = I", s1.pruning_balanced());
    check("stage-1 root counts <= deg f", s1.roots_certified, "max roots " + std::to_string(s1.max_roots));
    bool occ_ok = true;
    for (const auto& c : s1.classes) occ_ok = occ_ok && !c.over_occupancy;
    check("stage-1 cell occupancy within surrogate bound", occ_ok);

    const Configuration again = parse_config(dump_config(cfg));
    check("JSON round trip", again == cfg);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"incilab: exact point-line incidence experiments in three dimensions"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("generate", "Generate a configuration");
    std::string family, params, out_path = "-";
    std::uint64_t seed = 0;
    gen->add_option("--family", family, "elekes2d | coplanar_pack | grid3d | ruled_surface | concurrent | random")->required();
    gen->add_option("--params", params, "Comma separated key=value list, e.g. kind=hp,k=10");
    gen->add_option("--seed", seed, "Seed (random family)");
    gen->add_option("-o,--output", out_path, "Output file (default stdout)");

    auto* cnt = app.add_subcommand("count", "Count incidences");
    std::string cfg_path, strategy = "naive";
    cnt->add_option("config", cfg_path, "Configuration JSON file")->required();
    cnt->add_option("--strategy", strategy, "Counting strategy (default naive)")->check(CLI::IsMember({"naive", "grid"}));

    auto* bnd = app.add_subcommand("bounds", "Evaluate the bound formulas and the degree plan");
    std::uint64_t m = 0, n = 0, s = 1;
    std::string A = "1", B = "1", b = "2";
    bnd->add_option("--m", m, "Number of points")->required();
    bnd->add_option("--n", n, "Number of lines")->required();
    bnd->add_option("--s", s, "Most lines in one plane (default 1)");
    bnd->add_option("--A", A, "Rational constant A (default 1)");
    bnd->add_option("--B", B, "Rational constant B (default 1)");
    bnd->add_option("--b", b, "Rational base b > 1 (default 2)");

    auto* part = app.add_subcommand("partition", "Build a partitioning polynomial for the points");
    unsigned levels = 1;
    std::string eps = "1/10";
    part->add_option("config", cfg_path, "Configuration JSON file")->required();
    part->add_option("--levels", levels, "Number of bisector levels t (default 1)");
    part->add_option("--eps", eps, "Balance slack, rational (default 1/10)");
    part->add_option("--seed", seed, "Search seed");

    auto* pipe = app.add_subcommand("pipeline", "Run the two-stage partitioning report");
    std::optional<long> D, E;
    std::string csv_path;
    pipe->add_option("config", cfg_path, "Configuration JSON file")->required();
    pipe->add_option("--D", D, "First-stage degree override");
    pipe->add_option("--E", E, "Second-stage degree override");
    pipe->add_option("-o,--output", out_path, "JSON report file (default stdout)");
    pipe->add_option("--csv", csv_path, "Also write a one-row CSV summary");

    auto* ver = app.add_subcommand("verify", "Run the invariant suite; exit 0 iff all pass");
    ver->add_option("config", cfg_path, "Configuration JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            GeneratorSpec spec{family, parse_params(params), seed};
            write_text(out_path, dump_config(generate(spec)));
        } else if (*cnt) {
            const Configuration cfg = load_config(cfg_path);
            const auto t = count_incidences(cfg, strategy == "grid" ? CountStrategy::Grid : CountStrategy::Naive);
            std::cout << to_json(t).dump(2) << "\n";
        } else if (*bnd) {
            BoundParams p;
            p.m = m;
            p.n = n;
            p.s = s;
            p.A = parse_cli_rational(A, "A");
            p.B = parse_cli_rational(B, "B");
            p.b = parse_cli_rational(b, "b");
            p.validate();
            Json j;
            j["st2d"] = to_json(st2d_bound(m, n));
            j["gk"] = to_json(gk_bound(p));
            j["trivial"] = trivial_bound(m, n).get_str();
            j["scale"] = to_json(incidence_scale(m, n, s));
            try {
                const auto a = amn_coefficient(m, n, p.b);
                j["amn"] = {{"regime", to_string(a.regime)},
                            {"exponent", a.exponent_exact ? Json(to_string(*a.exponent_exact)) : Json(static_cast<double>(a.exponent))},
                            {"value", static_cast<double>(a.A)}};
            } catch (const Error& e) {
                j["amn"] = e.what();
            }
            if (n >= 2) j["midrange"] = to_json(midrange_bound(m, n, s, p.b));
            try {
                j["plan"] = to_json(degree_plan(m, n));
            } catch (const Error& e) {
                j["plan"] = e.what();
            }
            std::cout << j.dump(2) << "\n";
        } else if (*part) {
            const Configuration cfg = load_config(cfg_path);
            PartitionOptions po;
            po.levels = levels;
            po.eps = parse_cli_rational(eps, "eps");
            po.seed = seed;
            const PartitionPoly pp = build_partition(cfg.points, po);
            Json j = to_json(pp);
            const CellOccupancy occ = cell_occupancy(pp, cfg.points);
            Json cells = Json::object();
            for (const auto& [sv, c] : occ.cells) cells[sign_string(sv)] = c;
            j["cells"] = std::move(cells);
            j["on_surface"] = occ.on_surface;
            const LineSplit ls = classify_lines(pp, cfg.lines);
            j["lines_contained"] = ls.contained.size();
            j["lines_crossing"] = ls.crossing.size();
            std::size_t max_roots = 0;
            for (auto r : ls.roots) max_roots = std::max(max_roots, r);
            j["max_roots"] = max_roots;
            std::cout << j.dump(2) << "\n";
        } else if (*pipe) {
            const Configuration cfg = load_config(cfg_path);
            ReportOptions ro;
            ro.D = D;
            ro.E = E;
            const IncidenceReport rep = full_report(cfg, ro);
            write_text(out_path, to_json(rep).dump(2) + "\n");
            if (!csv_path.empty()) write_text(csv_path, csv_header() + csv_row(rep));
        } else if (*ver) {
            return verify(load_config(cfg_path));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
