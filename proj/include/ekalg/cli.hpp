#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ekalg/errors.hpp"
#include "ekalg/koszul.hpp"
#include "ekalg/may_chart.hpp"
#include "ekalg/steenrod.hpp"

namespace ekalg::cli {

using json = nlohmann::ordered_json;

namespace detail {

// All machine output goes through one sink so --out and stdout behave alike.
inline int write_output(const std::string& text, const std::optional<std::string>& path,
                        std::ostream& out, std::ostream& err)
{
    if (!path) {
        out << text;
        return 0;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) {
        err << "error: cannot open output file " << *path << "\n";
        return 2;
    }
    file << text;
    return 0;
}

inline json iso_report_json(const std::string& name, const IsoReport& report)
{
    json lines = json::array();
    for (const auto& line : report.lines)
        lines.push_back({{"d", line.d},
                         {"source_dim", line.source_dim},
                         {"target_dim", line.target_dim},
                         {"rank", line.rank},
                         {"ok", line.ok}});
    return {{"name", name}, {"pass", report.ok}, {"lines", std::move(lines)}};
}

struct MayChartArgs {
    uint32_t prime = 2;
    int64_t t_max = 0;
    std::optional<int64_t> f_max;
    std::string format = "csv";
    std::optional<std::string> out_path;
};

inline int run_may_chart(const MayChartArgs& a, std::ostream& out, std::ostream& err)
{
    Prime p(a.prime);
    ChartSpec spec(p, a.t_max, a.f_max);
    Chart chart = build_chart(spec);
    std::string text;
    if (a.format == "csv") {
        std::ostringstream csv;
        csv << "t,f,dim\n";
        for (const auto& [b, dim] : chart.dims.entries)
            csv << b.t << "," << b.w << "," << dim << "\n";
        text = csv.str();
    }
    else {
        json doc;
        doc["schema"] = 1;
        doc["command"] = "may-chart";
        doc["prime"] = a.prime;
        doc["t_max"] = a.t_max;
        doc["f_max"] = chart.f_max_used;
        json rows = json::array();
        for (const auto& [b, dim] : chart.dims.entries)
            rows.push_back({{"t", b.t}, {"f", b.w}, {"dim", dim}});
        doc["rows"] = std::move(rows);
        json gens = json::array();
        for (const auto& g : chart.generators)
            gens.push_back({{"family", family_name(g.family)},
                            {"i", g.i},
                            {"j", g.j},
                            {"t", g.chart.t},
                            {"f", g.chart.w}});
        doc["generators"] = std::move(gens);
        text = doc.dump(2) + "\n";
    }
    return write_output(text, a.out_path, out, err);
}

struct SteenrodArgs {
    uint32_t prime = 3;
    int64_t n = 0;
    bool conjugated = false;
    int64_t d_max = 20;
    int64_t s_max = 3;
    std::string check = "all";
    std::optional<std::string> out_path;
};

inline int run_steenrod(const SteenrodArgs& a, std::ostream& out, std::ostream& err)
{
    Prime p(a.prime);
    DualSteenrod A(p, a.d_max);
    QuotientSpec q(a.n, a.conjugated);
    json doc;
    doc["schema"] = 1;
    doc["command"] = "steenrod";
    doc["prime"] = a.prime;
    doc["n"] = a.n;
    doc["conjugated"] = a.conjugated;
    doc["d_max"] = a.d_max;
    doc["s_max"] = a.s_max;
    json checks = json::array();
    bool pass = true;
    if (a.check == "iso" || a.check == "all") {
        IsoReport report = subring_iso_check(A, q, a.d_max);
        pass = pass && report.ok;
        checks.push_back(iso_report_json("subring_iso", report));
    }
    if (a.check == "free" || a.check == "all") {
        IsoReport report = freeness_check(A, q, a.d_max);
        pass = pass && report.ok;
        checks.push_back(iso_report_json("freeness", report));
    }
    if (a.check == "tor" || a.check == "all") {
        KunnethReport report = kunneth_e2(A, q, a.d_max, a.s_max);
        pass = pass && report.ok();
        json tor = json::array();
        for (const auto& row : report.tor.dims)
            tor.push_back(row);
        checks.push_back({{"name", "kunneth_tor"},
                          {"pass", report.ok()},
                          {"tor_positive_vanish", report.positive_vanish},
                          {"tor0_matches_quotient", report.tor0_matches_quotient},
                          {"tor", std::move(tor)},
                          {"quotient_dims", report.quotient_dims}});
    }
    doc["checks"] = std::move(checks);
    doc["pass"] = pass;
    int rc = write_output(doc.dump(2) + "\n", a.out_path, out, err);
    return rc != 0 ? rc : (pass ? 0 : 1);
}

struct KoszulArgs {
    uint32_t prime = 2;
    std::vector<int64_t> v_degrees;
    std::string module = "trivial";
    int64_t d_max = 10;
    std::optional<std::string> out_path;
};

inline int run_koszul(const KoszulArgs& a, std::ostream& out, std::ostream& err)
{
    Prime p(a.prime);
    std::vector<VGenerator> letters;
    for (size_t i = 0; i < a.v_degrees.size(); ++i)
        letters.push_back({"v" + std::to_string(i), a.v_degrees[i]});
    TensorAlgebra T(p, std::move(letters));
    ModulePresentation P;
    if (a.module == "trivial")
        P = trivial_module(T);
    else if (a.module == "free")
        P = free_module();
    else if (a.module.rfind("random:", 0) == 0) {
        uint64_t seed = 0;
        std::string tail = a.module.substr(7);
        if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidArgument("--module random:SEED needs a decimal seed");
        seed = std::stoull(tail);
        P = random_presentation(T, seed);
    }
    else {
        throw InvalidArgument("--module must be trivial, free, or random:SEED");
    }
    KoszulComplex K(T, P, a.d_max);
    ExactnessReport report = exactness_check(K);

    json doc;
    doc["schema"] = 1;
    doc["command"] = "koszul";
    doc["prime"] = a.prime;
    doc["v_degrees"] = a.v_degrees;
    doc["module"] = a.module;
    doc["d_max"] = a.d_max;
    json lines = json::array();
    for (const auto& line : report.lines)
        lines.push_back({{"d", line.d},
                         {"c1_dim", line.c1_dim},
                         {"c0_dim", line.c0_dim},
                         {"n_dim", line.n_dim},
                         {"rank_d1", line.rank_d1},
                         {"rank_eps", line.rank_eps},
                         {"exact", line.exact}});
    doc["exactness"] = {{"pass", report.ok}, {"lines", std::move(lines)}};
    doc["pass"] = report.ok;
    int rc = write_output(doc.dump(2) + "\n", a.out_path, out, err);
    return rc != 0 ? rc : (report.ok ? 0 : 1);
}

struct CrossCheckArgs {
    uint32_t prime = 2;
    int64_t i_max = 8;
    int64_t j_max = 8;
    int64_t n_max = 4;
    std::optional<std::string> out_path;
};

inline int run_crosscheck(const CrossCheckArgs& a, std::ostream& out, std::ostream& err)
{
    Prime p(a.prime);
    CrossCheckReport closed = cross_check(p, a.i_max, a.j_max);
    bool pass = closed.ok();

    json doc;
    doc["schema"] = 1;
    doc["command"] = "crosscheck";
    doc["prime"] = a.prime;
    doc["i_max"] = a.i_max;
    doc["j_max"] = a.j_max;
    json mismatches = json::array();
    for (const auto& m : closed.mismatches)
        mismatches.push_back({{"family", family_name(m.family)},
                              {"i", m.i},
                              {"j", m.j},
                              {"closed", {m.closed.t, m.closed.w}},
                              {"word", {m.word.t, m.word.w}}});
    doc["closed_form"] = {{"checked", closed.checked},
                          {"pass", closed.ok()},
                          {"mismatches", std::move(mismatches)}};
    if (!p.is_two()) {
        SteinbergerReport st = steinberger_consistency(p, a.n_max);
        pass = pass && st.ok;
        json lines = json::array();
        for (const auto& line : st.lines)
            lines.push_back({{"n", line.n},
                             {"tau_deg", line.tau_deg},
                             {"q_image", line.q_image},
                             {"tau_next", line.tau_next},
                             {"beta_image", line.beta_image},
                             {"xi_next", line.xi_next},
                             {"degrees_ok", line.degrees_ok},
                             {"e2_generators_ok", line.e2_generators_ok}});
        doc["steinberger"] = {{"n_max", a.n_max}, {"pass", st.ok}, {"lines", std::move(lines)}};
    }
    doc["pass"] = pass;
    int rc = write_output(doc.dump(2) + "\n", a.out_path, out, err);
    return rc != 0 ? rc : (pass ? 0 : 1);
}

}  // namespace detail

// Entry point shared by the binary and the tests. args excludes the program
// name. Exit codes: 0 pass, 1 check failure, 2 usage/precondition error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"exact-arithmetic checks for graded algebra structures over F_p"};
    app.name("ekalg");
    app.require_subcommand(1);

    detail::MayChartArgs mc;
    CLI::App* may = app.add_subcommand("may-chart", "bigraded dimension chart of the E1-term");
    may->add_option("--prime", mc.prime, "field characteristic")->required();
    may->add_option("--tmax", mc.t_max, "largest total degree")->required();
    int64_t fmax_raw = -1;
    CLI::Option* fmax_opt = may->add_option("--fmax", fmax_raw, "largest filtration");
    may->add_option("--format", mc.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    std::string mc_out;
    CLI::Option* mc_out_opt = may->add_option("--out", mc_out, "output file (default stdout)");

    detail::SteenrodArgs sd;
    CLI::App* st = app.add_subcommand("steenrod", "dual Steenrod quotient checks");
    st->add_option("--prime", sd.prime, "odd field characteristic")->required();
    st->add_option("--n", sd.n, "quotient index")->required();
    st->add_flag("--conjugated", sd.conjugated, "use conjugated generators");
    st->add_option("--dmax", sd.d_max, "largest internal degree")->required();
    st->add_option("--smax", sd.s_max, "largest Tor filtration");
    st->add_option("--check", sd.check, "which check to run")
        ->check(CLI::IsMember({"iso", "free", "tor", "all"}));
    std::string st_out;
    CLI::Option* st_out_opt = st->add_option("--out", st_out, "output file (default stdout)");

    detail::KoszulArgs kz;
    CLI::App* ko = app.add_subcommand("koszul", "Koszul complex exactness over a tensor algebra");
    ko->add_option("--prime", kz.prime, "field characteristic")->required();
    ko->add_option("--vdegrees", kz.v_degrees, "letter degrees, comma separated")
        ->required()
        ->delimiter(',');
    ko->add_option("--module", kz.module, "trivial, free, or random:SEED");
    ko->add_option("--dmax", kz.d_max, "largest internal degree")->required();
    std::string ko_out;
    CLI::Option* ko_out_opt = ko->add_option("--out", ko_out, "output file (default stdout)");

    detail::CrossCheckArgs cc;
    CLI::App* cr = app.add_subcommand("crosscheck", "closed forms vs operation words");
    cr->add_option("--prime", cc.prime, "field characteristic")->required();
    cr->add_option("--imax", cc.i_max, "largest first index")->required();
    cr->add_option("--jmax", cc.j_max, "largest second index")->required();
    cr->add_option("--nmax", cc.n_max, "largest Steinberger index (odd primes)");
    std::string cr_out;
    CLI::Option* cr_out_opt = cr->add_option("--out", cr_out, "output file (default stdout)");

    std::vector<const char*> argv;
    std::string prog = "ekalg";
    argv.push_back(prog.c_str());
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (may->parsed()) {
            if (*fmax_opt)
                mc.f_max = fmax_raw;
            if (*mc_out_opt)
                mc.out_path = mc_out;
            return detail::run_may_chart(mc, out, err);
        }
        if (st->parsed()) {
            if (*st_out_opt)
                sd.out_path = st_out;
            return detail::run_steenrod(sd, out, err);
        }
        if (ko->parsed()) {
            if (*ko_out_opt)
                kz.out_path = ko_out;
            return detail::run_koszul(kz, out, err);
        }
        if (cr->parsed()) {
            if (*cr_out_opt)
                cc.out_path = cr_out;
            return detail::run_crosscheck(cc, out, err);
        }
    }
    catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace ekalg::cli
