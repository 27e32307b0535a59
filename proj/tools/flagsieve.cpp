// Command-line front end: family sieves, the per-family elimination sweep
// with its brute-force cross-check, design construction and verification.
//
// Exit codes: 0 = confirmed/pass, 2 = surviving parameter set found
// (would contradict the classification), 1 = operational error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "flagsieve/catalog.hpp"
#include "flagsieve/construct.hpp"
#include "flagsieve/elimination.hpp"
#include "flagsieve/report.hpp"

namespace fs = std::filesystem;
using namespace flagsieve;

namespace {

struct Options {
    long qmax = 64;
    long catalog_qmax = 0;
    int family = 0;  // 0 = all
    std::uint64_t seed = 0;
    bool json = false;
    int jobs = 0;
    std::string out;
    std::string data_dir;
    std::string design_file, generator_file;
    std::string group_filter;
    long v_filter = 0;
    long sieve_v = 0;
    std::string sieve_bound;
    std::vector<std::string> inputs;
};

std::string default_data_dir() {
    if (const char* env = std::getenv("FLAGSIEVE_DATA")) return env;
    return "data";
}

void write_or_print(const Options& opt, const nlohmann::json& j,
                    const std::string& text) {
    if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        if (!f) throw std::runtime_error("cannot write " + opt.out);
        f << j.dump(2) << "\n";
    }
    if (opt.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_catalog(const Options& opt) {
    if (!opt.out.empty()) {
        write_catalog_data(opt.out);
        std::cout << "wrote generator files and catalog.txt to " << opt.out
                  << "\n";
        return 0;
    }
    if (opt.catalog_qmax > 0) {  // family table mode
        for (const Integer& q : prime_powers_upto(opt.catalog_qmax)) {
            for (const auto& c : families(q)) {
                if (opt.family && c.family_line != opt.family) continue;
                std::cout << "q=" << q.str() << " line=" << c.family_line;
                if (c.valid)
                    std::cout << " v=" << c.v.str()
                              << " k_bound=" << c.k_bound.str()
                              << (c.is_parabolic ? " parabolic" : "");
                else
                    std::cout << " invalid (" << c.condition << ")";
                std::cout << "\n";
            }
        }
        return 0;
    }
    std::cout << render_catalog(builtin_catalog());
    return 0;
}

int cmd_sieve(const Options& opt) {
    std::vector<SieveReport> reports;
    if (opt.sieve_v > 0) {
        if (opt.sieve_bound.empty())
            throw std::runtime_error("--v requires --k-bound");
        SieveReport r;
        r.context = "v=" + std::to_string(opt.sieve_v) +
                    ", k-bound=" + opt.sieve_bound;
        r.survivors = k_candidates(Integer(opt.sieve_v), Integer(opt.sieve_bound));
        r.checks_applied = {"k | k-bound", "lambda integral", "basic checks"};
        reports.push_back(std::move(r));
    } else {
        for (const auto& e : builtin_catalog())
            for (const auto& s : e.stabilizers) {
                SieveReport r;
                r.context = e.group_name + " / " + s.name + " (order " +
                            s.order.str() + ")";
                Integer v = e.expected_order / s.order;
                r.survivors = k_candidates(v, e.out_factor * s.order);
                r.checks_applied = {"k | |Out|*|H0|", "lambda integral",
                                    "basic checks"};
                reports.push_back(std::move(r));
            }
    }
    nlohmann::json j;
    j["schema"] = 1;
    j["command"] = "sieve";
    j["reports"] = nlohmann::json::array();
    std::string text;
    for (const auto& r : reports) {
        j["reports"].push_back(to_json(r));
        text += r.context + " ->";
        for (const auto& p : r.survivors)
            text += " (" + p.v.str() + "," + p.k.str() + "," +
                    p.lambda.str() + ")";
        if (r.survivors.empty()) text += " none";
        text += "\n";
    }
    write_or_print(opt, j, text);
    return 0;
}

int cmd_eliminate(const Options& opt) {
    std::optional<int> family;
    if (opt.family) family = opt.family;
    auto cells = run_elimination(Integer(opt.qmax), family, opt.jobs);
    auto j = elimination_report(cells, Integer(opt.qmax), family, opt.seed);
    std::string text = render_text(cells);
    bool survivor = false, disagree = false;
    for (const auto& c : cells) {
        survivor |= !c.trace.survivors.empty() || !c.oracle.survivors.empty();
        disagree |= !c.agree;
    }
    text += "cells: " + std::to_string(cells.size()) +
            (survivor ? ", SURVIVORS FOUND" : ", no survivors") +
            (disagree ? ", ORACLE DISAGREEMENT\n" : ", oracle agrees\n");
    write_or_print(opt, j, text);
    if (disagree) return 1;
    return survivor ? 2 : 0;
}

int cmd_construct(const Options& opt) {
    auto rep = construct_all(opt.seed);
    auto j = construct_report(rep, opt.seed);

    // Filters only affect which design files are written.
    std::string dir = opt.out.empty() ? default_data_dir() : opt.out;
    fs::create_directories(dir);
    for (const auto& d : rep.designs) {
        if (!opt.group_filter.empty() && d.group != opt.group_filter) continue;
        if (opt.v_filter && d.params.v != opt.v_filter) continue;
        write_design_file(dir + "/" + d.id + ".design", d.design);
    }
    {
        std::ofstream f(dir + "/construct.json");
        f << j.dump(2) << "\n";
    }
    std::cout << render_text(rep);
    std::cout << "design files written to " << dir << "\n";

    const std::set<DesignParams> expected = {{36, 21, 12},
                                             {36, 15, 6},
                                             {40, 27, 18},
                                             {45, 12, 3},
                                             {63, 32, 16}};
    std::set<DesignParams> got;
    for (const auto& cls : rep.iso_classes)
        got.insert(rep.designs[cls[0]].params);
    std::set<Integer> expected_lambda = {3, 6, 12, 16, 18};
    bool ok = rep.iso_classes.size() == 8 && got == expected &&
              rep.lambda_set == expected_lambda &&
              rep.pg_complement_class >= 0;
    for (const auto& d : rep.designs)
        ok = ok && (d.ft_socle || d.ft_extension) && d.primitive;
    if (!ok) {
        std::cout << "UNEXPECTED construction outcome\n";
        return 2;
    }
    return 0;
}

int cmd_verify(const Options& opt) {
    IncidenceStructure d = read_design_file(opt.design_file);
    auto verdict = d.verify_symmetric();
    if (std::holds_alternative<DesignFailure>(verdict)) {
        const auto& f = std::get<DesignFailure>(verdict);
        std::cout << "FAIL: axiom " << f.axiom << " violated at " << f.witness
                  << "\n";
        return 1;
    }
    const auto& p = std::get<DesignParams>(verdict);
    std::cout << "symmetric (" << p.v.str() << "," << p.k.str() << ","
              << p.lambda.str() << ") design\n";
    if (opt.generator_file.empty()) return 0;

    PermGroup g = read_generators_file(opt.generator_file);
    if (g.degree() != d.v()) {
        std::cout << "FAIL: generator degree " << g.degree()
                  << " does not match v=" << d.v() << "\n";
        return 1;
    }
    bool ft = flag_transitive(d, g);
    bool prim = g.is_primitive();
    std::cout << "group order " << g.order().str() << ", flag-transitive: "
              << (ft ? "yes" : "no") << ", point-primitive: "
              << (prim ? "yes" : "no") << "\n";
    return (ft && prim) ? 0 : 1;
}

int cmd_report(const Options& opt) {
    nlohmann::json merged;
    merged["schema"] = 1;
    merged["command"] = "report";
    merged["reports"] = nlohmann::json::array();
    for (const auto& path : opt.inputs) {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("cannot open " + path);
        merged["reports"].push_back(nlohmann::json::parse(f));
    }
    if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        f << merged.dump(2) << "\n";
    } else {
        std::cout << merged.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parameter sieves and design construction for flag-transitive "
                 "symmetric designs with a unitary socle"};
    app.require_subcommand(1);
    Options opt;
    opt.data_dir = default_data_dir();

    auto* catalog = app.add_subcommand("catalog", "show or emit catalog data");
    catalog->add_option("--out", opt.out, "write generator files here");
    catalog->add_option("--qmax", opt.catalog_qmax,
                        "print the family table up to qmax instead");
    catalog->add_option("--family", opt.family)->check(CLI::Range(1, 11));

    auto* sieve = app.add_subcommand("sieve", "parameter sieve");
    sieve->add_option("--v", opt.sieve_v, "sieve a single (v, k-bound) pair");
    sieve->add_option("--k-bound", opt.sieve_bound);
    sieve->add_flag("--json", opt.json);
    sieve->add_option("--out", opt.out, "write JSON report here");

    auto* elim = app.add_subcommand("eliminate", "family elimination sweep");
    elim->add_option("--qmax", opt.qmax);
    elim->add_option("--family", opt.family)->check(CLI::Range(1, 11));
    elim->add_option("--seed", opt.seed);
    elim->add_option("--jobs", opt.jobs);
    elim->add_flag("--json", opt.json);
    elim->add_option("--out", opt.out, "write JSON report here");

    auto* con = app.add_subcommand("construct", "build and certify designs");
    con->add_option("--seed", opt.seed);
    con->add_option("--out", opt.out, "output directory (default: data dir)");
    con->add_option("--group", opt.group_filter);
    con->add_option("--v", opt.v_filter);

    auto* ver = app.add_subcommand("verify", "verify a design file");
    ver->add_option("--design", opt.design_file)->required();
    ver->add_option("--generators", opt.generator_file);

    auto* mrg = app.add_subcommand("report", "merge JSON reports");
    mrg->add_option("inputs", opt.inputs)->required();
    mrg->add_option("--out", opt.out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*catalog) return cmd_catalog(opt);
        if (*sieve) return cmd_sieve(opt);
        if (*elim) return cmd_eliminate(opt);
        if (*con) return cmd_construct(opt);
        if (*ver) return cmd_verify(opt);
        if (*mrg) return cmd_report(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
