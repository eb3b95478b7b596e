#pragma once

// Command-line front end. Exit codes:
//   0 success / verification passed
//   1 verification failed
//   2 usage or input error (bad flags, malformed JSON, dimension mismatch)
//   3 semantic input error (d < 3, non-unitary or non-diagonal spec)

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "umebmub/umebmub.hpp"

namespace umebmub::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kSemantic = 3 };

namespace detail {

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + path + "'");
    return out;
}

// A pair file {"spec": ...} or a bare spec object.
inline const Json& spec_node(const Json& j) { return j.contains("spec") ? j.at("spec") : j; }

struct ConstructArgs {
    std::optional<int> d;
    std::string example;
    std::string spec_path;
    bool umeb_only = false;
    std::string out;
};

inline int cmd_construct(const ConstructArgs& a, std::ostream& out) {
    if (!a.example.empty() && !a.spec_path.empty()) throw CLI::ValidationError("--example and --spec are exclusive");

    std::optional<MubPairSpec> spec;
    if (!a.example.empty()) spec = example_catalog(parse_example_id(a.example));
    if (!a.spec_path.empty()) spec = spec_from_json(spec_node(read_json_file(a.spec_path)));

    int d = 0;
    if (spec) {
        if (a.d && *a.d != spec->d) {
            throw DimensionError("--d " + std::to_string(*a.d) + " does not match the spec's d = " +
                                 std::to_string(spec->d));
        }
        d = spec->d;
    } else if (a.d) {
        d = *a.d;
    } else {
        throw CLI::ValidationError("--d is required without --example or --spec");
    }

    Json doc;
    if (spec) {
        if (a.umeb_only) throw CLI::ValidationError("--umeb cannot be combined with a pair spec");
        validate(*spec);
        doc = {{"spec", to_json(*spec)},
               {"first", to_json(complete_basis(d))},
               {"second", to_json(build_second_basis(*spec))}};
    } else {
        doc = to_json(a.umeb_only ? build_umeb(d) : complete_basis(d));
    }
    auto file = open_out(a.out);
    file << doc.dump(2) << '\n';
    if (!file) throw FormatError("failed writing '" + a.out + "'");
    out << "wrote " << a.out << '\n';
    return kPass;
}

inline int cmd_verify(const std::string& what, const std::string& in_path, double tol_value, std::ostream& out) {
    const Tolerance tol(tol_value);
    const Json j = read_json_file(in_path);
    VerificationReport report;
    if (what == "mub") {
        report = verify_pair_direct(basis_from_json(umebmub::detail::field(j, "first")),
                                    basis_from_json(umebmub::detail::field(j, "second")), tol);
    } else if (what == "theorem") {
        report = theorem_conditions(spec_from_json(spec_node(j)), tol);
    } else if (what == "corollary") {
        const PhaseSpec ps = j.contains("phi1") ? phase_spec_from_json(j)
                                                : to_phase_spec(spec_from_json(spec_node(j)), tol);
        report = corollary_check(ps, tol);
    } else if (what == "umeb") {
        const auto basis = basis_from_json(j.contains("first") ? j.at("first") : j);
        report = verify_umeb(basis.states(), tol);
    } else {
        throw CLI::ValidationError("unknown check '" + what + "'");
    }
    out << to_json(report).dump(2) << '\n';
    return report.passed ? kPass : kFail;
}

inline std::vector<double> parse_roots(const std::string& s) {
    std::vector<double> roots;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            roots.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--roots expects comma-separated radians, got '" + item + "'");
        }
    }
    return roots;
}

inline int cmd_search(SearchConfig cfg, const std::string& mode, const std::string& roots, const std::string& out_path,
                      std::ostream& out) {
    cfg.mode = parse_search_mode(mode);
    if (!roots.empty()) cfg.roots = parse_roots(roots);
    auto file = open_out(out_path);
    const auto summary = run_search(cfg, [&](const Candidate& c) { file << to_json(c).dump() << '\n'; });
    if (!file) throw FormatError("failed writing '" + out_path + "'");
    out << "search d=" << cfg.d << " mode=" << mode << " examined=" << summary.examined
        << " admissible=" << summary.admissible << " verified=" << summary.verified
        << " emitted=" << summary.emitted << (summary.emitted == 0 ? " (no candidates found)" : "") << '\n';
    return kPass;
}

}  // namespace detail

/// Runs the CLI on argv-style arguments (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Unextendible maximally entangled bases and mutually unbiased pairs on C^2 x C^d"};
    app.require_subcommand(1);

    detail::ConstructArgs construct;
    auto* c = app.add_subcommand("construct", "write the completed basis, the UMEB, or a basis pair as JSON");
    c->add_option("--d", construct.d, "dimension of the second factor (>= 3)");
    c->add_option("--example", construct.example, "worked example: ex1, ex2, ex3 or ex4");
    c->add_option("--spec", construct.spec_path, "pair spec JSON {d, S, W}");
    c->add_flag("--umeb", construct.umeb_only, "write only the 2(d-1) maximally entangled states");
    c->add_option("--out", construct.out, "output path")->required();

    std::string check;
    std::string in_path;
    double tol = kDefaultEps;
    auto* v = app.add_subcommand("verify", "check a JSON artifact and print a report");
    v->add_option("check", check, "mub | theorem | corollary | umeb")
        ->required()
        ->check(CLI::IsMember({"mub", "theorem", "corollary", "umeb"}));
    v->add_option("--in", in_path, "input JSON")->required();
    v->add_option("--tol", tol, "absolute tolerance")->default_val(kDefaultEps);

    SearchConfig cfg;
    std::string mode;
    std::string roots;
    std::string out_path;
    auto* s = app.add_subcommand("search", "emit verified (S, W) candidates as JSON lines");
    s->add_option("--d", cfg.d, "dimension of the second factor")->required();
    s->add_option("--mode", mode, "exhaustive_signs | sylvester_orbit | random_phases")->required();
    s->add_option("--phi1", cfg.phi1, "phase of s11 in radians")->required();
    s->add_option("--phi2", cfg.phi2, "phase of s22 in radians")->required();
    s->add_option("--limit", cfg.limit, "maximum candidates to emit")->default_val(cfg.limit);
    s->add_option("--seed", cfg.seed, "seed for randomized modes")->default_val(cfg.seed);
    s->add_option("--samples", cfg.samples, "draws for randomized modes")->default_val(cfg.samples);
    s->add_option("--roots", roots, "random_phases: fixed root phases, comma-separated radians");
    s->add_option("--tol", cfg.tol, "verification tolerance")->default_val(cfg.tol);
    s->add_option("--out", out_path, "output JSONL path")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (c->parsed()) return detail::cmd_construct(construct, out);
        if (v->parsed()) return detail::cmd_verify(check, in_path, tol, out);
        if (s->parsed()) return detail::cmd_search(cfg, mode, roots, out_path, out);
        return kUsage;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    } catch (const ConstructionError& e) {
        err << "error: " << e.what() << '\n';
        return kSemantic;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << '\n';
        return kSemantic;
    } catch (const std::exception& e) {
        // Malformed JSON, dimension mismatch, bad state data, bad search config.
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace umebmub::cli
