// cli.hpp -- command line front end. Subcommands: validate, build,
// verify, corpus. Exit codes: 0 success, 1 validation failure, 2 check
// failure, 3 internal error. Kept in a header so tests can drive the
// commands in-process.

#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"

namespace glueback {

namespace cli_detail {

inline unsigned default_threads() {
    if (const char* env = std::getenv("GLUEBACK_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

inline std::vector<int> parse_vertex_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError("bad facet index '" + item + "' in vertex list '" + s + "'");
        }
    }
    return out;
}

inline std::vector<BitVector> parse_lambda_file(const std::string& path) {
    json j = load_json_file(path);
    json arr;
    if (j.is_array())
        arr = j;
    else if (j.is_object() && j.contains("lambda"))
        arr = j.at("lambda");
    else
        throw ValidationError(path + ": expected an array of bit strings or {\"lambda\": [...]}");
    std::vector<BitVector> lambda;
    for (const auto& item : arr) lambda.push_back(BitVector::parse(item.get<std::string>()));
    return lambda;
}

inline void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "warning: " << w << "\n";
}

inline std::string cells_str(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

inline void print_build_table(std::ostream& out, const QuotientCellComplex& cx,
                              const BettiReport& b, std::size_t comp_count) {
    out << "polytope: " << cx.polytope->name << "  r=" << cx.r << "  dim=" << cx.dim << "\n";
    out << "cells per dim: " << cells_str(b.cells_per_dim) << "\n";
    out << "betti:         " << cells_str(b.betti) << "\n";
    out << "hrk=" << b.hrk << "  euler=" << b.euler << "  components=" << comp_count << "\n";
    if (cx.non_manifold)
        out << "warning: labels are dependent at some vertex (non-manifold complex)\n";
}

struct CommonOpts {
    unsigned threads = default_threads();
    std::string format = "table";
    bool strict = false;
};

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;

    CLI::App app{"combinatorial engine for small covers, real moment-angle manifolds, "
                 "glue-back constructions and partial quotients over GF(2)"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may appear after the subcommand
    CommonOpts common;
    app.add_option("--threads", common.threads, "worker thread count")
        ->default_val(default_threads());
    app.add_option("--format", common.format, "table|json")->default_val("table");
    app.add_flag("--strict", common.strict, "treat schema warnings as errors");

    // ---- validate --------------------------------------------------------
    auto* validate = app.add_subcommand("validate", "validate polytope/coloring/spec files");
    std::string val_polytope, val_mu, val_spec;
    validate->add_option("--polytope", val_polytope, "polytope JSON file")->required();
    validate->add_option("--mu", val_mu, "characteristic function JSON file");
    validate->add_option("--glue-spec", val_spec, "glue spec JSON file");

    // ---- build -----------------------------------------------------------
    auto* build = app.add_subcommand("build", "build a complex and report Betti data");
    std::string b_polytope, b_builtin, b_mu, b_glue, b_pq, b_v0, b_export, b_export_csv;
    bool b_moment = false;
    build->add_option("--polytope", b_polytope, "polytope JSON file");
    build->add_option("--builtin", b_builtin, "built-in corpus entry name");
    build->add_flag("--moment-angle", b_moment, "build the real moment-angle complex");
    build->add_option("--mu", b_mu, "characteristic function file (small cover)");
    build->add_option("--glue-back", b_glue, "lambda file; needs --mu (or builtin) and --v0");
    build->add_option("--v0", b_v0, "cut vertex, e.g. 3,4");
    build->add_option("--partial-quotient", b_pq, "subgroup file {r, generators}: build Z_P/H");
    build->add_option("--export", b_export, "write the complex as JSON");
    build->add_option("--export-csv", b_export_csv, "write the complex as CSV");

    // ---- verify ----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run theorem checks, emit reports");
    std::string v_check = "all", v_corpus, v_polytope, v_mu, v_v0, v_lambda, v_out, v_csv;
    int v_m = 2;
    std::uint64_t v_limit = 64, v_seed = 1, v_sample = 0;
    bool v_enumerate = false, v_no_timings = false;
    verify->add_option("check", v_check,
                       "hc|components|dj|caolu|maxequiv|monotone|doublecover|pq|all")
        ->required();
    verify->add_option("--corpus", v_corpus, "'builtin' or a corpus entry name");
    verify->add_option("--polytope", v_polytope, "polytope JSON file");
    verify->add_option("--mu", v_mu, "characteristic function JSON file");
    verify->add_option("--v0", v_v0, "cut vertex for file mode, e.g. 3,4");
    verify->add_flag("--enumerate", v_enumerate, "enumerate colorings up to --limit");
    verify->add_option("--lambda", v_lambda, "explicit lambda file (single coloring)");
    verify->add_option("--sample", v_sample, "sample N colorings (requires --seed)");
    verify->add_option("--m", v_m, "coloring width m")->default_val(2);
    verify->add_option("--limit", v_limit, "enumeration cap / sample size")->default_val(64);
    verify->add_option("--seed", v_seed, "sampling seed (recorded in reports)")->default_val(1);
    verify->add_option("--out", v_out, "write the JSON report here");
    verify->add_option("--csv", v_csv, "write the CSV summary here");
    verify->add_flag("--no-timings", v_no_timings, "omit runtimes for byte-stable reports");

    // ---- corpus ----------------------------------------------------------
    auto* corpus_cmd = app.add_subcommand("corpus", "list built-in polytopes");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        std::vector<std::string> warnings;

        if (validate->parsed()) {
            SimplePolytope poly = parse_polytope(load_json_file(val_polytope), common.strict,
                                                 &warnings);
            PolytopePtr p = make_polytope(poly);
            out << val_polytope << ": valid, n=" << p->n << " d=" << p->d << " k=" << p->k()
                << " vertices=" << p->vertices.size() << "\n";
            if (!val_mu.empty()) {
                Coloring mu = parse_coloring(load_json_file(val_mu), p, common.strict, &warnings);
                validate_characteristic(p, mu.labels);
                out << val_mu << ": valid characteristic function (r=" << mu.r << ")\n";
            }
            if (!val_spec.empty()) {
                GlueSpec s = parse_glue_spec(load_json_file(val_spec), p, common.strict,
                                             &warnings);
                out << val_spec << ": valid glue spec, k=" << s.k << " m=" << s.m
                    << " rank(lambda)=" << rank_info(s).rank << "\n";
            }
            print_warnings(warnings, err);
            return 0;
        }

        if (build->parsed()) {
            PolytopePtr p;
            std::optional<Coloring> mu;
            if (!b_builtin.empty()) {
                const CorpusEntry* e = find_entry(b_builtin);
                if (!e) throw ValidationError("unknown builtin '" + b_builtin + "'");
                p = e->polytope;
                mu = e->mu;
            } else if (!b_polytope.empty()) {
                p = make_polytope(parse_polytope(load_json_file(b_polytope), common.strict,
                                                 &warnings));
            } else {
                throw ValidationError("build: need --polytope or --builtin");
            }
            if (!b_mu.empty())
                mu = parse_coloring(load_json_file(b_mu), p, common.strict, &warnings);

            Coloring coloring;
            if (b_moment) {
                coloring = moment_angle_coloring(p);
            } else if (!b_pq.empty()) {
                Subspace h = parse_subgroup(load_json_file(b_pq), common.strict, &warnings);
                coloring = partial_quotient_coloring(moment_angle_coloring(p), h);
            } else if (!b_glue.empty()) {
                if (!mu) throw ValidationError("build --glue-back: needs --mu or --builtin");
                std::vector<int> v0 =
                    b_v0.empty() ? p->vertices.front() : parse_vertex_list(b_v0);
                GlueSpec spec = make_glue_spec(*mu, v0, parse_lambda_file(b_glue));
                coloring = glue_back_coloring(spec);
            } else if (mu) {
                coloring = validate_characteristic(p, mu->labels);
            } else {
                throw ValidationError(
                    "build: choose --moment-angle, --mu, --glue-back or --partial-quotient");
            }

            QuotientCellComplex cx = build_complex(coloring, common.threads);
            BettiReport b = betti(cx, common.threads);
            ComponentInfo info = components(cx);
            if (common.format == "json") {
                json j;
                j["schema"] = 1;
                j["polytope"] = cx.polytope->name;
                j["r"] = cx.r;
                j["cells_per_dim"] = detail::vec_json(b.cells_per_dim);
                j["betti"] = detail::vec_json(b.betti);
                j["hrk"] = b.hrk;
                j["euler"] = b.euler;
                j["components"] = info.count;
                j["non_manifold"] = cx.non_manifold;
                out << j.dump(2) << "\n";
            } else {
                print_build_table(out, cx, b, info.count);
            }
            if (!b_export.empty()) write_text_file(b_export, complex_to_json(cx).dump(2) + "\n");
            if (!b_export_csv.empty()) write_text_file(b_export_csv, complex_to_csv(cx));
            print_warnings(warnings, err);
            return 0;
        }

        if (verify->parsed()) {
            SuiteConfig cfg;
            if (v_check != "all") {
                const auto& names = all_check_names();
                if (std::find(names.begin(), names.end(), v_check) == names.end())
                    throw ValidationError("unknown check '" + v_check + "'");
                cfg.checks.insert(v_check);
            }
            int sources = (v_enumerate ? 1 : 0) + (!v_lambda.empty() ? 1 : 0) +
                          (v_sample > 0 ? 1 : 0);
            if (sources > 1)
                throw ValidationError("choose one of --enumerate, --lambda, --sample");
            cfg.m = v_m;
            cfg.limit = v_sample > 0 ? v_sample : v_limit;
            cfg.seed = v_seed;
            cfg.threads = common.threads;

            std::vector<CorpusEntry> entries;
            if (!v_polytope.empty()) {
                if (v_mu.empty()) throw ValidationError("verify with --polytope needs --mu");
                CorpusEntry e;
                e.polytope = make_polytope(parse_polytope(load_json_file(v_polytope),
                                                          common.strict, &warnings));
                Coloring mu = parse_coloring(load_json_file(v_mu), e.polytope, common.strict,
                                             &warnings);
                e.mu = validate_characteristic(e.polytope, mu.labels);
                e.name = e.polytope->name;
                e.v0 = v_v0.empty() ? e.polytope->vertices.front() : parse_vertex_list(v_v0);
                entries.push_back(std::move(e));
            } else if (v_corpus.empty() || v_corpus == "builtin") {
                entries = builtin_corpus();
            } else {
                const CorpusEntry* e = find_entry(v_corpus);
                if (!e) throw ValidationError("unknown corpus entry '" + v_corpus + "'");
                entries.push_back(*e);
            }
            if (!v_v0.empty() && v_polytope.empty())
                for (auto& e : entries) e.v0 = parse_vertex_list(v_v0);

            SuiteResult result;
            if (!v_lambda.empty()) {
                // single explicit coloring against the selected entries
                for (const CorpusEntry& e : entries) {
                    GlueSpec spec = make_glue_spec(e.mu, e.v0, parse_lambda_file(v_lambda));
                    if (cfg.wants("dj")) result.reports.push_back(check_dj_betti(e.mu, cfg.threads));
                    if (cfg.wants("caolu"))
                        result.reports.push_back(check_cao_lu(e.polytope, cfg.threads));
                    if (cfg.wants("hc"))
                        result.reports.push_back(check_halperin_carlsson(spec, cfg.threads));
                    if (cfg.wants("components"))
                        result.reports.push_back(check_component_formula(spec, cfg.threads));
                    if (cfg.wants("pq"))
                        result.reports.push_back(check_partial_quotient(spec, cfg.threads));
                    if (cfg.wants("monotone"))
                        result.reports.push_back(check_hrk_monotonicity(spec, cfg.threads));
                }
                result.tally();
            } else {
                result = run_suite(entries, cfg);
            }

            json config_echo;
            config_echo["command"] = "verify";
            config_echo["check"] = v_check;
            config_echo["corpus"] = v_corpus.empty() ? "builtin" : v_corpus;
            if (!v_polytope.empty()) config_echo["polytope_file"] = v_polytope;
            if (!v_lambda.empty()) config_echo["lambda_file"] = v_lambda;
            config_echo["m"] = cfg.m;
            config_echo["limit"] = cfg.limit;
            config_echo["seed"] = cfg.seed;
            json report = suite_to_json(result, config_echo, !v_no_timings);

            if (common.format == "json") {
                out << report.dump(2) << "\n";
            } else {
                for (const auto& r : result.reports) {
                    out << (r.applicable ? (r.pass ? "[PASS] " : "[FAIL] ") : "[N/A ] ")
                        << r.check;
                    if (r.inputs.contains("polytope"))
                        out << " " << r.inputs["polytope"].get<std::string>();
                    if (r.inputs.contains("lambda")) {
                        out << " lambda=";
                        const auto& lam = r.inputs["lambda"];
                        for (std::size_t i = 0; i < lam.size(); ++i)
                            out << (i ? "," : "") << lam[i].get<std::string>();
                    }
                    if (!r.applicable) out << "  (" << r.expected << ")";
                    out << "\n";
                }
                out << "summary: " << result.passed << " passed, " << result.failed
                    << " failed, " << result.not_applicable << " not applicable\n";
            }
            if (!v_out.empty()) write_text_file(v_out, report.dump(2) + "\n");
            if (!v_csv.empty()) write_text_file(v_csv, suite_to_csv(result));
            print_warnings(warnings, err);
            return result.all_passed() ? 0 : 2;
        }

        if (corpus_cmd->parsed()) {
            for (const CorpusEntry& e : builtin_corpus()) {
                out << e.name << ": n=" << e.polytope->n << " d=" << e.polytope->d
                    << " k=" << e.polytope->k() << " vertices=" << e.polytope->vertices.size();
                if (!e.note.empty()) out << "  (" << e.note << ")";
                out << "\n";
            }
            return 0;
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const WidthMismatch& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

}  // namespace glueback
