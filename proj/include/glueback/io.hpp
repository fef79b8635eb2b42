// io.hpp -- file formats. Polytopes, colorings and glue specs are read
// from JSON; complexes export to JSON or CSV with the documented stable
// cell ordering; suite reports serialize one object per check plus a
// summary, schema version 1.
//
// Parsers collect warnings for unknown fields; strict mode turns those
// warnings into errors.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "complex.hpp"
#include "suite.hpp"
#include "verify.hpp"

namespace glueback {

namespace io_detail {

inline void note_unknown_fields(const json& j, const std::vector<std::string>& known,
                                const std::string& what, bool strict,
                                std::vector<std::string>* warnings) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            std::string msg = what + ": unknown field '" + it.key() + "'";
            if (strict) throw ValidationError(msg);
            if (warnings) warnings->push_back(msg);
        }
    }
}

template <class T>
T require(const json& j, const std::string& key, const std::string& what) {
    if (!j.contains(key)) throw ValidationError(what + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(what + ": field '" + key + "' has the wrong type (" + e.what() + ")");
    }
}

}  // namespace io_detail

// {"name": str, "n": int, "d": int, "facet_names": [str]?, "vertices": [[int,...],...]}
inline SimplePolytope parse_polytope(const json& j, bool strict = false,
                                     std::vector<std::string>* warnings = nullptr) {
    if (!j.is_object()) throw ValidationError("polytope document must be a JSON object");
    io_detail::note_unknown_fields(j, {"name", "n", "d", "facet_names", "vertices"}, "polytope",
                                   strict, warnings);
    SimplePolytope p;
    p.name = j.contains("name") ? io_detail::require<std::string>(j, "name", "polytope")
                                : std::string("unnamed");
    p.n = io_detail::require<int>(j, "n", "polytope");
    p.d = io_detail::require<int>(j, "d", "polytope");
    if (j.contains("facet_names"))
        p.facet_names = io_detail::require<std::vector<std::string>>(j, "facet_names", "polytope");
    p.vertices = io_detail::require<std::vector<std::vector<int>>>(j, "vertices", "polytope");
    std::string context = p.name;
    return validate_polytope(std::move(p), context);
}

inline json polytope_to_json(const SimplePolytope& p) {
    json j;
    j["name"] = p.name;
    j["n"] = p.n;
    j["d"] = p.d;
    j["facet_names"] = p.facet_names;
    j["vertices"] = p.vertices;
    return j;
}

// {"r": int, "labels": ["0101", ...]}, leftmost character = coordinate 1.
inline Coloring parse_coloring(const json& j, PolytopePtr p, bool strict = false,
                               std::vector<std::string>* warnings = nullptr) {
    if (!j.is_object()) throw ValidationError("coloring document must be a JSON object");
    io_detail::note_unknown_fields(j, {"r", "labels"}, "coloring", strict, warnings);
    int r = io_detail::require<int>(j, "r", "coloring");
    auto strings = io_detail::require<std::vector<std::string>>(j, "labels", "coloring");
    std::vector<BitVector> labels;
    labels.reserve(strings.size());
    for (const std::string& s : strings) {
        if (static_cast<int>(s.size()) != r)
            throw ValidationError("coloring: label '" + s + "' does not have r=" +
                                  std::to_string(r) + " bits");
        labels.push_back(BitVector::parse(s));
    }
    return make_coloring(std::move(p), r, std::move(labels));
}

inline json coloring_to_json(const Coloring& c) {
    json j;
    j["r"] = c.r;
    json labels = json::array();
    for (const BitVector& l : c.labels) labels.push_back(l.str());
    j["labels"] = labels;
    return j;
}

// {"mu": coloring, "v0": [int,...], "lambda": ["01", ...]}
inline GlueSpec parse_glue_spec(const json& j, PolytopePtr p, bool strict = false,
                                std::vector<std::string>* warnings = nullptr) {
    if (!j.is_object()) throw ValidationError("glue spec document must be a JSON object");
    io_detail::note_unknown_fields(j, {"mu", "v0", "lambda"}, "glue spec", strict, warnings);
    if (!j.contains("mu")) throw ValidationError("glue spec: missing field 'mu'");
    Coloring mu = parse_coloring(j.at("mu"), p, strict, warnings);
    auto v0 = io_detail::require<std::vector<int>>(j, "v0", "glue spec");
    auto strings = io_detail::require<std::vector<std::string>>(j, "lambda", "glue spec");
    std::vector<BitVector> lambda;
    for (const std::string& s : strings) lambda.push_back(BitVector::parse(s));
    return make_glue_spec(std::move(mu), std::move(v0), std::move(lambda));
}

// {"r": int, "generators": ["0101", ...]} -> subgroup of (Z_2)^r.
inline Subspace parse_subgroup(const json& j, bool strict = false,
                               std::vector<std::string>* warnings = nullptr) {
    if (!j.is_object()) throw ValidationError("subgroup document must be a JSON object");
    io_detail::note_unknown_fields(j, {"r", "generators"}, "subgroup", strict, warnings);
    int r = io_detail::require<int>(j, "r", "subgroup");
    auto strings = io_detail::require<std::vector<std::string>>(j, "generators", "subgroup");
    std::vector<BitVector> gens;
    for (const std::string& s : strings) {
        if (static_cast<int>(s.size()) != r)
            throw ValidationError("subgroup: generator '" + s + "' does not have r bits");
        gens.push_back(BitVector::parse(s));
    }
    return Subspace::span_of(r, gens);
}

namespace io_detail {

template <class F>
void for_each_boundary_triple(const QuotientCellComplex& cx, F&& fn) {
    for (int q = 1; q <= cx.dim; ++q) {
        const Gf2Matrix& b = cx.boundary[static_cast<std::size_t>(q)];
        for (std::size_t row = 0; row < b.rows(); ++row) {
            const std::uint64_t* w = b.row_words(row);
            for (std::size_t wk = 0; wk < b.words_per_row(); ++wk) {
                std::uint64_t word = w[wk];
                while (word) {
                    int bit = std::countr_zero(word);
                    word &= word - 1;
                    fn(q, row, wk * 64 + static_cast<std::size_t>(bit));
                }
            }
        }
    }
}

}  // namespace io_detail

// Cells appear in ascending dimension, within a dimension in enumeration
// order (face-lexicographic, then coset index): (dim, sigma,
// coset_rep_bits). Boundary entries are triples (q, row, col) with row a
// q-cell index and col a (q-1)-cell index.
inline json complex_to_json(const QuotientCellComplex& cx) {
    json j;
    j["schema"] = 1;
    j["polytope"] = cx.polytope->name;
    j["r"] = cx.r;
    j["dim"] = cx.dim;
    json cells = json::array();
    for (int q = 0; q <= cx.dim; ++q) {
        for (const Cell& cell : cx.cells[static_cast<std::size_t>(q)]) {
            json item;
            item["dim"] = q;
            item["sigma"] = cx.faces[cell.face].sigma;
            item["coset_rep"] = cell.rep.str();
            cells.push_back(item);
        }
    }
    j["cells"] = cells;
    json triples = json::array();
    io_detail::for_each_boundary_triple(cx, [&](int q, std::size_t row, std::size_t col) {
        triples.push_back(json::array({q, row, col}));
    });
    j["boundary"] = triples;
    return j;
}

inline std::string complex_to_csv(const QuotientCellComplex& cx) {
    std::ostringstream out;
    out << "kind,dim,sigma,coset_rep,row,col\n";
    for (int q = 0; q <= cx.dim; ++q) {
        for (const Cell& cell : cx.cells[static_cast<std::size_t>(q)]) {
            out << "cell," << q << ",";
            const auto& sigma = cx.faces[cell.face].sigma;
            for (std::size_t i = 0; i < sigma.size(); ++i) out << (i ? " " : "") << sigma[i];
            out << "," << cell.rep.str() << ",,\n";
        }
    }
    io_detail::for_each_boundary_triple(cx, [&](int q, std::size_t row, std::size_t col) {
        out << "boundary," << q << ",,," << row << "," << col << "\n";
    });
    return out.str();
}

inline json report_to_json(const VerificationReport& r, bool with_timings = true) {
    json j;
    j["check"] = r.check;
    j["inputs"] = r.inputs;
    j["computed"] = r.computed;
    j["expected"] = r.expected;
    j["applicable"] = r.applicable;
    j["pass"] = r.pass;
    if (with_timings) j["runtime_ms"] = r.runtime_ms;
    return j;
}

inline json suite_to_json(const SuiteResult& result, const json& run_config,
                          bool with_timings = true) {
    json j;
    j["schema"] = 1;
    j["config"] = run_config;
    json checks = json::array();
    for (const auto& r : result.reports) checks.push_back(report_to_json(r, with_timings));
    j["checks"] = checks;
    json summary;
    summary["total"] = result.reports.size();
    summary["passed"] = result.passed;
    summary["failed"] = result.failed;
    summary["not_applicable"] = result.not_applicable;
    j["summary"] = summary;
    return j;
}

inline std::string suite_to_csv(const SuiteResult& result) {
    std::ostringstream out;
    out << "check,polytope,m,lambda,applicable,pass\n";
    for (const auto& r : result.reports) {
        out << r.check << ",";
        out << (r.inputs.contains("polytope") ? r.inputs["polytope"].get<std::string>() : "")
            << ",";
        if (r.inputs.contains("m"))
            out << r.inputs["m"].get<int>();
        out << ",";
        if (r.inputs.contains("lambda")) {
            const auto& lam = r.inputs["lambda"];
            for (std::size_t i = 0; i < lam.size(); ++i)
                out << (i ? " " : "") << lam[i].get<std::string>();
        }
        out << "," << (r.applicable ? "yes" : "no") << "," << (r.pass ? "pass" : "FAIL") << "\n";
    }
    return out.str();
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("JSON parse error in " + path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
}

}  // namespace glueback
