#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "glueback/cli.hpp"

using namespace glueback;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("glueback_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name, const std::string& contents) const {
        fs::path p = path / name;
        std::ofstream out(p);
        out << contents;
        return p.string();
    }
};

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

const char* kSquareJson = R"({"name":"square","n":2,"d":4,
  "vertices":[[1,2],[2,3],[3,4],[4,1]]})";
const char* kTorusMuJson = R"({"r":2,"labels":["10","01","10","01"]})";

}  // namespace

TEST_CASE("polytope json round trip and diagnostics") {
    json j = json::parse(kSquareJson);
    SimplePolytope p = parse_polytope(j);
    CHECK(p.d == 4);
    CHECK(parse_polytope(polytope_to_json(p)).vertices == p.vertices);

    json bad = json::parse(R"({"n":2,"d":4,"vertices":[[1,2],[2,3],[3,4]]})");
    CHECK_THROWS_WITH(parse_polytope(bad), Catch::Matchers::ContainsSubstring("ridge"));

    json missing = json::parse(R"({"n":2,"vertices":[[1,2]]})");
    CHECK_THROWS_WITH(parse_polytope(missing), Catch::Matchers::ContainsSubstring("'d'"));

    json unknown = json::parse(R"({"name":"t","n":2,"d":3,"vertices":[[1,2],[2,3],[3,1]],
                                  "extra":1})");
    std::vector<std::string> warnings;
    CHECK_NOTHROW(parse_polytope(unknown, false, &warnings));
    REQUIRE(warnings.size() == 1);
    CHECK_THROWS_WITH(parse_polytope(unknown, true),
                      Catch::Matchers::ContainsSubstring("unknown field 'extra'"));
}

TEST_CASE("coloring and glue spec json") {
    PolytopePtr p = make_polytope(parse_polytope(json::parse(kSquareJson)));
    Coloring mu = parse_coloring(json::parse(kTorusMuJson), p);
    CHECK(mu.labels[0] == BitVector::parse("10"));
    CHECK(parse_coloring(coloring_to_json(mu), p).labels == mu.labels);

    CHECK_THROWS_WITH(parse_coloring(json::parse(R"({"r":2,"labels":["101","01","10","01"]})"), p),
                      Catch::Matchers::ContainsSubstring("r=2"));

    GlueSpec s = parse_glue_spec(
        json::parse(R"({"mu":{"r":2,"labels":["10","01","10","01"]},
                        "v0":[3,4],"lambda":["10","01"]})"),
        p);
    CHECK(s.k == 2);
    CHECK(s.cut_facets == std::vector<int>{1, 2});
}

TEST_CASE("complex export formats") {
    PolytopePtr tri = make_polytope(polygon(3));
    Coloring mu = validate_characteristic(
        tri, {BitVector::parse("10"), BitVector::parse("01"), BitVector::parse("11")});
    QuotientCellComplex cx = build_complex(mu);
    json j = complex_to_json(cx);
    CHECK(j["schema"] == 1);
    CHECK(j["cells"].size() == 13);          // 3 + 6 + 4
    CHECK(j["boundary"].size() == 24);       // 6*2 + 4*3
    CHECK(j["cells"][0]["dim"] == 0);
    CHECK(j["cells"][0]["sigma"] == json::array({1, 2}));

    std::string csv = complex_to_csv(cx);
    CHECK(csv.rfind("kind,dim,sigma,coset_rep,row,col\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 13 + 24);
}

TEST_CASE("report serialization schema") {
    const CorpusEntry* sq = find_entry("square");
    REQUIRE(sq);
    GlueSpec spec = make_glue_spec(sq->mu, {3, 4},
                                   {BitVector::parse("10"), BitVector::parse("01")});
    VerificationReport r = check_halperin_carlsson(spec);
    json with = report_to_json(r, true);
    CHECK(with.contains("runtime_ms"));
    json without = report_to_json(r, false);
    CHECK_FALSE(without.contains("runtime_ms"));
    CHECK(without["check"] == "hc");
    CHECK(without["pass"] == true);
    CHECK(without["inputs"]["polytope"] == "square");

    SuiteResult result;
    result.reports.push_back(r);
    result.tally();
    json suite = suite_to_json(result, json{{"command", "verify"}}, false);
    CHECK(suite["schema"] == 1);
    CHECK(suite["summary"]["passed"] == 1);
    std::string csv = suite_to_csv(result);
    CHECK(csv.find("hc,square,2,10 01,yes,pass") != std::string::npos);
}

TEST_CASE("cli validate") {
    TempDir tmp;
    std::string poly = tmp.file("square.json", kSquareJson);
    std::string mu = tmp.file("torus.json", kTorusMuJson);

    std::string out;
    CHECK(cli({"validate", "--polytope", poly, "--mu", mu}, &out) == 0);
    CHECK(out.find("valid, n=2 d=4 k=2") != std::string::npos);
    CHECK(out.find("valid characteristic function") != std::string::npos);

    std::string err;
    std::string bad_mu = tmp.file("bad_mu.json", R"({"r":2,"labels":["10","10","01","01"]})");
    CHECK(cli({"validate", "--polytope", poly, "--mu", bad_mu}, &out, &err) == 1);
    CHECK(err.find("vertex {1,2}") != std::string::npos);

    std::string malformed = tmp.file("broken.json", "{not json");
    CHECK(cli({"validate", "--polytope", malformed}, &out, &err) == 1);
    CHECK(err.find("JSON parse error") != std::string::npos);

    std::string extra = tmp.file("extra.json",
                                 R"({"name":"t","n":2,"d":3,"vertices":[[1,2],[2,3],[3,1]],
                                     "comment":"hi"})");
    CHECK(cli({"validate", "--polytope", extra}, &out, &err) == 0);
    CHECK(err.find("unknown field 'comment'") != std::string::npos);
    CHECK(cli({"--strict", "validate", "--polytope", extra}, &out, &err) == 1);
}

TEST_CASE("cli build") {
    TempDir tmp;
    std::string out, err;

    CHECK(cli({"build", "--builtin", "polygon5", "--moment-angle"}, &out) == 0);
    CHECK(out.find("cells per dim: (40,80,32)") != std::string::npos);
    CHECK(out.find("hrk=12") != std::string::npos);

    std::string poly = tmp.file("square.json", kSquareJson);
    std::string mu = tmp.file("torus.json", kTorusMuJson);
    CHECK(cli({"build", "--polytope", poly, "--mu", mu}, &out) == 0);
    CHECK(out.find("betti:         (1,2,1)") != std::string::npos);

    std::string lam = tmp.file("lambda.json", R"({"lambda":["10","10"]})");
    CHECK(cli({"build", "--polytope", poly, "--mu", mu, "--glue-back", lam, "--v0", "3,4",
               "--format", "json"},
              &out) == 0);
    json j = json::parse(out);
    CHECK(j["components"] == 2);
    CHECK(j["hrk"] == 8);

    std::string exp = (tmp.path / "complex.json").string();
    CHECK(cli({"build", "--builtin", "simplex2", "--moment-angle", "--export", exp}, &out) == 0);
    json stored = load_json_file(exp);
    CHECK(stored["cells"].size() == 26);  // 6 + 12 + 8

    std::string hfile = tmp.file("h.json", R"({"r":4,"generators":["1010","0101"]})");
    CHECK(cli({"build", "--polytope", poly, "--partial-quotient", hfile}, &out) == 0);
    CHECK(out.find("betti:         (1,2,1)") != std::string::npos);

    CHECK(cli({"build", "--builtin", "nope", "--moment-angle"}, &out, &err) == 1);
    // a builtin carries its characteristic function: default is the small cover
    CHECK(cli({"build", "--builtin", "square"}, &out) == 0);
    CHECK(out.find("betti:         (1,2,1)") != std::string::npos);
    CHECK(cli({"build", "--polytope", poly}, &out, &err) == 1);
}

TEST_CASE("cli verify") {
    std::string out, err;
    CHECK(cli({"verify", "hc", "--corpus", "square", "--m", "2", "--enumerate"}, &out) == 0);
    CHECK(out.find("summary: ") != std::string::npos);
    CHECK(out.find("failed") != std::string::npos);

    // all 16 colorings plus the summary line
    int pass_lines = 0;
    std::istringstream lines(out);
    std::string line;
    while (std::getline(lines, line))
        if (line.rfind("[PASS]", 0) == 0) ++pass_lines;
    CHECK(pass_lines == 16);

    // not-applicable guard path: pq on a disconnected coloring
    TempDir tmp;
    std::string lam = tmp.file("lambda.json", R"(["0","0"])");
    CHECK(cli({"verify", "pq", "--corpus", "square", "--lambda", lam, "--m", "1"}, &out) == 0);
    CHECK(out.find("[N/A ]") != std::string::npos);
    CHECK(out.find("disconnected") != std::string::npos);

    CHECK(cli({"verify", "bogus", "--corpus", "square"}, &out, &err) == 1);
    CHECK(cli({"verify", "hc", "--corpus", "square", "--enumerate", "--lambda", lam}, &out,
              &err) == 1);

    // file mode, exhaustive m = 3: 64 colorings, 64 passes
    std::string poly = tmp.file("square.json", kSquareJson);
    std::string mu = tmp.file("torus.json", kTorusMuJson);
    CHECK(cli({"verify", "hc", "--polytope", poly, "--mu", mu, "--enumerate", "--m", "3",
               "--limit", "64"},
              &out) == 0);
    CHECK(out.find("summary: 64 passed, 0 failed") != std::string::npos);

    // malformed vertex lists are validation failures, not crashes
    CHECK(cli({"verify", "hc", "--corpus", "square", "--v0", "3,x"}, &out, &err) == 1);
    CHECK(err.find("bad facet index") != std::string::npos);

    // sampling records source, limit and seed in every report
    CHECK(cli({"--format", "json", "verify", "hc", "--corpus", "dodecahedron", "--m", "2",
               "--sample", "5", "--seed", "99", "--no-timings"},
              &out) == 0);
    json rep = json::parse(out);
    CHECK(rep["summary"]["failed"] == 0);
    bool saw_sample = false;
    for (const auto& check : rep["checks"]) {
        if (check["check"] != "hc") continue;
        saw_sample = true;
        CHECK(check["inputs"]["enumeration"]["source"] == "sample");
        CHECK(check["inputs"]["enumeration"]["limit"] == 5);
        CHECK(check["inputs"]["enumeration"]["seed"] == 99);
    }
    CHECK(saw_sample);
}

TEST_CASE("cli verify json reports are deterministic without timings") {
    std::string a, b;
    std::vector<std::string> args{"--format", "json",       "verify",  "hc",
                                  "--corpus", "simplex2",   "--m",     "2",
                                  "--enumer", "--no-timings"};
    // spell the flag out fully; CLI11 would accept the prefix but be explicit
    args[8] = "--enumerate";
    CHECK(cli(args, &a) == 0);
    CHECK(cli(args, &b) == 0);
    CHECK(a == b);

    std::vector<std::string> t1 = args, t8 = args;
    t1.insert(t1.begin(), {"--threads", "1"});
    t8.insert(t8.begin(), {"--threads", "8"});
    std::string r1, r8;
    CHECK(cli(t1, &r1) == 0);
    CHECK(cli(t8, &r8) == 0);
    CHECK(r1 == r8);
    CHECK(r1 == a);

    json parsed = json::parse(a);
    CHECK(parsed["schema"] == 1);
    CHECK(parsed["summary"]["failed"] == 0);
    for (const auto& check : parsed["checks"]) CHECK_FALSE(check.contains("runtime_ms"));
}

TEST_CASE("GLUEBACK_THREADS env fallback") {
    ::setenv("GLUEBACK_THREADS", "3", 1);
    CHECK(cli_detail::default_threads() == 3);
    ::setenv("GLUEBACK_THREADS", "junk", 1);
    CHECK(cli_detail::default_threads() >= 1);  // falls back to hardware
    ::unsetenv("GLUEBACK_THREADS");
}

TEST_CASE("cli corpus lists the stable names") {
    std::string out;
    CHECK(cli({"corpus"}, &out) == 0);
    for (const char* name : {"simplex2", "simplex3", "simplex4", "cube2", "cube3", "cube4",
                             "polygon3", "polygon8", "square", "square_klein",
                             "pentagonal_prism", "dodecahedron"})
        CHECK(out.find(name) != std::string::npos);
    CHECK(out.find("dodecahedron: n=3 d=12 k=9 vertices=20") != std::string::npos);
}
