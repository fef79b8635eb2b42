// suite.hpp -- run selected checks over corpus entries and enumerated or
// sampled colorings. Per-coloring checks run in parallel across
// (entry, coloring) pairs; report order is fixed by construction, so the
// output is independent of the thread count.

#pragma once

#include <functional>
#include <set>

#include "corpus.hpp"
#include "verify.hpp"

namespace glueback {

inline const std::vector<std::string>& all_check_names() {
    static const std::vector<std::string> names{"hc",      "components", "dj",
                                                "caolu",   "maxequiv",   "monotone",
                                                "doublecover", "pq"};
    return names;
}

struct SuiteConfig {
    std::set<std::string> checks;  // empty = all
    int m = 2;
    std::uint64_t limit = 64;
    std::uint64_t seed = 1;
    unsigned threads = 1;

    bool wants(const std::string& name) const {
        return checks.empty() || checks.count(name) > 0;
    }
};

struct SuiteResult {
    std::vector<VerificationReport> reports;
    std::size_t passed = 0, failed = 0, not_applicable = 0;

    bool all_passed() const { return failed == 0; }

    void tally() {
        passed = failed = not_applicable = 0;
        for (const auto& r : reports) {
            if (!r.applicable)
                ++not_applicable;
            else if (r.pass)
                ++passed;
            else
                ++failed;
        }
    }
};

inline SuiteResult run_suite(const std::vector<CorpusEntry>& entries, const SuiteConfig& cfg) {
    SuiteResult result;

    // Per-entry checks first; these can be individually heavy, so they get
    // the full thread budget.
    for (const CorpusEntry& e : entries) {
        if (cfg.wants("dj")) result.reports.push_back(check_dj_betti(e.mu, cfg.threads));
        if (cfg.wants("caolu")) result.reports.push_back(check_cao_lu(e.polytope, cfg.threads));
        if (cfg.wants("pq"))
            result.reports.push_back(check_h_mu_freeness(e.mu, e.v0, cfg.threads));
    }

    // Per-coloring checks, parallel across (entry, coloring) pairs.
    std::vector<std::function<VerificationReport()>> tasks;
    for (const CorpusEntry& e : entries) {
        bool sampled = false;
        std::vector<GlueSpec> specs = enumerate_colorings(e.mu, e.v0, cfg.m, cfg.limit, cfg.seed,
                                                          &sampled);
        json enumeration;
        enumeration["source"] = sampled ? "sample" : "exhaustive";
        enumeration["limit"] = cfg.limit;
        if (sampled) enumeration["seed"] = cfg.seed;

        auto tag = [enumeration](VerificationReport r) {
            r.inputs["enumeration"] = enumeration;
            return r;
        };

        for (std::size_t i = 0; i < specs.size(); ++i) {
            const GlueSpec spec = specs[i];
            if (cfg.wants("hc"))
                tasks.push_back([spec, tag] { return tag(check_halperin_carlsson(spec)); });
            if (cfg.wants("components"))
                tasks.push_back([spec, tag] { return tag(check_component_formula(spec)); });
            if (cfg.wants("pq"))
                tasks.push_back([spec, tag] { return tag(check_partial_quotient(spec)); });
            if (cfg.wants("monotone") && (spec.m == spec.k || i == 0))
                tasks.push_back([spec, tag] { return tag(check_hrk_monotonicity(spec)); });
            if (cfg.wants("doublecover")) {
                if (spec.m == spec.k) {
                    std::size_t chain_len = complete_to_max(spec).size();
                    for (std::size_t j = 1; j < chain_len; ++j)
                        tasks.push_back(
                            [spec, tag, j] { return tag(check_double_cover_bound(spec, j)); });
                } else if (i == 0) {
                    tasks.push_back([spec, tag] { return tag(check_double_cover_bound(spec, 1)); });
                }
            }
        }
        if (cfg.wants("maxequiv")) {
            std::vector<GlueSpec> maximal;
            for (const GlueSpec& spec : specs)
                if (rank_info(spec).rank == spec.k) maximal.push_back(spec);
            for (std::size_t i = 0; i + 1 < maximal.size(); ++i) {
                GlueSpec a = maximal[i], b = maximal[i + 1];
                tasks.push_back(
                    [a, b, tag] { return tag(check_max_independent_equivalence(a, b)); });
            }
        }
    }

    std::vector<VerificationReport> coloring_reports(tasks.size());
    parallel_for(tasks.size(), cfg.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) coloring_reports[i] = tasks[i]();
    });
    for (auto& r : coloring_reports) result.reports.push_back(std::move(r));

    result.tally();
    return result;
}

}  // namespace glueback
