#ifndef DTS_SUITE_HPP
#define DTS_SUITE_HPP

// The acceptance checks, runnable from the CLI (`dts suite`) and from the
// acceptance test binary. Every catalogued claim is recomputed here; none
// of the recorded numbers is taken on trust.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dts/catalog.hpp"
#include "dts/constructions.hpp"
#include "dts/enumeration.hpp"
#include "dts/hillclimb.hpp"
#include "dts/prover.hpp"
#include "dts/search.hpp"
#include "dts/text_format.hpp"

namespace dts {

struct CriterionResult {
    std::string id;     // "AC1" ...
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct SuiteReport {
    std::vector<CriterionResult> results;
    double seconds = 0;

    bool all_passed() const {
        return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
    }

    std::string text() const {
        std::ostringstream out;
        for (const auto& r : results) {
            out << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.title << " (" << std::fixed
                << std::setprecision(2) << r.seconds << " s): " << r.detail << "\n";
        }
        out << (all_passed() ? "all criteria pass" : "some criteria FAIL") << " (" << std::fixed
            << std::setprecision(1) << seconds << " s)\n";
        return out.str();
    }
};

struct SuiteOptions {
    // Catalog lookup; tests substitute a tampered catalog here.
    std::function<CatalogEntry(std::string_view)> lookup = [](std::string_view n) { return builtin(n); };
    unsigned workers = 1;
    std::vector<std::string> only;  // criterion ids to run; empty = all
    std::function<void(const CriterionResult&)> on_result;
};

namespace suite_detail {

inline const std::vector<std::string>& full_design_names() {
    static const std::vector<std::string> names = {"DTS3",     "D4.1",     "D4.2",      "D4.3",      "DTS4",
                                                   "DTS6",     "D7.4.926", "D7.4.958",  "D7.4.1015", "D7.4.1016",
                                                   "EX-DTS9",  "EX-DTS10", "EX-DTS12",  "EX-DTS13",  "EX-DTS16",
                                                   "EX-DTS18"};
    return names;
}

inline const std::vector<std::string>& bad_seven_names() {
    static const std::vector<std::string> names = {"D7.4.926", "D7.4.958", "D7.4.1015", "D7.4.1016"};
    return names;
}

struct Check {
    bool ok = true;
    std::ostringstream notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) notes << "; ";
            ok = false;
            notes << what;
        }
    }
};

inline const KnownFact* find_fact(const CatalogEntry& e, FactKind kind, std::size_t window) {
    for (const auto& f : e.known_facts)
        if (f.kind == kind && f.window == window) return &f;
    return nullptr;
}

inline std::vector<Point> random_permutation(std::size_t n, ClimbRng& rng) {
    std::vector<Point> p(n);
    std::iota(p.begin(), p.end(), Point{0});
    for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
    return p;
}

// Naive directing filter: every one of the 6^b ordering choices, kept when
// the edges form an exact cover.
inline std::vector<TripleList> naive_directings(const TwofoldTripleSystem& tts) {
    std::vector<TripleList> out;
    const std::size_t b = tts.blocks.size();
    std::vector<std::array<Triple, 6>> options;
    for (const auto& blk : tts.blocks) options.push_back(block_orderings(blk));
    std::vector<std::size_t> choice(b, 0);
    while (true) {
        TripleList d(b);
        for (std::size_t i = 0; i < b; ++i) d[i] = options[i][choice[i]];
        if (validate_dts(tts.v, d).valid) out.push_back(std::move(d));
        std::size_t i = b;
        while (i > 0 && ++choice[i - 1] == 6) choice[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

inline TwofoldTripleSystem tts3() { return {3, {Block3{0, 1, 2}, Block3{0, 1, 2}}}; }

inline TwofoldTripleSystem tts4() {
    return {4, {Block3{0, 1, 2}, Block3{0, 1, 3}, Block3{0, 2, 3}, Block3{1, 2, 3}}};
}

// ---------------------------------------------------------------------------

inline std::string ac1(const SuiteOptions& o, Check& c) {
    std::size_t n = 0;
    for (const auto& name : full_design_names()) {
        CatalogEntry e = o.lookup(name);
        ValidationReport r = validate_dts(e.v, e.triples);
        c.require(r.valid, name + ": " + r.summary());
        c.require(e.triples.size() == expected_triple_count(e.v), name + ": wrong triple count");
        ++n;
    }
    return std::to_string(n) + " designs validated";
}

inline std::string ac2(const SuiteOptions& o, Check& c) {
    std::ostringstream out;
    const std::pair<const char*, std::size_t> cases[] = {{"D4.1", 4},     {"D4.2", 4},     {"D4.3", 4},
                                                         {"D7.4.926", 6}, {"D7.4.958", 6}, {"D7.4.1015", 6},
                                                         {"D7.4.1016", 6}};
    for (auto [name, window] : cases) {
        CatalogEntry e = o.lookup(name);
        const KnownFact* fact = find_fact(e, FactKind::count_l_good, window);
        c.require(fact != nullptr, std::string(name) + ": no recorded count");
        std::uint64_t got = count_l_good(e.v, e.triples, window, {}, {o.workers, false});
        if (fact) c.require(got == fact->value, std::string(name) + ": counted " + std::to_string(got) +
                                                    ", expected " + std::to_string(fact->value));
        out << name << "=" << got << " ";
    }
    return out.str();
}

inline std::string ac3(const SuiteOptions& o, Check& c) {
    std::ostringstream out;
    std::vector<std::string> names = {"GADGET12"};
    names.insert(names.end(), bad_seven_names().begin(), bad_seven_names().end());
    for (const auto& name : names) {
        CatalogEntry e = o.lookup(name);
        ProverVerdict verdict = decide_v_good(e.v, e.triples, SearchBudget::nodes(1'000'000));
        c.require(verdict.kind == VerdictKind::unsequenceable, name + ": not refuted");
        if (verdict.proof) {
            c.require(check_proof(e.v, e.triples, *verdict.proof), name + ": proof rejected by checker");
            if (name == "GADGET12")
                c.require(verdict.proof->branch_count() == 1,
                          "GADGET12: " + std::to_string(verdict.proof->branch_count()) + " branch nodes");
            out << name << " nodes=" << verdict.nodes << " branches=" << verdict.proof->branch_count() << " ";
        }
    }
    return out.str();
}

inline bool prover_agrees(const DirectedTripleSystem& d, std::string& why) {
    ProverVerdict verdict = decide_v_good(d, SearchBudget::nodes(10'000'000));
    SearchOutcome search = find_l_good(d, d.order());
    if (verdict.kind == VerdictKind::unknown || search.status == SearchStatus::budget_exhausted) {
        why = "undecided";
        return false;
    }
    bool prover_good = verdict.kind == VerdictKind::sequenceable;
    bool search_good = search.status == SearchStatus::found;
    if (prover_good && !is_l_good(d, *verdict.witness, d.order())) {
        why = "prover witness is not good";
        return false;
    }
    if (prover_good != search_good) {
        why = prover_good ? "prover says sequenceable, search says not" : "prover refutes, search finds one";
        return false;
    }
    return true;
}

inline std::string ac4(const SuiteOptions& o, Check& c) {
    std::size_t catalog_checked = 0, climbed = 0, bad_climbed = 0;
    for (const auto& name : full_design_names()) {
        CatalogEntry e = o.lookup(name);
        if (e.v > 7) continue;
        std::string why;
        c.require(prover_agrees(e.design(), why), name + ": " + why);
        ++catalog_checked;
    }
    std::uint64_t seed = 1;
    while (climbed < 200 && seed <= 1000) {
        ClimbConfig cfg;
        cfg.rng_seed = seed++;
        ClimbResult r = hill_climb(7, {}, cfg);
        if (!r.success) continue;
        std::string why;
        c.require(prover_agrees(*r.design, why), "climbed seed " + std::to_string(cfg.rng_seed) + ": " + why);
        if (decide_v_good(*r.design).kind == VerdictKind::unsequenceable) ++bad_climbed;
        ++climbed;
    }
    c.require(climbed == 200, "only " + std::to_string(climbed) + " climbed designs");
    return std::to_string(catalog_checked) + " catalog + " + std::to_string(climbed) + " climbed DTS(7) agree (" +
           std::to_string(bad_climbed) + " without a 7-good sequencing)";
}

inline std::string ac5(const SuiteOptions&, Check& c) {
    std::size_t n = 0;
    for (std::size_t v = 3; v <= 200; ++v) {
        if (!admissible_order(v)) continue;
        SequencedDesign s = build_sequenceable(v);
        c.require(validate_dts(v, s.design.triples()).valid, "v=" + std::to_string(v) + ": invalid design");
        c.require(is_l_good(s.design, s.sequencing, v), "v=" + std::to_string(v) + ": sequencing not good");
        ++n;
    }
    return std::to_string(n) + " orders in [3,200]";
}

inline std::string ac6(const SuiteOptions&, Check& c) {
    std::size_t n = 0, proved = 0;
    for (std::size_t v = 7; v <= 100; ++v) {
        if (!admissible_order(v)) continue;
        CertifiedDesign d = build_unsequenceable(v);
        c.require(validate_dts(v, d.design.triples()).valid, "v=" + std::to_string(v) + ": invalid design");
        c.require(verify_embedding(d.design, d.certificate), "v=" + std::to_string(v) + ": certificate rejected");
        if (v <= 13) {
            ProverVerdict verdict = decide_v_good(d.design, SearchBudget::nodes(1'000'000));
            c.require(verdict.kind == VerdictKind::unsequenceable, "v=" + std::to_string(v) + ": prover did not refute");
            if (verdict.proof)
                c.require(check_proof(v, d.design.triples(), *verdict.proof), "v=" + std::to_string(v) + ": bad proof");
            ++proved;
        }
        ++n;
    }
    return std::to_string(n) + " orders in [7,100], " + std::to_string(proved) + " refuted by the prover";
}

inline std::string ac7(const SuiteOptions& o, Check& c) {
    CatalogEntry seed = o.lookup("D7.4.926");
    CensusOptions opts;
    opts.workers = o.workers;
    CensusReport r = classify_directings(underlying_tts(seed.design()), opts);
    c.require(!r.partial, "census incomplete");
    c.require(r.nonisomorphic == 1016, "nonisomorphic = " + std::to_string(r.nonisomorphic));
    c.require(r.with_v_good == 1012, "with 7-good = " + std::to_string(r.with_v_good));
    std::set<std::string> expected, got;
    for (const auto& name : bad_seven_names()) expected.insert(canonical_form(o.lookup(name).design()));
    for (std::size_t i : r.exceptional) {
        got.insert(r.classes[i].canonical);
        c.require(r.classes[i].max_good_l == 6 && r.classes[i].max_certified,
                  "exceptional class with max window " + std::to_string(r.classes[i].max_good_l));
    }
    c.require(got == expected, "exceptional classes differ from the catalogued bad DTS(7)");
    std::uint64_t orbit_total = 0;
    for (const auto& cls : r.classes) orbit_total += r.tts_automorphisms / cls.automorphisms;
    c.require(orbit_total == r.distinct_directings, "orbit sizes sum to " + std::to_string(orbit_total));
    return std::to_string(r.total_directings) + " directings, " + std::to_string(r.nonisomorphic) + " classes, " +
           std::to_string(r.with_v_good) + " 7-good, " + std::to_string(r.exceptional.size()) + " exceptional";
}

inline std::string ac8(const SuiteOptions&, Check& c) {
    std::ostringstream out;
    for (const auto& tts : {tts3(), tts4()}) {
        std::vector<TripleList> stream = all_directings(tts);
        std::vector<TripleList> naive = naive_directings(tts);
        c.require(stream == naive, "v=" + std::to_string(tts.v) + ": stream differs from naive filter");
        CensusReport r = classify_directings(tts);
        const std::uint64_t classes = tts.v == 3 ? 1 : 3;
        c.require(r.nonisomorphic == classes, "v=" + std::to_string(tts.v) + ": " + std::to_string(r.nonisomorphic) +
                                                  " classes");
        c.require(r.with_v_good == r.nonisomorphic, "v=" + std::to_string(tts.v) + ": a class lacks a good sequencing");
        std::uint64_t orbit_total = 0;
        for (const auto& cls : r.classes) orbit_total += r.tts_automorphisms / cls.automorphisms;
        c.require(orbit_total == r.distinct_directings, "v=" + std::to_string(tts.v) + ": orbit sizes do not sum up");
        out << "TTS(" << tts.v << "): " << stream.size() << " directings, " << r.nonisomorphic << " classes; ";
    }
    return out.str();
}

inline std::string ac9(const SuiteOptions& o, Check& c) {
    CatalogEntry gadget = o.lookup("GADGET12");
    std::size_t n = 0;
    for (const char* name : {"EX-DTS9", "EX-DTS10", "EX-DTS12", "EX-DTS13", "EX-DTS16", "EX-DTS18"}) {
        CatalogEntry e = o.lookup(name);
        c.require(verify_embedding(e.design(), gadget.triples, identity_map(gadget.v)),
                  std::string(name) + ": gadget not embedded");
        ++n;
    }
    return std::to_string(n) + " examples contain the gadget";
}

inline std::string ac10(const SuiteOptions& o, Check& c) {
    CatalogEntry gadget = o.lookup("GADGET12");
    std::size_t ok = 0;
    std::uint64_t iterations = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        ClimbConfig cfg;
        cfg.rng_seed = seed;
        cfg.max_iterations = 100'000;
        ClimbResult a = hill_climb(9, gadget.triples, cfg);
        ClimbResult b = hill_climb(9, gadget.triples, cfg);
        const std::string sa = a.design ? serialize_design(*a.design) : a.stall_report(9);
        const std::string sb = b.design ? serialize_design(*b.design) : b.stall_report(9);
        c.require(sa == sb, "seed " + std::to_string(seed) + " is not reproducible");
        if (a.success) {
            c.require(verify_embedding(*a.design, gadget.triples, identity_map(9)),
                      "seed " + std::to_string(seed) + ": gadget lost");
            ++ok;
            iterations += a.iterations;
        }
    }
    c.require(ok >= 90, std::to_string(ok) + " of 100 seeds succeeded");
    return std::to_string(ok) + "/100 seeds succeed, mean " + std::to_string(ok ? iterations / ok : 0) +
           " iterations; reruns identical";
}

inline std::string ac11(const SuiteOptions& o, Check& c) {
    ClimbRng rng(20260101);
    // l-good monotonicity over random designs and sequencings
    std::vector<DirectedTripleSystem> pool;
    for (const auto& name : full_design_names()) pool.push_back(o.lookup(name).design());
    for (std::size_t v : {7u, 9u, 10u, 12u, 13u}) pool.push_back(build_sequenceable(v).design);
    for (std::uint64_t s = 1; s <= 10; ++s) {
        ClimbConfig cfg;
        cfg.rng_seed = s;
        if (auto r = hill_climb(9, {}, cfg); r.success) pool.push_back(*r.design);
    }
    std::size_t violations = 0;
    for (int trial = 0; trial < 10'000; ++trial) {
        const auto& d = pool[rng.below(pool.size())];
        Sequencing seq(random_permutation(d.order(), rng));
        bool prev = true;
        for (std::size_t l = 3; l <= d.order(); ++l) {
            bool good = is_l_good(d, seq, l);
            if (good && !prev) ++violations;
            prev = good;
        }
    }
    c.require(violations == 0, std::to_string(violations) + " monotonicity violations");

    // canonical form invariance
    std::size_t relabels = 0;
    for (const auto& name : full_design_names()) {
        CatalogEntry e = o.lookup(name);
        if (e.v > 7) continue;
        const DirectedTripleSystem d = e.design();
        const std::string canon = canonical_form(d);
        for (int i = 0; i < 100; ++i, ++relabels) {
            auto perm = random_permutation(d.order(), rng);
            c.require(canonical_form(relabel(d, perm)) == canon, name + ": canonical form not invariant");
        }
    }

    // doubling counts and subdesign preservation
    for (std::size_t v : {3u, 4u, 6u, 7u, 9u, 10u}) {
        SequencedDesign s = build_sequenceable(v);
        SequencedDesign one = double_plus_one(s.design, s.sequencing);
        SequencedDesign four = double_plus_four(s.design, s.sequencing);
        const std::size_t base = v * (v - 1) / 3;
        c.require(one.design.triples().size() == (v + 1) * v + base &&
                      one.design.triples().size() == (2 * v + 1) * (2 * v) / 3,
                  "2v+1 count identity fails at v=" + std::to_string(v));
        c.require(four.design.triples().size() == v * (v + 4) + (v + 4) + base &&
                      four.design.triples().size() == (2 * v + 4) * (2 * v + 3) / 3,
                  "2v+4 count identity fails at v=" + std::to_string(v));
        for (const auto* out : {&one.design, &four.design})
            for (const Triple& t : s.design.triples())
                c.require(out->contains(t), "doubling lost a triple at v=" + std::to_string(v));
    }
    for (const auto& name : bad_seven_names()) {
        DirectedTripleSystem bad = o.lookup(name).design();
        auto order = identity_map(7);
        DirectedTripleSystem one(15, double_plus_one_triples(bad, order));
        DirectedTripleSystem four(18, double_plus_four_triples(bad, order));
        c.require(verify_embedding(one, bad.triples(), order) && verify_embedding(four, bad.triples(), order),
                  name + ": subdesign not preserved");
    }
    return "10000 monotonicity trials, " + std::to_string(relabels) + " relabelings, doublings at v=3,4,6,7,9,10";
}

struct CriterionDef {
    const char* id;
    const char* title;
    std::string (*run)(const SuiteOptions&, Check&);
};

inline const std::vector<CriterionDef>& criteria() {
    static const std::vector<CriterionDef> list = {
        {"AC1", "catalog designs are valid", ac1},
        {"AC2", "good-sequencing counts", ac2},
        {"AC3", "prover refutes the gadget and the bad DTS(7)", ac3},
        {"AC4", "prover agrees with exhaustive search", ac4},
        {"AC5", "sequenceable DTS(v) for admissible v <= 200", ac5},
        {"AC6", "unsequenceable DTS(v) for admissible 7 <= v <= 100", ac6},
        {"AC7", "census of directings of the D(7)4 TTS", ac7},
        {"AC8", "small census against the naive filter", ac8},
        {"AC9", "gadget embedded in the DTS(9..18) examples", ac9},
        {"AC10", "hill climbing with the gadget protected", ac10},
        {"AC11", "property checks", ac11},
    };
    return list;
}

} // namespace suite_detail

inline SuiteReport run_acceptance_suite(const SuiteOptions& options = {}) {
    using clock = std::chrono::steady_clock;
    SuiteReport report;
    const auto start = clock::now();
    for (const auto& spec : suite_detail::criteria()) {
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), spec.id) == options.only.end())
            continue;
        CriterionResult r{spec.id, spec.title};
        const auto t0 = clock::now();
        suite_detail::Check check;
        try {
            r.detail = spec.run(options, check);
            r.passed = check.ok;
            if (!check.ok) r.detail = check.notes.str() + " | " + r.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        if (options.on_result) options.on_result(r);
        report.results.push_back(std::move(r));
    }
    report.seconds = std::chrono::duration<double>(clock::now() - start).count();
    return report;
}

} // namespace dts

#endif // DTS_SUITE_HPP
