// dts: command-line front end for the directed triple system library.
//
// Exit codes: 0 success, 1 negative result, 2 budget exhausted, 3 input error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dts/dts.hpp"

namespace {

using namespace dts;

enum Exit : int { ok = 0, negative = 1, budget = 2, input = 3 };

struct Globals {
    std::string in;
    std::string out;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> budget_nodes;
    std::optional<double> budget_secs;
    unsigned workers = 1;
    std::string manifest;
};

class Session {
public:
    explicit Session(Globals& g) : g_(g) {}

    SearchBudget budget() const {
        SearchBudget b;
        b.max_nodes = g_.budget_nodes;
        b.time_limit = g_.budget_secs;
        return b;
    }

    std::string read_input(const std::string& path) {
        std::string text;
        if (path.empty() || path == "-") {
            std::ostringstream s;
            s << std::cin.rdbuf();
            text = s.str();
            manifest.add_input("stdin", text);
        } else {
            text = read_file(path);
            manifest.add_input(path, text);
        }
        return text;
    }

    std::string read_main_input() { return read_input(g_.in); }

    void emit(const std::string& text) {
        output_ += text;
        if (g_.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(g_.out, std::ios::app);
            if (!f) throw InputError("cannot write " + g_.out);
            f << text;
        }
    }

    void finish(int code, double seconds) {
        if (g_.manifest.empty()) return;
        manifest.add_output(g_.out.empty() ? "stdout" : g_.out, output_);
        manifest.seeds["seed"] = g_.seed;
        manifest.budget_nodes = g_.budget_nodes;
        manifest.budget_seconds = g_.budget_secs;
        manifest.workers = g_.workers;
        manifest.wall_seconds = seconds;
        manifest.exit_code = code;
        std::ofstream f(g_.manifest);
        f << manifest.to_json().dump(2) << "\n";
    }

    const Globals& globals() const { return g_; }

    RunManifest manifest;

private:
    Globals& g_;
    std::string output_;
};

std::string seq_line(const Sequencing& s, const std::vector<std::string>& labels = {}) {
    std::string line = "SEQ";
    for (Point p : s.order()) line += " " + (labels.empty() ? std::to_string(p) : labels[p]);
    return line + "\n";
}

// ---------------------------------------------------------------------------

int cmd_verify(Session& s) {
    ParsedDesign d = parse_design(s.read_main_input());
    ValidationReport r = validate_dts(d.v, d.triples);
    if (!r.valid) {
        s.emit("invalid: " + r.summary() + "\n");
        return negative;
    }
    std::ostringstream out;
    out << "valid DTS(" << d.v << ") with " << d.triples.size() << " triples\n";
    int code = ok;
    if (d.sequencing) {
        if (d.sequencing->size() != d.v) throw InputError("SEQ line has the wrong length");
        const Sequencing seq(*d.sequencing);
        std::size_t best = 0;
        for (std::size_t l = 3; l <= d.v; ++l)
            if (is_l_good(d.triples, seq, l)) best = l;
        if (best == 0) {
            out << "SEQ is not even 3-good\n";
        } else {
            out << "SEQ is " << best << "-good" << (best == d.v ? "" : " (not " + std::to_string(best + 1) + "-good)")
                << "\n";
        }
        if (best != d.v) code = negative;
    }
    s.emit(out.str());
    return code;
}

int cmd_seq_find(Session& s, std::size_t window) {
    DirectedTripleSystem d = load_design(s.read_main_input());
    SearchOutcome r = find_l_good(d, window, s.budget());
    switch (r.status) {
        case SearchStatus::found: s.emit(seq_line(*r.witness)); return ok;
        case SearchStatus::none: s.emit("none: no " + std::to_string(window) + "-good sequencing\n"); return negative;
        default: s.emit("budget exhausted after " + std::to_string(r.nodes) + " nodes\n"); return budget;
    }
}

int cmd_seq_count(Session& s, std::size_t window, bool force) {
    DirectedTripleSystem d = load_design(s.read_main_input());
    try {
        std::uint64_t n = count_l_good(d, window, s.budget(), {s.globals().workers, force});
        s.emit(std::to_string(n) + "\n");
        return ok;
    } catch (const BudgetExhausted& e) {
        s.emit("budget exhausted: at least " + std::to_string(e.partial) + " sequencings after " +
               std::to_string(e.nodes) + " nodes\n");
        return budget;
    }
}

int cmd_seq_maxl(Session& s) {
    DirectedTripleSystem d = load_design(s.read_main_input());
    MaxGoodL m = max_good_l(d, s.budget());
    if (m.window == 0) {
        s.emit("no 3-good sequencing found\n");
        return m.certified ? negative : budget;
    }
    s.emit("maxl=" + std::to_string(m.window) + (m.certified ? "" : " (lower bound only)") + "\n" + seq_line(*m.witness));
    return m.certified ? ok : budget;
}

int cmd_prove(Session& s, bool json_tree) {
    ParsedDesign d = parse_design(s.read_main_input());
    ProverVerdict verdict = decide_v_good(d.v, d.triples, s.budget());
    switch (verdict.kind) {
        case VerdictKind::sequenceable:
            s.emit(seq_line(*verdict.witness));
            return ok;
        case VerdictKind::unsequenceable:
            if (json_tree) {
                s.emit(proof_to_json(d.v, d.triples, *verdict.proof).dump(1) + "\n");
            } else {
                s.emit(proof_to_text(d.triples, *verdict.proof, d.labels));
            }
            return negative;
        default:
            s.emit("unknown: budget exhausted after " + std::to_string(verdict.nodes) + " nodes\n");
            return budget;
    }
}

int cmd_check_proof(Session& s, const std::string& path) {
    ProofDocument doc = parse_proof(s.read_input(path));
    ProofCheck check = check_proof_detailed(doc.v, doc.triples, doc.root);
    if (check.valid) {
        s.emit("proof valid: " + std::to_string(doc.root.size()) + " nodes, no " + std::to_string(doc.v) +
               "-good sequencing\n");
        return ok;
    }
    s.emit("proof invalid at " + check.node + ": " + check.error + "\n");
    return negative;
}

int cmd_build(Session& s, const std::string& kind, std::size_t v) {
    if (kind == "good") {
        SequencedDesign d = build_sequenceable(v);
        s.emit(serialize_design(d.design, &d.sequencing));
        return ok;
    }
    CertifiedDesign d = build_unsequenceable(v);
    std::ostringstream cert;
    cert << "# certificate " << embedding_kind_name(d.certificate.kind) << " " << d.certificate.pattern_name << "\n";
    cert << "# injection";
    for (Point p : d.certificate.injection) cert << " " << p;
    cert << "\n";
    s.emit(cert.str() + serialize_design(d.design));
    return ok;
}

FillerMap load_fillers(Session& s, const std::string& dir, const PairwiseBalancedDesign& pbd) {
    std::vector<std::size_t> sizes;
    for (const auto& b : pbd.blocks) sizes.push_back(b.size());
    FillerMap fillers;
    if (!dir.empty()) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            if (entry.path().extension() == ".dts") files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            ParsedDesign p = parse_design(s.read_input(f.string()));
            if (!p.sequencing || fillers.contains(p.v)) continue;
            DirectedTripleSystem d(p.v, p.triples);
            fillers.emplace(p.v, SequencedDesign{std::move(d), Sequencing(*p.sequencing)});
        }
    }
    for (std::size_t k : sizes)
        if (!fillers.contains(k) && admissible_order(k)) fillers.emplace(k, build_sequenceable(k));
    return fillers;
}

int cmd_compose(Session& s, const std::string& pbd_path, const std::string& fill, std::optional<std::size_t> bad_block,
                const std::string& bad_path) {
    PairwiseBalancedDesign pbd = parse_pbd(s.read_input(pbd_path));
    if (bad_block) {
        if (bad_path.empty()) throw InputError("--bad-block needs --bad <file>");
        DirectedTripleSystem bad = load_design(s.read_input(bad_path));
        FillerMap fillers = load_fillers(s, fill, pbd);
        CertifiedDesign d = compose_pbd_with_bad_block(pbd, fillers, *bad_block, bad);
        std::ostringstream cert;
        cert << "# certificate seed-subdesign injection";
        for (Point p : d.certificate.injection) cert << " " << p;
        s.emit(cert.str() + "\n" + serialize_design(d.design));
        return ok;
    }
    SequencedDesign d = compose_pbd(pbd, load_fillers(s, fill, pbd));
    s.emit(serialize_design(d.design, &d.sequencing));
    return ok;
}

int cmd_climb(Session& s, std::size_t v, const std::string& protect, std::uint64_t max_iter, std::uint64_t restart,
              const std::string& transcript) {
    TripleList initial;
    if (!protect.empty()) initial = parse_design(s.read_input(protect)).triples;
    ClimbConfig cfg;
    cfg.rng_seed = s.globals().seed;
    cfg.max_iterations = max_iter;
    cfg.restart_after_stall = restart;
    cfg.record_transcript = !transcript.empty();
    ClimbResult r = hill_climb(v, initial, cfg);
    if (!transcript.empty()) {
        std::ofstream f(transcript);
        for (const auto& line : r.transcript) f << line << "\n";
    }
    if (!r.success) {
        s.emit("failed: " + r.stall_report(v) + "\n");
        return budget;
    }
    s.emit("# " + std::to_string(r.iterations) + " iterations, " + std::to_string(r.restarts) + " restarts\n" +
           serialize_design(*r.design));
    return ok;
}

int cmd_census(Session& s, const std::string& tts_path) {
    TwofoldTripleSystem tts = parse_tts(s.read_input(tts_path));
    CensusOptions opts;
    if (s.globals().budget_nodes) opts.prover_budget = SearchBudget::nodes(*s.globals().budget_nodes);
    opts.workers = s.globals().workers;
    CensusReport r = classify_directings(tts, opts);
    std::ostringstream out;
    out << "directings " << r.total_directings << "\n";
    out << "nonisomorphic " << r.nonisomorphic << "\n";
    out << "with " << r.v << "-good " << r.with_v_good << "\n";
    out << "exceptional " << r.exceptional.size() << "\n";
    if (r.partial) out << "partial: some classes unresolved within budget\n";
    for (const auto& cls : r.classes) {
        out << "CLASS " << to_hex(cls.canonical) << " maxl=" << cls.max_good_l << (cls.max_certified ? "" : "+")
            << "\n";
    }
    s.emit(out.str());
    return r.partial ? budget : ok;
}

int cmd_catalog_list(Session& s) {
    std::ostringstream out;
    for (const auto& e : catalog_entries()) {
        out << e.name << "  v=" << e.v << "  " << e.triples.size() << " triples" << (e.partial ? " (partial)" : "")
            << "  " << e.summary << "\n";
    }
    s.emit(out.str());
    return ok;
}

int cmd_catalog_show(Session& s, const std::string& name) {
    CatalogEntry e = builtin(name);
    std::ostringstream out;
    out << "# " << e.name << ": " << e.summary << "\n";
    for (const auto& f : e.known_facts) out << "# fact: " << f.locus << "\n";
    out << e.text;
    s.emit(out.str());
    return ok;
}

int cmd_suite(Session& s, const std::vector<std::string>& only) {
    SuiteOptions opts;
    opts.workers = s.globals().workers;
    opts.only = only;
    opts.on_result = [](const CriterionResult& r) {
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.id << " (" << r.seconds << " s)\n";
    };
    SuiteReport report = run_acceptance_suite(opts);
    s.emit(report.text());
    return report.all_passed() ? ok : negative;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Directed triple systems: construction, sequencing, and non-sequenceability proofs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--in", g.in, "Input design file (default: standard input)");
    app.add_option("--out", g.out, "Write output to this file instead of standard output");
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--budget-nodes", g.budget_nodes, "Search node budget");
    app.add_option("--budget-secs", g.budget_secs, "Search time budget in seconds");
    app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--manifest", g.manifest, "Write a JSON run manifest here");

    std::function<int(Session&)> action;

    app.add_subcommand("verify", "Validate a design; report how good its SEQ line is")
        ->callback([&] { action = cmd_verify; });

    auto* seq = app.add_subcommand("seq", "Search for good sequencings");
    seq->require_subcommand(1);
    std::size_t window = 0;
    bool force = false;
    auto* find = seq->add_subcommand("find", "Find an l-good sequencing");
    find->add_option("--l", window, "Window length")->required();
    find->callback([&] { action = [&](Session& s) { return cmd_seq_find(s, window); }; });
    auto* count = seq->add_subcommand("count", "Count l-good sequencings");
    count->add_option("--l", window, "Window length")->required();
    count->add_flag("--force", force, "Allow counting above order 8");
    count->callback([&] { action = [&](Session& s) { return cmd_seq_count(s, window, force); }; });
    seq->add_subcommand("maxl", "Largest l with an l-good sequencing")->callback([&] { action = cmd_seq_maxl; });

    bool json_tree = false;
    auto* prove = app.add_subcommand("prove", "Find a v-good sequencing or prove there is none");
    prove->add_flag("--emit-json-tree", json_tree, "Emit the machine-checkable proof tree");
    prove->callback([&] { action = [&](Session& s) { return cmd_prove(s, json_tree); }; });

    std::string proof_path;
    auto* check = app.add_subcommand("check-proof", "Check a JSON proof tree");
    check->add_option("tree", proof_path, "Proof tree file")->required();
    check->callback([&] { action = [&](Session& s) { return cmd_check_proof(s, proof_path); }; });

    auto* build = app.add_subcommand("build", "Construct a DTS(v)");
    std::string build_kind;
    std::size_t build_v = 0;
    build->add_option("kind", build_kind, "good or bad")->required()->check(CLI::IsMember({"good", "bad"}));
    build->add_option("--v", build_v, "Order")->required();
    build->callback([&] { action = [&](Session& s) { return cmd_build(s, build_kind, build_v); }; });

    auto* compose = app.add_subcommand("compose", "Fill the blocks of a PBD with small designs");
    std::string pbd_path, fill_dir, bad_path;
    std::optional<std::size_t> bad_block;
    compose->add_option("--pbd", pbd_path, "PBD file")->required();
    compose->add_option("--fill", fill_dir, "Directory of filler designs with SEQ lines");
    compose->add_option("--bad-block", bad_block, "Index of the block that gets the bad design");
    compose->add_option("--bad", bad_path, "Design without a good sequencing");
    compose->callback([&] { action = [&](Session& s) { return cmd_compose(s, pbd_path, fill_dir, bad_block, bad_path); }; });

    auto* climb = app.add_subcommand("climb", "Hill-climb a DTS(v)");
    std::size_t climb_v = 0;
    std::string protect, transcript;
    std::uint64_t max_iter = 100'000, restart = 1'000;
    climb->add_option("--v", climb_v, "Order")->required();
    climb->add_option("--protect", protect, "Triples to start from and never evict");
    climb->add_option("--max-iter", max_iter, "Iteration limit");
    climb->add_option("--restart", restart, "Steps without a new size high before a restart");
    climb->add_option("--transcript", transcript, "Write the step log here");
    climb->callback([&] { action = [&](Session& s) { return cmd_climb(s, climb_v, protect, max_iter, restart, transcript); }; });

    auto* census = app.add_subcommand("census", "Classify all directings of a TTS");
    std::string tts_path;
    census->add_option("--tts", tts_path, "TTS file")->required();
    census->callback([&] { action = [&](Session& s) { return cmd_census(s, tts_path); }; });

    auto* catalog = app.add_subcommand("catalog", "Built-in designs");
    catalog->require_subcommand(1);
    catalog->add_subcommand("list", "List built-in designs")->callback([&] { action = cmd_catalog_list; });
    std::string show_name;
    auto* show = catalog->add_subcommand("show", "Print a built-in design");
    show->add_option("name", show_name)->required();
    show->callback([&] { action = [&](Session& s) { return cmd_catalog_show(s, show_name); }; });

    std::vector<std::string> only;
    auto* suite = app.add_subcommand("suite", "Run the acceptance checks");
    suite->add_option("--only", only, "Run only these criteria (AC1 ... AC11)");
    suite->callback([&] { action = [&](Session& s) { return cmd_suite(s, only); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : input;
    }

    Session session(g);
    session.manifest.command_line.assign(argv, argv + argc);
    if (!g.out.empty()) std::ofstream(g.out, std::ios::trunc);
    const auto start = std::chrono::steady_clock::now();
    int code = ok;
    try {
        code = action(session);
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        code = budget;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        code = input;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = input;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = input;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = input;
    }
    session.finish(code, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return code;
}
