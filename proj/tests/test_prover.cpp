#include <gtest/gtest.h>

#include "dts/catalog.hpp"
#include "dts/proof_json.hpp"
#include "dts/prover.hpp"
#include "dts/search.hpp"
#include "oracles.hpp"

using namespace dts;

namespace {

std::vector<Edge> forced_edges(const PropagationResult& r, const OrderConstraintState& s) {
    std::vector<Edge> out;
    for (const ForcedStep& f : r.forced) out.push_back(s.disjunctions_list()[f.disjunction].edge(f.side));
    return out;
}

// Index of the disjunction whose side is the edge a -> b.
Decision decision_for(const OrderConstraintState& s, Point a, Point b) {
    const auto& ds = s.disjunctions_list();
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (Side side : {Side::left, Side::right})
            if (ds[i].edge(side) == Edge{a, b}) return {i, side};
    throw std::logic_error("no such side");
}

std::set<std::pair<Point, Point>> accepted_on_path(const OrderConstraintState& s) {
    std::set<std::pair<Point, Point>> edges;
    for (const TrailEntry& t : s.trail()) {
        Edge e = s.disjunctions_list()[t.disjunction].edge(t.side);
        edges.insert({e.from, e.to});
    }
    return edges;
}

} // namespace

TEST(Disjunctions, EdgesFollowTheTriple) {
    auto ds = disjunctions(TripleList{{0, 4, 2}, {1, 2, 3}});
    ASSERT_EQ(ds.size(), 2u);
    EXPECT_EQ(ds[0].left, (Edge{2, 4}));
    EXPECT_EQ(ds[0].right, (Edge{4, 0}));
    EXPECT_EQ(ds[1].left, (Edge{3, 2}));
    EXPECT_EQ(ds[1].right, (Edge{2, 1}));
    EXPECT_THROW(disjunctions(TripleList{{1, 2, 1}}), InputError);
}

TEST(Propagate, NothingToDoOnAFreshSingleTriple) {
    OrderConstraintState s(3, TripleList{{0, 1, 2}});
    PropagationResult r = s.propagate();
    EXPECT_TRUE(r.forced.empty());
    EXPECT_FALSE(r.contradiction);
}

TEST(Propagate, GadgetFirstCase) {
    CatalogEntry g = builtin("GADGET12");
    OrderConstraintState s(g.v, g.triples);
    s.decide(decision_for(s, 3, 2));
    PropagationResult r = s.propagate();
    std::vector<Edge> expected = {{3, 4}, {5, 4}, {5, 6}, {2, 6}, {2, 7}, {8, 7}, {8, 3}, {6, 3}};
    EXPECT_EQ(forced_edges(r, s), expected);
    ASSERT_TRUE(r.contradiction);
    EXPECT_TRUE(oracle::same_cycle(*r.contradiction, {3, 2, 6}));
    EXPECT_TRUE(oracle::is_cycle_in(*r.contradiction, accepted_on_path(s)));
}

TEST(Propagate, D7926FirstCaseChain) {
    CatalogEntry d = builtin("D7.4.926");
    OrderConstraintState s(d.v, d.triples);
    s.decide(decision_for(s, 4, 0));
    PropagationResult r = s.propagate();
    std::vector<Edge> prefix = {{4, 6}, {1, 6}, {1, 3}, {0, 3}, {0, 5}, {6, 5}, {6, 2}, {3, 2}, {4, 2}};
    std::vector<Edge> got = forced_edges(r, s);
    ASSERT_GE(got.size(), prefix.size());
    EXPECT_EQ(std::vector<Edge>(got.begin(), got.begin() + prefix.size()), prefix);
    ASSERT_TRUE(r.contradiction);
    EXPECT_TRUE(oracle::is_cycle_in(*r.contradiction, accepted_on_path(s)));
}

TEST(Propagate, ExcludedCyclesUseTheRejectedEdge) {
    CatalogEntry g = builtin("GADGET12");
    OrderConstraintState s(g.v, g.triples);
    s.decide(decision_for(s, 2, 1));
    PropagationResult r = s.propagate();
    std::set<std::pair<Point, Point>> edges = accepted_on_path(s);
    for (const ForcedStep& f : r.forced) {
        Edge rejected = s.disjunctions_list()[f.disjunction].edge(opposite(f.side));
        auto with = edges;
        with.insert({rejected.from, rejected.to});
        EXPECT_TRUE(oracle::is_cycle_in(f.excluded_cycle, with));
        EXPECT_EQ(f.excluded_cycle[0], rejected.from);
        EXPECT_EQ(f.excluded_cycle[1], rejected.to);
    }
}

TEST(Prover, GadgetRefutedWithOneSplit) {
    CatalogEntry g = builtin("GADGET12");
    ProverVerdict v = decide_v_good(g.v, g.triples);
    ASSERT_EQ(v.kind, VerdictKind::unsequenceable);
    EXPECT_EQ(v.proof->branch_count(), 1u);
    EXPECT_TRUE(check_proof(g.v, g.triples, *v.proof));
    // first case assumes 3 < 2 and ends in 3 < 2 < 6 < 3
    const ProofNode& c1 = v.proof->children[0];
    EXPECT_EQ(g.triples[c1.decision->disjunction], (Triple{1, 2, 3}));
    EXPECT_TRUE(oracle::same_cycle(c1.cycle, {3, 2, 6}));
}

TEST(Prover, D7926CasesMatchTheHandProof) {
    CatalogEntry d = builtin("D7.4.926");
    ProverVerdict v = decide_v_good(d.v, d.triples);
    ASSERT_EQ(v.kind, VerdictKind::unsequenceable);
    EXPECT_TRUE(check_proof(d.v, d.triples, *v.proof));
    ASSERT_EQ(v.proof->branch_count(), 1u);
    EXPECT_TRUE(oracle::same_cycle(v.proof->children[0].cycle, {5, 3, 2}));
    EXPECT_TRUE(oracle::same_cycle(v.proof->children[1].cycle, {4, 1, 0}));
}

TEST(Prover, SequenceableDesignsGetGoodWitnesses) {
    for (const char* name : {"DTS3", "DTS4", "DTS6", "D4.1", "D4.2", "D4.3"}) {
        CatalogEntry e = builtin(name);
        ProverVerdict v = decide_v_good(e.v, e.triples);
        ASSERT_EQ(v.kind, VerdictKind::sequenceable) << name;
        EXPECT_TRUE(oracle::l_good(e.triples, v.witness->order(), e.v)) << name;
    }
}

TEST(Prover, AgreesWithExhaustiveSearch) {
    for (const auto& e : catalog_entries()) {
        if (e.partial || e.v > 7) continue;
        ProverVerdict v = decide_v_good(e.v, e.triples);
        bool exists = !oracle::good_sequencings(e.v, e.triples, e.v).empty();
        EXPECT_EQ(v.kind == VerdictKind::sequenceable, exists) << e.name;
    }
}

TEST(Prover, BudgetGivesUnknown) {
    CatalogEntry d = builtin("EX-DTS18");
    ProverVerdict v = decide_v_good(d.v, d.triples, SearchBudget::nodes(1));
    EXPECT_EQ(v.kind, VerdictKind::unknown);
}

TEST(Topological, OrderOrCycle) {
    Digraph g = make_digraph(4, std::vector<Edge>{{0, 1}, {1, 2}, {3, 2}});
    TopologicalResult t = topological_order(g);
    ASSERT_TRUE(t.order);
    for (Edge e : g.edges()) EXPECT_LT(t.order->position(e.from), t.order->position(e.to));
    g.add_edge({2, 0});
    t = topological_order(g);
    EXPECT_FALSE(t.order);
    std::set<std::pair<Point, Point>> edges;
    for (Edge e : g.edges()) edges.insert({e.from, e.to});
    EXPECT_TRUE(oracle::is_cycle_in(t.cycle, edges));
}

// ---------------------------------------------------------------------------
// The checker has to reject broken certificates.

class ProofTampering : public ::testing::Test {
protected:
    void SetUp() override {
        g = builtin("GADGET12");
        proof = *decide_v_good(g.v, g.triples).proof;
    }
    bool ok(const ProofNode& p) { return check_proof(g.v, g.triples, p); }

    CatalogEntry g;
    ProofNode proof;
};

TEST_F(ProofTampering, OriginalPasses) { EXPECT_TRUE(ok(proof)); }

TEST_F(ProofTampering, MissingChild) {
    proof.children.pop_back();
    EXPECT_FALSE(ok(proof));
}

TEST_F(ProofTampering, BrokenLeafCycle) {
    proof.children[0].cycle.pop_back();
    EXPECT_FALSE(ok(proof));
}

TEST_F(ProofTampering, UnjustifiedForcedStep) {
    auto& f = proof.children[0].forced;
    ASSERT_FALSE(f.empty());
    f.front().excluded_cycle = {0, 1};
    EXPECT_FALSE(ok(proof));
}

TEST_F(ProofTampering, FlippedForcedSide) {
    auto& f = proof.children[1].forced;
    f.back().side = opposite(f.back().side);
    EXPECT_FALSE(ok(proof));
}

TEST_F(ProofTampering, BothChildrenSameSide) {
    proof.children[1].decision = proof.children[0].decision;
    EXPECT_FALSE(ok(proof));
}

TEST_F(ProofTampering, WrongTripleSet) {
    TripleList fewer(g.triples.begin(), g.triples.end() - 1);
    EXPECT_FALSE(check_proof(g.v, fewer, proof));
}

TEST(ProofJson, RoundTrip) {
    CatalogEntry d = builtin("D7.4.1015");
    ProverVerdict v = decide_v_good(d.v, d.triples);
    ASSERT_TRUE(v.proof);
    std::string text = proof_to_json(d.v, d.triples, *v.proof).dump();
    ProofDocument doc = parse_proof(text);
    EXPECT_EQ(doc.v, d.v);
    EXPECT_EQ(doc.triples, d.triples);
    EXPECT_TRUE(check_proof(doc.v, doc.triples, doc.root));
    EXPECT_EQ(proof_to_json(doc.v, doc.triples, doc.root).dump(), text);
}

TEST(ProofJson, MalformedDocuments) {
    EXPECT_THROW(parse_proof("{"), ProofFormatError);
    EXPECT_THROW(parse_proof(R"({"format":"other"})"), ProofFormatError);
    EXPECT_THROW(parse_proof(R"({"format":"dts-proof-tree/1","v":3,"triples":[[0,1]],"root":{}})"), ProofFormatError);
}

TEST(ProofText, MentionsCasesAndCycles) {
    CatalogEntry g = builtin("GADGET12");
    ProverVerdict v = decide_v_good(g.v, g.triples);
    std::string text = proof_to_text(g.triples, *v.proof);
    EXPECT_NE(text.find("Case 1: assume 3 < 2"), std::string::npos) << text;
    EXPECT_NE(text.find("Case 2: assume 2 < 1"), std::string::npos);
    EXPECT_NE(text.find("is a directed cycle"), std::string::npos);
}
