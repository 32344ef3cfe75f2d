#include <gtest/gtest.h>

#include <random>

#include "dts/catalog.hpp"
#include "dts/design.hpp"
#include "dts/text_format.hpp"
#include "oracles.hpp"

using namespace dts;

namespace {

TripleList d41() { return {{0, 3, 2}, {1, 2, 3}, {2, 1, 0}, {3, 0, 1}}; }

} // namespace

TEST(Validate, D41IsValid) {
    ValidationReport r = validate_dts(4, d41());
    EXPECT_TRUE(r.valid) << r.summary();
}

TEST(Validate, SingleTripleMissesFourEdges) {
    ValidationReport r = validate_dts(3, TripleList{{0, 1, 2}});
    EXPECT_FALSE(r.valid);
    EXPECT_EQ(r.missing_edges.size(), 3u);
    EXPECT_TRUE(r.duplicated_edges.empty());
    // The reversals of the three covered edges are what is missing.
    for (Edge e : {Edge{1, 0}, Edge{2, 0}, Edge{2, 1}})
        EXPECT_NE(std::find(r.missing_edges.begin(), r.missing_edges.end(), e), r.missing_edges.end());
}

TEST(Validate, DevelopedOrderSixDesign) {
    // (0, inf, 4), (0, 1, 3) mod 5 with inf as point 5
    TripleList t;
    for (Point i = 0; i < 5; ++i) {
        t.push_back({i, 5, (i + 4) % 5});
        t.push_back({i, (i + 1) % 5, (i + 3) % 5});
    }
    EXPECT_TRUE(validate_dts(6, t).valid);
    EXPECT_TRUE(oracle::exact_cover(6, t));
}

TEST(Validate, ReportsEveryDuplicate) {
    TripleList t = d41();
    t[0] = {1, 2, 0};
    ValidationReport r = validate_dts(4, t);
    EXPECT_FALSE(r.valid);
    auto counts = oracle::edge_counts(t);
    std::size_t dup = 0;
    for (const auto& [e, n] : counts) dup += n > 1;
    ASSERT_EQ(r.duplicated_edges.size(), dup);
    for (const auto& d : r.duplicated_edges) EXPECT_EQ(d.owners.size(), static_cast<std::size_t>(counts[{d.edge.from, d.edge.to}]));
    EXPECT_EQ(oracle::exact_cover(4, t), r.valid);
}

TEST(Validate, MalformedTriplesThrow) {
    EXPECT_THROW(validate_dts(3, TripleList{{0, 1, 3}}), InputError);
    EXPECT_THROW(validate_dts(3, TripleList{{0, 1, 1}}), InputError);
}

TEST(Validate, AgreesWithOracleOnRandomTripleSets) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        TripleList t = d41();
        // perturb one triple's order
        auto& x = t[rng() % t.size()];
        std::array<Point, 3> p{x.first, x.middle, x.last};
        std::shuffle(p.begin(), p.end(), rng);
        x = {p[0], p[1], p[2]};
        EXPECT_EQ(validate_dts(4, t).valid, oracle::exact_cover(4, t));
    }
}

TEST(DesignType, RejectsInvalidCover) {
    EXPECT_THROW(DirectedTripleSystem(3, TripleList{{0, 1, 2}}), InvalidDesign);
    EXPECT_NO_THROW(DirectedTripleSystem(4, d41()));
}

TEST(LGood, OrderThreeExamples) {
    // Points 1,2,3 stored as 0,1,2; triples (1,2,3) and (3,2,1).
    DirectedTripleSystem d(3, TripleList{{0, 1, 2}, {2, 1, 0}});
    EXPECT_TRUE(is_l_good(d, Sequencing({0, 2, 1}), 3));
    EXPECT_FALSE(is_l_good(d, Sequencing({0, 1, 2}), 3));
}

TEST(LGood, D7926IdentityIsSixGood) {
    DirectedTripleSystem d = builtin("D7.4.926").design();
    EXPECT_TRUE(is_l_good(d, Sequencing::identity(7), 6));
    EXPECT_FALSE(is_l_good(d, Sequencing::identity(7), 7));
}

TEST(LGood, WindowOutOfRangeIsDomainError) {
    DirectedTripleSystem d(4, d41());
    EXPECT_THROW(is_l_good(d, Sequencing::identity(4), 2), DomainError);
    EXPECT_THROW(is_l_good(d, Sequencing::identity(4), 5), DomainError);
}

TEST(LGood, MatchesWindowScanOracle) {
    std::mt19937 rng(11);
    for (const auto& e : catalog_entries()) {
        if (e.partial || e.v > 8) continue;
        std::vector<Point> p(e.v);
        std::iota(p.begin(), p.end(), Point{0});
        for (int trial = 0; trial < 200; ++trial) {
            std::shuffle(p.begin(), p.end(), rng);
            for (std::size_t l = 3; l <= e.v; ++l)
                ASSERT_EQ(is_l_good(e.triples, Sequencing(p), l), oracle::l_good(e.triples, p, l)) << e.name;
        }
    }
}

TEST(Relabel, IdentityAndInverse) {
    DirectedTripleSystem d(4, d41());
    std::vector<Point> id{0, 1, 2, 3};
    EXPECT_EQ(relabel(d, id).triples(), d.triples());
    std::vector<Point> swap01{1, 0, 2, 3};
    DirectedTripleSystem s = relabel(d, swap01);
    EXPECT_TRUE(oracle::exact_cover(4, s.triples()));
    std::vector<Point> perm{2, 0, 3, 1};
    DirectedTripleSystem back = relabel(relabel(d, perm), inverse_permutation(perm));
    TripleList a = back.triples(), b = d.triples();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
}

TEST(Relabel, NonBijectionIsDomainError) {
    DirectedTripleSystem d(4, d41());
    std::vector<Point> bad{0, 0, 1, 2};
    EXPECT_THROW(relabel(d, bad), DomainError);
}

TEST(Relabel, CarriesLabels) {
    DirectedTripleSystem d = builtin("DTS6").design();
    std::vector<Point> perm{5, 0, 1, 2, 3, 4};
    DirectedTripleSystem r = relabel(d, perm);
    EXPECT_EQ(r.label(5), d.label(0));
}

TEST(UnderlyingTts, OrderFourDesignsShareIt) {
    TwofoldTripleSystem expected{4, {Block3{0, 1, 2}, Block3{0, 1, 3}, Block3{0, 2, 3}, Block3{1, 2, 3}}};
    for (const char* name : {"D4.1", "D4.2", "D4.3"}) {
        TwofoldTripleSystem t = underlying_tts(builtin(name).design());
        EXPECT_EQ(t.blocks, expected.blocks) << name;
        EXPECT_TRUE(oracle::twofold(4, t.blocks));
    }
}

TEST(UnderlyingTts, OrderSevenHasFourteenBlocks) {
    TwofoldTripleSystem t = underlying_tts(builtin("D7.4.926").design());
    EXPECT_EQ(t.blocks.size(), 14u);
    EXPECT_TRUE(oracle::twofold(7, t.blocks));
    EXPECT_EQ(tts_defect(t), "");
}

TEST(TextFormat, RoundTripIsExact) {
    for (const auto& e : catalog_entries()) {
        if (e.partial) continue;
        DirectedTripleSystem d = e.design();
        std::string once = serialize_design(d);
        DirectedTripleSystem back = load_design(once);
        EXPECT_EQ(serialize_design(back), once) << e.name;
        EXPECT_EQ(back.labels(), d.labels());
        std::multiset<Triple> a(d.triples().begin(), d.triples().end()), b(back.triples().begin(), back.triples().end());
        EXPECT_EQ(a, b);
    }
}

TEST(TextFormat, ParseErrorsCarryLineNumbers) {
    try {
        parse_design("DTS v=3\n0 1 2\n0 1\n");
        FAIL() << "no error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 3u);
    }
    EXPECT_THROW(parse_design("DTS v=3\n0 1 5\n"), ParseError);
    EXPECT_THROW(parse_design("TTS v=3\n"), ParseError);
    EXPECT_THROW(parse_design("DTS v=3\n0 1 2\nSEQ 0 1\n"), ParseError);
}

TEST(TextFormat, DuplicateEdgeNamesThePair) {
    try {
        load_design("DTS v=3\n0 1 2\n0 1 2\n");
        FAIL() << "no error";
    } catch (const InvalidDesign& e) {
        EXPECT_NE(std::string(e.what()).find("(0,1)"), std::string::npos) << e.what();
    }
}

TEST(TextFormat, CommentsAndSeq) {
    ParsedDesign p = parse_design("# hello\nDTS v=3\n0 1 2 # first\n2 1 0\nSEQ 0 2 1\n");
    EXPECT_EQ(p.triples.size(), 2u);
    ASSERT_TRUE(p.sequencing);
    EXPECT_EQ(*p.sequencing, (std::vector<Point>{0, 2, 1}));
}

TEST(Properties, MonotoneInWindow) {
    std::mt19937 rng(3);
    for (const auto& e : catalog_entries()) {
        if (e.partial) continue;
        std::vector<Point> p(e.v);
        std::iota(p.begin(), p.end(), Point{0});
        for (int trial = 0; trial < 50; ++trial) {
            std::shuffle(p.begin(), p.end(), rng);
            Sequencing s(p);
            for (std::size_t l = 4; l <= e.v; ++l)
                if (is_l_good(e.triples, s, l)) EXPECT_TRUE(is_l_good(e.triples, s, l - 1));
        }
    }
}
