#include <gtest/gtest.h>

#include "dts/constructions.hpp"
#include "oracles.hpp"

using namespace dts;

#ifndef DTS_SOURCE_DIR
#error "DTS_SOURCE_DIR must be defined"
#endif

namespace {

std::string fixture(const std::string& rel) { return read_file(std::string(DTS_SOURCE_DIR) + "/" + rel); }

SequencedDesign catalog_sequenced(const char* name) {
    CatalogEntry e = builtin(name);
    return {e.design(), *e.sequencing};
}

} // namespace

TEST(LatinSquare, ConstantDiagonal) {
    LatinSquare four = constant_diagonal_latin_square(4);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(four.at(i, i), 0u);
    EXPECT_EQ(four.at(0, 0), 0u);
    EXPECT_EQ(four.at(0, 3), 3u);
    LatinSquare one = constant_diagonal_latin_square(1);
    EXPECT_EQ(one.cells, std::vector<Point>{0});
    for (std::size_t n = 1; n <= 12; ++n) {
        LatinSquare sq = constant_diagonal_latin_square(n);
        EXPECT_TRUE(sq.is_latin());
        EXPECT_TRUE(sq.has_constant_diagonal());
    }
    EXPECT_THROW(constant_diagonal_latin_square(0), DomainError);
}

TEST(Doubling, PlusOneFromOrderThree) {
    SequencedDesign three = catalog_sequenced("DTS3");
    SequencedDesign seven = double_plus_one(three.design, three.sequencing);
    EXPECT_EQ(seven.design.order(), 7u);
    EXPECT_EQ(seven.design.triples().size(), 14u);
    EXPECT_TRUE(oracle::exact_cover(7, seven.design.triples()));
    EXPECT_TRUE(oracle::l_good(seven.design.triples(), seven.sequencing.order(), 7));
}

TEST(Doubling, PlusOneFromD41) {
    SequencedDesign d = catalog_sequenced("D4.1");
    SequencedDesign nine = double_plus_one(d.design, d.sequencing);
    EXPECT_TRUE(oracle::exact_cover(9, nine.design.triples()));
    EXPECT_TRUE(oracle::l_good(nine.design.triples(), nine.sequencing.order(), 9));
}

TEST(Doubling, PlusFour) {
    SequencedDesign three = catalog_sequenced("DTS3");
    SequencedDesign ten = double_plus_four(three.design, three.sequencing);
    EXPECT_EQ(ten.design.triples().size(), 30u);
    EXPECT_TRUE(oracle::exact_cover(10, ten.design.triples()));
    EXPECT_TRUE(oracle::l_good(ten.design.triples(), ten.sequencing.order(), 10));

    SequencedDesign six = catalog_sequenced("DTS6");
    SequencedDesign sixteen = double_plus_four(six.design, six.sequencing);
    EXPECT_TRUE(oracle::exact_cover(16, sixteen.design.triples()));
    EXPECT_TRUE(oracle::l_good(sixteen.design.triples(), sixteen.sequencing.order(), 16));
}

TEST(Doubling, RejectsBadSequencing) {
    SequencedDesign three = catalog_sequenced("DTS3");
    EXPECT_THROW(double_plus_one(three.design, Sequencing({0, 1, 2})), DomainError);
    EXPECT_THROW(double_plus_four(three.design, Sequencing({0, 1, 2})), DomainError);
}

TEST(Doubling, CountIdentities) {
    for (std::size_t v : {3u, 4u, 6u, 7u, 9u, 10u, 12u, 13u}) {
        SequencedDesign d = build_sequenceable(v);
        EXPECT_EQ(double_plus_one(d.design, d.sequencing).design.triples().size(), (v + 1) * v + v * (v - 1) / 3);
        EXPECT_EQ(double_plus_four(d.design, d.sequencing).design.triples().size(),
                  v * (v + 4) + (v + 4) + v * (v - 1) / 3);
    }
}

TEST(Doubling, KeepsEveryOldTriple) {
    DirectedTripleSystem bad = builtin("D7.4.926").design();
    auto order = identity_map(7);
    for (const TripleList& out : {double_plus_one_triples(bad, order), double_plus_four_triples(bad, order)}) {
        for (const Triple& t : bad.triples()) EXPECT_NE(std::find(out.begin(), out.end(), t), out.end());
        EXPECT_TRUE(oracle::exact_cover(out.size() == 70 ? 15 : 18, out));
    }
}

TEST(Pbd, FixturesParse) {
    PairwiseBalancedDesign ag = parse_pbd(fixture("data/pbd/ag23.pbd"));
    EXPECT_EQ(ag.v, 9u);
    EXPECT_EQ(ag.blocks.size(), 12u);
    PairwiseBalancedDesign builtin_ag = affine_plane_order3();
    EXPECT_EQ(pbd_defect(builtin_ag), "");
    EXPECT_EQ(builtin_ag.blocks.size(), 12u);
    EXPECT_THROW(parse_pbd("PBD v=4\n0 1 2\n"), InputError);
}

TEST(Compose, SingleBlock) {
    FillerMap fillers;
    fillers.emplace(3, catalog_sequenced("DTS3"));
    SequencedDesign d = compose_pbd(single_block_pbd(3), fillers);
    EXPECT_TRUE(oracle::exact_cover(3, d.design.triples()));
    EXPECT_TRUE(oracle::l_good(d.design.triples(), {0, 1, 2}, 3));
    EXPECT_TRUE(oracle::isomorphic(3, d.design.triples(), builtin("DTS3").triples));
}

TEST(Compose, SingleBlockOfSeven) {
    FillerMap fillers;
    fillers.emplace(7, build_sequenceable(7));
    SequencedDesign d = compose_pbd(single_block_pbd(7), fillers);
    EXPECT_TRUE(oracle::isomorphic(7, d.design.triples(), fillers.at(7).design.triples()));
}

TEST(Compose, AffinePlane) {
    FillerMap fillers;
    fillers.emplace(3, catalog_sequenced("DTS3"));
    SequencedDesign d = compose_pbd(parse_pbd(fixture("data/pbd/ag23.pbd")), fillers);
    EXPECT_TRUE(oracle::exact_cover(9, d.design.triples()));
    std::vector<Point> id(9);
    std::iota(id.begin(), id.end(), Point{0});
    EXPECT_TRUE(oracle::l_good(d.design.triples(), id, 9));
}

TEST(Compose, MissingFillerIsAnError) {
    EXPECT_THROW(compose_pbd(affine_plane_order3(), FillerMap{}), DomainError);
}

TEST(Compose, BadBlock) {
    DirectedTripleSystem bad = builtin("D7.4.926").design();
    CertifiedDesign single = compose_pbd_with_bad_block(single_block_pbd(7), {}, 0, bad);
    EXPECT_EQ(single.design.triples().size(), 14u);
    EXPECT_EQ(single.certificate.injection, identity_map(7));
    EXPECT_TRUE(verify_embedding(single.design, single.certificate));

    PairwiseBalancedDesign pbd = parse_pbd(fixture("data/pbd/pg32_fano_block.pbd"));
    std::vector<std::size_t> sizes{3};
    CertifiedDesign host = compose_pbd_with_bad_block(pbd, default_fillers(sizes), 0, bad);
    EXPECT_TRUE(oracle::exact_cover(pbd.v, host.design.triples()));
    EXPECT_TRUE(verify_embedding(host.design, host.certificate));
    ProverVerdict verdict = decide_v_good(host.design, SearchBudget::nodes(1'000'000));
    EXPECT_EQ(verdict.kind, VerdictKind::unsequenceable);
}

TEST(Compose, BadBlockSizeMismatch) {
    EXPECT_THROW(compose_pbd_with_bad_block(single_block_pbd(6), {}, 0, builtin("D7.4.926").design()), InputError);
}

TEST(Embedding, Examples) {
    CatalogEntry gadget = builtin("GADGET12");
    EXPECT_TRUE(verify_embedding(builtin("EX-DTS9").design(), gadget.triples, identity_map(9)));
    EXPECT_FALSE(verify_embedding(builtin("D7.4.926").design(), gadget.triples, identity_map(9)));
    EXPECT_TRUE(verify_embedding(builtin("D7.4.926").design(), TripleList{{0, 4, 2}}, identity_map(5)));
    std::vector<Point> clash{0, 0, 1, 2, 3};
    EXPECT_FALSE(verify_embedding(builtin("D7.4.926").design(), TripleList{{0, 4, 2}}, clash));
}

TEST(Builders, SequenceableSmallOrders) {
    EXPECT_THROW(build_sequenceable(5), AdmissibilityError);
    EXPECT_THROW(build_sequenceable(2), AdmissibilityError);
    SequencedDesign six = build_sequenceable(6);
    EXPECT_EQ(six.design.triples(), builtin("DTS6").triples);
    for (std::size_t v = 3; v <= 60; ++v) {
        if (!admissible_order(v)) continue;
        SequencedDesign d = build_sequenceable(v);
        EXPECT_TRUE(oracle::exact_cover(v, d.design.triples())) << v;
        EXPECT_TRUE(oracle::l_good(d.design.triples(), d.sequencing.order(), v)) << v;
    }
}

TEST(Builders, HundredIsChecked) {
    SequencedDesign d = build_sequenceable(100);
    EXPECT_EQ(d.design.triples().size(), 3300u);
    EXPECT_TRUE(is_l_good(d.design, d.sequencing, 100));
}

TEST(Builders, RecursionSourcesAreAdmissible) {
    for (std::size_t v = 7; v <= 400; ++v) {
        if (!admissible_order(v) || v == 9 || v == 10 || v == 12 || v == 13 || v == 16 || v == 18) continue;
        if (v == 7) continue;
        std::size_t k = doubling_source(v);
        EXPECT_TRUE(admissible_order(k)) << v;
        EXPECT_LT(k, v);
        if (v >= 15) EXPECT_GE(k, 7u) << v;
    }
}

TEST(Builders, Unsequenceable) {
    EXPECT_THROW(build_unsequenceable(6), DomainError);
    EXPECT_THROW(build_unsequenceable(8), AdmissibilityError);
    CertifiedDesign seven = build_unsequenceable(7);
    EXPECT_EQ(seven.certificate.kind, EmbeddingKind::seed_subdesign);
    CertifiedDesign nine = build_unsequenceable(9);
    EXPECT_EQ(nine.certificate.kind, EmbeddingKind::gadget);
    EXPECT_EQ(nine.certificate.injection, identity_map(9));
    CertifiedDesign big = build_unsequenceable(34);
    EXPECT_EQ(big.certificate.pattern_triples.size(), 14u);
    EXPECT_TRUE(oracle::exact_cover(34, big.design.triples()));
    for (const Triple& t : big.certificate.pattern_triples)
        EXPECT_TRUE(big.design.contains(relabel(t, big.certificate.injection)));
}
