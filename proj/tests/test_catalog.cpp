#include <gtest/gtest.h>

#include "dts/catalog.hpp"
#include "dts/suite.hpp"
#include "oracles.hpp"

using namespace dts;

TEST(Catalog, Lookup) {
    CatalogEntry d41 = builtin("D4.1");
    EXPECT_EQ(d41.triples.size(), 4u);
    CatalogEntry g = builtin("GADGET12");
    EXPECT_TRUE(g.partial);
    EXPECT_EQ(g.triples.size(), 12u);
    EXPECT_EQ(g.v, 9u);
    EXPECT_THROW(g.design(), DomainError);
    CatalogEntry e13 = builtin("EX-DTS13");
    EXPECT_EQ(e13.triples.size(), 52u);
    EXPECT_EQ(TripleList(e13.triples.begin(), e13.triples.begin() + 12), g.triples);
}

TEST(Catalog, UnknownNameListsTheAlternatives) {
    try {
        builtin("D9.9");
        FAIL() << "no error";
    } catch (const LookupError& e) {
        EXPECT_NE(std::string(e.what()).find("GADGET12"), std::string::npos);
    }
}

TEST(Catalog, DigestsMatchEmbeddedFiles) { EXPECT_TRUE(catalog_digest_mismatches().empty()); }

TEST(Catalog, FullDesignsAreExactCovers) {
    for (const auto& e : catalog_entries())
        if (!e.partial) EXPECT_TRUE(oracle::exact_cover(e.v, e.triples)) << e.name;
}

TEST(Catalog, EveryFactHasALocusAndHolds) {
    for (const auto& e : catalog_entries()) {
        for (const auto& f : e.known_facts) {
            EXPECT_FALSE(f.locus.empty()) << e.name;
            switch (f.kind) {
                case FactKind::good_sequencing:
                    ASSERT_TRUE(e.sequencing) << e.name;
                    EXPECT_TRUE(oracle::l_good(e.triples, e.sequencing->order(), f.window)) << e.name;
                    break;
                case FactKind::count_l_good:
                    EXPECT_EQ(oracle::good_sequencings(e.v, e.triples, f.window).size(), f.value) << e.name;
                    break;
                case FactKind::not_sequenceable:
                    EXPECT_EQ(decide_v_good(e.v, e.triples).kind, VerdictKind::unsequenceable) << e.name;
                    break;
                case FactKind::max_good_l:
                    EXPECT_EQ(max_good_l(e.design()).window, f.window) << e.name;
                    break;
                case FactKind::contains_gadget: {
                    CatalogEntry g = builtin("GADGET12");
                    EXPECT_EQ(TripleList(e.triples.begin(), e.triples.begin() + 12), g.triples) << e.name;
                    break;
                }
            }
        }
    }
}

TEST(Catalog, OrderSixLabels) {
    CatalogEntry six = builtin("DTS6");
    ASSERT_EQ(six.labels.size(), 6u);
    EXPECT_EQ(six.labels[0], "∞");
}

TEST(Suite, TamperedCatalogFailsVisibly) {
    SuiteOptions opts;
    opts.only = {"AC1", "AC2"};
    opts.lookup = [](std::string_view name) {
        CatalogEntry e = builtin(name);
        if (name == "D4.1") std::swap(e.triples[0].first, e.triples[0].last);
        return e;
    };
    SuiteReport r = run_acceptance_suite(opts);
    ASSERT_EQ(r.results.size(), 2u);
    EXPECT_FALSE(r.results[0].passed);
    EXPECT_FALSE(r.results[1].passed);
    EXPECT_NE(r.results[1].detail.find("D4.1"), std::string::npos) << r.results[1].detail;
    EXPECT_NE(r.text().find("FAIL AC2"), std::string::npos);
}

TEST(Suite, QuickCriteriaPassAndRecordTime) {
    SuiteOptions opts;
    opts.only = {"AC1", "AC9"};
    SuiteReport r = run_acceptance_suite(opts);
    ASSERT_EQ(r.results.size(), 2u);
    EXPECT_TRUE(r.all_passed()) << r.text();
    EXPECT_GE(r.seconds, 0.0);
}
