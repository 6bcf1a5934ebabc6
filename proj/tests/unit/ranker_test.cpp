#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "rulesmith/ranker.hpp"
#include "rulesmith/sampler.hpp"

using namespace rulesmith;
using namespace rulesmith::testing;

namespace {

Rule appendix_rule(const KnowledgeGraph& kg) { return Rule{rel(kg, "playsFor"), {rel(kg, "isAffiliatedTo")}}; }

std::vector<RelationId> reversed_inverse(const std::vector<RelationId>& body) {
    std::vector<RelationId> out;
    for (auto it = body.rbegin(); it != body.rend(); ++it) out.push_back(inverse(*it));
    return out;
}

// Sampled bodies for every relation plus a few uniformly random rules.
std::vector<Rule> candidate_rules(const KnowledgeGraph& kg, std::mt19937_64& rng, std::size_t limit) {
    std::vector<Rule> rules;
    SamplerOptions o;
    o.seed_count = 1'000'000;
    o.per_seed_cap = 0;
    for (auto r : kg.relations()) {
        for (const auto& s : abstract_to_samples(sample_closed_paths(kg, r, o))) rules.push_back(s.rule());
    }
    std::shuffle(rules.begin(), rules.end(), rng);
    if (rules.size() > limit) rules.resize(limit);
    const auto nr = static_cast<std::uint32_t>(kg.num_relations());
    for (int i = 0; i < 5; ++i) {
        Rule r{RelationId{static_cast<std::uint32_t>(rng() % nr)}, {}};
        const std::size_t len = 1 + rng() % 3;
        for (std::size_t j = 0; j < len; ++j) r.body.push_back(RelationId{static_cast<std::uint32_t>(rng() % nr)});
        rules.push_back(r);
    }
    return rules;
}

}  // namespace

TEST(Ranker, AppendixWorkedExample) {
    const auto kg = appendix_kg();
    const auto q = score_rule(kg, appendix_rule(kg));
    EXPECT_EQ(q.support, 1u);
    EXPECT_EQ(q.coverage_ratio(), (Ratio{1, 2}));
    EXPECT_EQ(q.confidence_ratio(), (Ratio{1, 3}));
    EXPECT_EQ(q.pca_ratio(), (Ratio{1, 2}));
    EXPECT_DOUBLE_EQ(q.coverage(), 0.5);
    EXPECT_DOUBLE_EQ(q.confidence(), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(q.pca_confidence(), 0.5);
}

TEST(Ranker, AppendixBodyPairs) {
    const auto kg = appendix_kg();
    const std::vector<RelationId> body{rel(kg, "isAffiliatedTo")};
    const auto pairs = body_pairs(kg, body);
    EXPECT_EQ(pairs.size(), 3u);
    EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end()));
    const std::vector<RelationId> none{rel(kg, "playsFor"), rel(kg, "playsFor")};
    EXPECT_TRUE(body_pairs(kg, none).empty());
}

TEST(Ranker, BodyEqualToHeadScoresOne) {
    const auto kg = appendix_kg();
    const auto aff = rel(kg, "isAffiliatedTo");
    const auto q = score_rule(kg, Rule{aff, {aff}});
    EXPECT_EQ(q.support, 3u);
    EXPECT_DOUBLE_EQ(q.coverage(), 1.0);
    EXPECT_DOUBLE_EQ(q.confidence(), 1.0);
    EXPECT_DOUBLE_EQ(q.pca_confidence(), 1.0);
}

TEST(Ranker, RankPrunesZeroSupport) {
    const auto kg = appendix_kg();
    const auto plays = rel(kg, "playsFor");
    const std::vector<Rule> rules{
        appendix_rule(kg),
        Rule{plays, {rel(kg, "isAffiliatedTo"), rel(kg, "inv_playsFor")}},
        Rule{plays, {rel(kg, "inv_playsFor")}},
    };
    const auto ranked = rank_rules(kg, rules);
    ASSERT_EQ(ranked.size(), 1u);
    EXPECT_EQ(ranked[0].rule, appendix_rule(kg));
    EXPECT_DOUBLE_EQ(ranked[0].score, 0.5);
    EXPECT_TRUE(rank_rules(kg, std::vector<Rule>{}).empty());
}

TEST(Ranker, MeasureNames) {
    for (auto m : {Measure::none, Measure::coverage, Measure::confidence, Measure::pca}) {
        EXPECT_EQ(parse_measure(to_string(m)), m);
    }
    EXPECT_FALSE(parse_measure("support").has_value());
    RuleQuality q{1, 2, 3, 2};
    EXPECT_DOUBLE_EQ(measure_value(q, Measure::none), 1.0);
    EXPECT_DOUBLE_EQ(measure_value(q, Measure::confidence), 1.0 / 3.0);
}

TEST(Ranker, OrderingAndRescore) {
    std::mt19937_64 rng(21);
    const auto g = random_kg(rng, {10, 3, 80, 0});
    const auto rules = candidate_rules(g.kg, rng, 60);
    for (auto m : {Measure::none, Measure::coverage, Measure::confidence, Measure::pca}) {
        RankOptions o;
        o.measure = m;
        const auto ranked = rank_rules(g.kg, rules, o);
        for (std::size_t i = 1; i < ranked.size(); ++i) {
            const auto& a = ranked[i - 1];
            const auto& b = ranked[i];
            EXPECT_TRUE(a.score > b.score || (a.score == b.score && a.quality.support >= b.quality.support));
        }
        auto rescored = rank_rules(g.kg, rules);
        rescore(rescored, m, g.kg);
        ASSERT_EQ(rescored.size(), ranked.size());
        for (std::size_t i = 0; i < ranked.size(); ++i) EXPECT_EQ(rescored[i].rule, ranked[i].rule);
        o.parallelism = 3;
        const auto threaded = rank_rules(g.kg, rules, o);
        for (std::size_t i = 0; i < ranked.size(); ++i) EXPECT_EQ(threaded[i].rule, ranked[i].rule);
    }
}

TEST(Ranker, MatchesBruteForceOracle) {
    std::mt19937_64 rng(1);
    for (int round = 0; round < 200; ++round) {
        const auto g = random_kg(rng, {10, 4, 120, 0});
        const Oracle oracle(g.kg, g.train);
        for (const auto& rule : candidate_rules(g.kg, rng, 25)) {
            const auto got = score_rule(g.kg, rule);
            const auto want = oracle.quality(rule);
            ASSERT_EQ(got.support, want.support);
            ASSERT_EQ(got.head_pairs, want.head);
            ASSERT_EQ(got.body_pairs, want.body);
            ASSERT_EQ(got.pca_body_pairs, want.pca_body);
        }
    }
}

TEST(Ranker, BodyPairsInverseSymmetry) {
    std::mt19937_64 rng(2);
    for (int round = 0; round < 100; ++round) {
        const auto g = random_kg(rng, {12, 4, 200, 0});
        for (const auto& rule : candidate_rules(g.kg, rng, 20)) {
            const auto fwd = body_pairs(g.kg, rule.body);
            auto back = body_pairs(g.kg, reversed_inverse(rule.body));
            for (auto& p : back) std::swap(p.head, p.tail);
            std::sort(back.begin(), back.end());
            ASSERT_EQ(fwd, back);
        }
    }
}
