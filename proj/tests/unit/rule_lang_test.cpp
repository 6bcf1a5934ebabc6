#include <gtest/gtest.h>

#include <random>

#include "rulesmith/rule_lang.hpp"

using namespace rulesmith;

namespace {

// forward/inverse pairs: husband 0/1, wife 2/3, father 4/5, mother 6/7, brother 8/9
Vocabulary family_vocab() {
    return Vocabulary({"husband", "inv_husband", "wife", "inv_wife", "father", "inv_father", "mother",
                       "inv_mother", "brother", "inv_brother"});
}

RelationId id(const Vocabulary& v, const std::string& name) { return *v.lookup(name); }

RuleErrorKind kind_of(const std::string& text, const Vocabulary& v, ParseOptions opts = {}) {
    try {
        parse_rule(RuleText{text}, v, opts);
    } catch (const RuleParseError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "parsed: " << text;
    return RuleErrorKind::grammar;
}

}  // namespace

TEST(RuleLang, ParsesInverseBody) {
    const auto v = family_vocab();
    const auto r = parse_rule(RuleText{"husband(X,Y) <- inv_wife(X,Y)"}, v);
    EXPECT_EQ(r.head, id(v, "husband"));
    EXPECT_EQ(r.body, (std::vector<RelationId>{id(v, "inv_wife")}));
}

TEST(RuleLang, ParsesTwoAtomBody) {
    const auto v = family_vocab();
    const auto r = parse_rule(RuleText{"father(X,Y) <- husband(X,Z_1) & mother(Z_1,Y)"}, v);
    EXPECT_EQ(r.head, id(v, "father"));
    EXPECT_EQ(r.body, (std::vector<RelationId>{id(v, "husband"), id(v, "mother")}));
}

TEST(RuleLang, AcceptsUnicodeConnectivesAndSpacing) {
    const auto v = family_vocab();
    const auto expected = parse_rule(RuleText{"father(X,Y) <- husband(X,Z_1) & mother(Z_1,Y)"}, v);
    EXPECT_EQ(parse_rule(RuleText{"  father( X , Y ) \xE2\x86\x90 husband(X,Z_1) \xE2\x88\xA7 mother(Z_1,Y) "}, v),
              expected);
    EXPECT_EQ(parse_rule(RuleText{"father(X,Y) <-- husband(X,A) & mother(A,Y)"}, v), expected);
    EXPECT_EQ(parse_rule(RuleText{"Father(X,Y) <- Husband(X,Z) & MOTHER(Z,Y)"}, v), expected);
}

TEST(RuleLang, BrokenChainIsChainError) {
    const auto v = family_vocab();
    EXPECT_EQ(kind_of("husband(X,Y) <- wife(Y,Z_1) & brother(X,Z_1)", v), RuleErrorKind::chain);
    EXPECT_EQ(kind_of("husband(X,X) <- wife(X,X)", v), RuleErrorKind::chain);
    EXPECT_EQ(kind_of("husband(X,Y) <- wife(X,Z) & mother(Z,Z) & father(Z,Y)", v), RuleErrorKind::chain);
    EXPECT_EQ(kind_of("husband(X,Y) <- wife(X,Z)", v), RuleErrorKind::chain);
}

TEST(RuleLang, GrammarErrors) {
    const auto v = family_vocab();
    EXPECT_EQ(kind_of("husband(X,Y) <-", v), RuleErrorKind::grammar);
    EXPECT_EQ(kind_of("husband(X,Y) wife(X,Y)", v), RuleErrorKind::grammar);
    EXPECT_EQ(kind_of("husband(X,Y) <- wife(x,Y)", v), RuleErrorKind::grammar);
    EXPECT_EQ(kind_of("husband(X,Y) <- wife(X,Y,Z)", v), RuleErrorKind::grammar);
    EXPECT_EQ(kind_of("husband(X,Y) <- wife(X,Y) &", v), RuleErrorKind::grammar);
    EXPECT_EQ(kind_of("(X,Y) <- wife(X,Y)", v), RuleErrorKind::grammar);
    EXPECT_EQ(kind_of("", v), RuleErrorKind::grammar);
}

TEST(RuleLang, LengthAndVocabularyAndHead) {
    const auto v = family_vocab();
    EXPECT_EQ(kind_of("husband(X,Y) <- wife(X,A) & wife(A,B) & wife(B,C) & wife(C,Y)", v), RuleErrorKind::length);
    EXPECT_EQ(kind_of("husband(X,Y) <- spouse(X,Y)", v), RuleErrorKind::vocabulary);
    EXPECT_EQ(kind_of("husband(X,Y) <- inv_spouse(X,Y)", v), RuleErrorKind::vocabulary);
    ParseOptions opts;
    opts.expected_head = id(v, "wife");
    EXPECT_EQ(kind_of("husband(X,Y) <- inv_wife(X,Y)", v, opts), RuleErrorKind::head_mismatch);
    ParseOptions short_rules;
    short_rules.max_length = 1;
    EXPECT_EQ(kind_of("father(X,Y) <- husband(X,Z_1) & mother(Z_1,Y)", v, short_rules), RuleErrorKind::length);
}

TEST(RuleLang, ErrorCarriesLine) {
    const auto v = family_vocab();
    try {
        parse_rule(RuleText{"husband(X,Y) <- spouse(X,Y)"}, v);
        FAIL();
    } catch (const RuleParseError& e) {
        EXPECT_EQ(e.line(), "husband(X,Y) <- spouse(X,Y)");
        EXPECT_NE(std::string(e.what()).find("VocabularyError"), std::string::npos);
    }
}

TEST(RuleLang, SelfReferentialRuleParses) {
    const auto v = family_vocab();
    const auto r = parse_rule(RuleText{"husband(X,Y) <- husband(X,Z_1) & brother(Z_1, Y)"}, v);
    EXPECT_EQ(r.body, (std::vector<RelationId>{id(v, "husband"), id(v, "brother")}));
}

TEST(RuleLang, PrintCanonicalForm) {
    const Vocabulary v({"GrandMother", "inv_GrandMother", "Mother", "inv_Mother", "Father", "inv_Father"});
    const Rule gm{*v.lookup("GrandMother"), {*v.lookup("Mother"), *v.lookup("Father")}};
    EXPECT_EQ(print_rule(gm, v).raw, "GrandMother(X,Y) <- Mother(X,Z_1) & Father(Z_1,Y)");
    const Rule one{*v.lookup("GrandMother"), {*v.lookup("inv_Father")}};
    EXPECT_EQ(print_rule(one, v).raw, "GrandMother(X,Y) <- inv_Father(X,Y)");
    const Rule three{*v.lookup("Father"), {RelationId{2}, RelationId{3}, RelationId{4}}};
    EXPECT_EQ(print_rule(three, v).raw, "Father(X,Y) <- Mother(X,Z_1) & inv_Mother(Z_1,Z_2) & Father(Z_2,Y)");
}

TEST(RuleLang, Verbalize) {
    EXPECT_EQ(verbalize("_member_meronym"), "member meronym");
    EXPECT_EQ(verbalize("husband"), "husband");
    EXPECT_EQ(verbalize("inv_wife"), "inv_wife");
    EXPECT_EQ(verbalize("inv__has_part"), "inv_has part");
    EXPECT_EQ(verbalize("/film/film/genre"), "film film genre");
}

TEST(RuleLang, VerbalizedNamesResolve) {
    const Vocabulary v({"_member_meronym", "inv__member_meronym", "/film/genre", "inv_/film/genre"});
    EXPECT_EQ(v.lookup("member meronym"), RelationId{0});
    EXPECT_EQ(v.lookup("inv_member meronym"), RelationId{1});
    EXPECT_EQ(v.lookup("film genre"), RelationId{2});
    EXPECT_EQ(v.lookup("INV_film genre"), RelationId{3});
    EXPECT_FALSE(v.lookup("film").has_value());
}

TEST(RuleLang, VocabularyCollisionRejected) {
    EXPECT_THROW(Vocabulary({"has_part", "inv_has_part", "has part", "inv_has part"}), InputError);
}

TEST(RuleLang, ExtractRuleLines) {
    const std::string response =
        "Here are some rules:\n"
        "1. husband(X,Y) <- inv_wife(X,Y)\n"
        "2) father(X,Y) <- husband(X,Z_1) & mother(Z_1,Y).\n"
        "- wife(X,Y) <- inv_husband(X,Y)\n"
        "Note: rules with <- are chains\n"
        "\n";
    const auto lines = extract_rule_lines(response);
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0].raw, "husband(X,Y) <- inv_wife(X,Y)");
    EXPECT_EQ(lines[1].raw, "father(X,Y) <- husband(X,Z_1) & mother(Z_1,Y)");
    EXPECT_EQ(lines[2].raw, "wife(X,Y) <- inv_husband(X,Y)");
    EXPECT_EQ(lines[3].raw, "Note: rules with <- are chains");
}

TEST(RuleLang, PrintParseRoundTripRandom) {
    const auto v = family_vocab();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        Rule r;
        r.head = RelationId{static_cast<std::uint32_t>(rng() % v.size())};
        const std::size_t len = 1 + rng() % 3;
        for (std::size_t j = 0; j < len; ++j) r.body.push_back(RelationId{static_cast<std::uint32_t>(rng() % v.size())});
        EXPECT_EQ(parse_rule(print_rule(r, v), v), r);
        EXPECT_EQ(parse_rule(RuleText{verbalize_rule(r, v)}, v), r);
    }
}
