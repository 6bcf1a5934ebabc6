#pragma once
// Rule quality under pair semantics: every count is a number of distinct
// (e, e') entity pairs over the train split.
//
//   support    = |body ∩ head|
//   coverage   = support / |head|
//   confidence = support / |body|
//   pca        = support / |{(e, e') in body : e has some head fact}|

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rulesmith/kg_store.hpp"
#include "rulesmith/rule_lang.hpp"

namespace rulesmith {

struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 0;

    // 0 when the denominator is 0.
    double value() const noexcept { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Ratio&) const = default;
};

struct RuleQuality {
    std::uint64_t support = 0;
    std::uint64_t head_pairs = 0;
    std::uint64_t body_pairs = 0;
    std::uint64_t pca_body_pairs = 0;

    Ratio coverage_ratio() const noexcept { return {support, head_pairs}; }
    Ratio confidence_ratio() const noexcept { return {support, body_pairs}; }
    Ratio pca_ratio() const noexcept { return {support, pca_body_pairs}; }

    double coverage() const noexcept { return coverage_ratio().value(); }
    double confidence() const noexcept { return confidence_ratio().value(); }
    double pca_confidence() const noexcept { return pca_ratio().value(); }

    bool operator==(const RuleQuality&) const = default;
};

enum class Measure { none, coverage, confidence, pca };

std::string_view to_string(Measure m);
std::optional<Measure> parse_measure(std::string_view name);

// The per-rule weight used by ranking and reasoning; `none` scores 1.
double measure_value(const RuleQuality& q, Measure m) noexcept;

struct RankedRule {
    Rule rule;
    RuleQuality quality;
    double score = 0.0;
};

// Distinct (e, e') connected by the body in train facts, sorted.
std::vector<EntityPair> body_pairs(const KnowledgeGraph& kg, std::span<const RelationId> body);

RuleQuality score_rule(const KnowledgeGraph& kg, const Rule& rule);

struct RankOptions {
    Measure measure = Measure::pca;
    std::size_t parallelism = 1;
};

// Drops zero-support rules and sorts the rest by score (desc), support
// (desc), then canonical text.
std::vector<RankedRule> rank_rules(const KnowledgeGraph& kg, std::span<const Rule> candidates,
                                   const RankOptions& options = {});

// Recomputes `score` from `quality` under another measure and re-sorts.
void rescore(std::vector<RankedRule>& rules, Measure measure, const KnowledgeGraph& kg);

}  // namespace rulesmith
