#pragma once
// Prompt construction and multi-query rule generation.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rulesmith/backends.hpp"
#include "rulesmith/kg_store.hpp"
#include "rulesmith/rule_lang.hpp"
#include "rulesmith/sampler.hpp"

namespace rulesmith {

inline constexpr std::string_view kSampleBlockHeader = "Now we have the following rules:";

struct GenerationConfig {
    std::size_t k = 50;  // samples per query
    std::size_t d = 10;  // queries per relation
    std::size_t max_length = kDefaultMaxRuleLength;
    std::string model = "gpt-3.5-turbo-0613";
    std::string endpoint = "https://api.openai.com/v1";
    double temperature = 0.0;
    std::size_t max_retries = 3;
    std::uint64_t rng_seed = 0;
    std::size_t parallelism = 1;

    // Throws ConfigError.
    void validate() const;
};

struct PromptBatch {
    RelationId target;
    std::vector<std::string> queries;
    std::vector<std::vector<std::size_t>> sample_ids;  // indices into the sample pool, per query
};

struct CostRates {
    double input_per_1k = 0.001;
    double output_per_1k = 0.002;
};

double estimate_cost(const TokenUsage& usage, const CostRates& rates = {});

struct Rejection {
    RuleText text;
    RuleErrorKind kind;
    std::string detail;
};

struct CandidateRuleSet {
    RelationId target;
    std::vector<Rule> rules;  // unique, sorted
    std::vector<Rejection> rejected;
    TokenUsage usage;
    std::size_t queries = 0;
    std::size_t empty_queries = 0;
    std::size_t failed_queries = 0;
    std::string transport_error;  // first failure, when failed_queries > 0

    bool partial() const noexcept { return failed_queries > 0; }
};

std::string build_prompt(RelationId target, std::span<const RuleSample> samples, const Vocabulary& vocab);

// d queries, each embedding min(k, |samples|) samples drawn without
// replacement; draws are independent across queries.
PromptBatch build_prompt_batch(RelationId target, std::span<const RuleSample> samples, const Vocabulary& vocab,
                               const GenerationConfig& config);

// Parses one response into `out`, returning the number of rules accepted.
std::size_t collect_rules(std::string_view response, RelationId target, const Vocabulary& vocab,
                          std::size_t max_length, std::vector<Rule>& rules, std::vector<Rejection>& rejected);

// Issues the batch against `backend`. TransportError on a query is recorded
// and the remaining queries still run; AuthError propagates.
CandidateRuleSet generate(const Vocabulary& vocab, RelationId target, std::span<const RuleSample> samples,
                          const GenerationConfig& config, ChatBackend& backend);

}  // namespace rulesmith
