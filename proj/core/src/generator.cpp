#include "rulesmith/generator.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <mutex>
#include <numeric>

#include "rulesmith/errors.hpp"
#include "rulesmith/parallel.hpp"
#include "rulesmith/random.hpp"

namespace rulesmith {

namespace {

constexpr std::string_view kPreamble =
    "Logical rules define the relationship between two entities: X and Y. Each rule is written in the form of a "
    "logical implication, which states that if the conditions on the right-hand side (rule body) are satisfied, "
    "then the statement on the left-hand side (rule head) holds true.";

std::string relation_list(const Vocabulary& vocab) {
    std::vector<std::string> names;
    names.reserve(vocab.size());
    for (std::uint32_t i = 0; i < vocab.size(); ++i) names.push_back(verbalize(vocab.name(RelationId{i})));
    std::sort(names.begin(), names.end());
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) out += ", ";
        out += names[i];
    }
    return out;
}

}  // namespace

void GenerationConfig::validate() const {
    if (k < 1) throw ConfigError("k must be >= 1");
    if (d < 1) throw ConfigError("d must be >= 1");
    if (max_length < 1) throw ConfigError("max rule length must be >= 1");
}

double estimate_cost(const TokenUsage& usage, const CostRates& rates) {
    return static_cast<double>(usage.input_tokens) / 1000.0 * rates.input_per_1k +
           static_cast<double>(usage.output_tokens) / 1000.0 * rates.output_per_1k;
}

std::string build_prompt(RelationId target, std::span<const RuleSample> samples, const Vocabulary& vocab) {
    std::string prompt(kPreamble);
    prompt += "\n\n";
    prompt += kSampleBlockHeader;
    prompt += '\n';
    for (const auto& s : samples) {
        prompt += verbalize_rule(s.rule(), vocab);
        prompt += '\n';
    }
    prompt += "\nBased on the above rules, please generate as many of the most important rules for the rule head: \"";
    prompt += verbalize(vocab.name(target));
    prompt += "(X,Y)\" as possible. Please only select predicates form: ";
    prompt += relation_list(vocab);
    prompt += ". Return the rules only without any explanations.";
    return prompt;
}

PromptBatch build_prompt_batch(RelationId target, std::span<const RuleSample> samples, const Vocabulary& vocab,
                               const GenerationConfig& config) {
    config.validate();
    PromptBatch batch;
    batch.target = target;
    if (samples.empty()) return batch;

    Rng rng = derive_rng(config.rng_seed, (std::uint64_t{1} << 32) | target.value);
    std::vector<std::size_t> pool(samples.size());
    const std::size_t take = std::min(config.k, samples.size());
    std::vector<RuleSample> chosen;
    for (std::size_t q = 0; q < config.d; ++q) {
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        partial_shuffle(std::span<std::size_t>(pool), take, rng);
        std::vector<std::size_t> ids(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
        std::sort(ids.begin(), ids.end());
        chosen.clear();
        for (auto i : ids) chosen.push_back(samples[i]);
        batch.queries.push_back(build_prompt(target, chosen, vocab));
        batch.sample_ids.push_back(std::move(ids));
    }
    return batch;
}

std::size_t collect_rules(std::string_view response, RelationId target, const Vocabulary& vocab,
                          std::size_t max_length, std::vector<Rule>& rules, std::vector<Rejection>& rejected) {
    std::size_t accepted = 0;
    const ParseOptions options{max_length, target};
    for (auto& line : extract_rule_lines(response)) {
        try {
            rules.push_back(parse_rule(line, vocab, options));
            ++accepted;
        } catch (const RuleParseError& e) {
            rejected.push_back(Rejection{std::move(line), e.kind(), e.what()});
        }
    }
    return accepted;
}

CandidateRuleSet generate(const Vocabulary& vocab, RelationId target, std::span<const RuleSample> samples,
                          const GenerationConfig& config, ChatBackend& backend) {
    const PromptBatch batch = build_prompt_batch(target, samples, vocab, config);

    struct QueryResult {
        std::vector<Rule> rules;
        std::vector<Rejection> rejected;
        TokenUsage usage;
        std::string error;
        bool failed = false;
    };
    std::vector<QueryResult> results(batch.queries.size());
    parallel_for(batch.queries.size(), config.parallelism, [&](std::size_t q) {
        auto& r = results[q];
        try {
            const auto response = backend.complete(ChatRequest{config.model, batch.queries[q], config.temperature});
            r.usage = response.usage;
            collect_rules(response.content, target, vocab, config.max_length, r.rules, r.rejected);
        } catch (const TransportError& e) {
            r.failed = true;
            r.error = e.what();
        }
    });

    CandidateRuleSet out;
    out.target = target;
    out.queries = batch.queries.size();
    for (std::size_t q = 0; q < results.size(); ++q) {
        auto& r = results[q];
        out.usage += r.usage;
        if (r.failed) {
            ++out.failed_queries;
            if (out.transport_error.empty()) out.transport_error = r.error;
            spdlog::error("generate: query {} for {} failed: {}", q, vocab.name(target), r.error);
            continue;
        }
        if (r.rules.empty()) {
            ++out.empty_queries;
            spdlog::info("generate: query {} for {} returned no parseable rules", q, vocab.name(target));
        }
        out.rules.insert(out.rules.end(), r.rules.begin(), r.rules.end());
        for (auto& rej : r.rejected) out.rejected.push_back(std::move(rej));
    }
    std::sort(out.rules.begin(), out.rules.end());
    out.rules.erase(std::unique(out.rules.begin(), out.rules.end()), out.rules.end());
    return out;
}

}  // namespace rulesmith
