#pragma once
// End-to-end stages over a working directory:
//
//   <out>/samples/<relation>.txt
//   <out>/candidates/<relation>.txt, <relation>.rejected.txt
//   <out>/generation_report.txt
//   <out>/ranked/<relation>.tsv
//   <out>/rule_report.txt
//   <out>/eval_report.txt, eval_relations.tsv
//   <out>/answers.tsv
//   <out>/manifest.txt
//
// Each stage reads only the previous stage's files, so running the stages
// one by one produces the same outputs as run_pipeline().

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rulesmith/evalkit.hpp"
#include "rulesmith/generator.hpp"
#include "rulesmith/kg_store.hpp"
#include "rulesmith/ranker.hpp"

namespace rulesmith {

enum class BackendKind { echo, replay, live };

std::string_view to_string(BackendKind kind);
std::optional<BackendKind> parse_backend(std::string_view name);

struct PipelineConfig {
    std::filesystem::path data_dir;  // holds train.txt / valid.txt / test.txt
    std::filesystem::path out_dir = "rulesmith-out";

    std::size_t max_length = kDefaultMaxRuleLength;
    std::size_t k = 50;
    std::size_t d = 10;
    std::size_t seed_count = 500;
    std::size_t per_seed_cap = 100;
    std::uint64_t rng_seed = 0;

    BackendKind backend = BackendKind::echo;
    std::filesystem::path fixture;         // replay input
    std::filesystem::path record_fixture;  // optional: live responses saved for replay
    std::string model = "gpt-3.5-turbo-0613";
    std::string endpoint = "https://api.openai.com/v1";
    double temperature = 0.0;
    std::size_t max_retries = 3;
    std::size_t min_request_interval_ms = 0;
    CostRates rates;

    Measure measure = Measure::pca;
    std::size_t top_n = 10;
    std::vector<std::size_t> hits_at{1, 10};
    UnrankedPolicy unranked = UnrankedPolicy::midpoint;
    std::filesystem::path queries;  // reason stage input

    std::size_t parallelism = 1;

    // Throws ConfigError.
    void validate() const;

    GenerationConfig generation() const;

    // Ordered key=value pairs recorded in the manifest (no output paths).
    std::vector<std::pair<std::string, std::string>> manifest_entries() const;
};

struct StageSummary {
    std::size_t relations = 0;
    std::size_t files_written = 0;
    std::size_t items = 0;  // samples / rules / ranked rules / queries
    std::vector<std::string> warnings;
};

KnowledgeGraph load_dataset(const PipelineConfig& config);

void run_ingest(const PipelineConfig& config, std::ostream& out);

StageSummary run_sample(const PipelineConfig& config, const KnowledgeGraph& kg);

// Throws TransportError after writing all outputs when any relation had a
// failed query; the message names the relations.
StageSummary run_generate(const PipelineConfig& config, const KnowledgeGraph& kg);
StageSummary run_generate(const PipelineConfig& config, const KnowledgeGraph& kg, ChatBackend& backend);

StageSummary run_rank(const PipelineConfig& config, const KnowledgeGraph& kg);

// Ranked rules for every relation that has a ranked file.
RulesByRelation load_ranked_rules(const PipelineConfig& config, const KnowledgeGraph& kg);

EvalReport run_eval(const PipelineConfig& config, const KnowledgeGraph& kg);

StageSummary run_reason(const PipelineConfig& config, const KnowledgeGraph& kg);

EvalReport run_pipeline(const PipelineConfig& config);

// Config plus sha256 of every file under out_dir (relative paths, sorted).
void write_manifest(const PipelineConfig& config);

}  // namespace rulesmith
