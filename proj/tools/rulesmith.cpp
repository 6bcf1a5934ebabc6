// rulesmith: closed-path sampling, LLM rule generation, rule ranking and
// rule-based link prediction over a TSV knowledge graph.
//
// Exit codes: 0 success, 1 error, 2 authentication failure,
// 3 transport failure (partial outputs kept), 4 invalid configuration.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <iostream>

#include "rulesmith/errors.hpp"
#include "rulesmith/pipeline.hpp"

namespace {

using namespace rulesmith;

enum ExitCode : int { kOk = 0, kFailure = 1, kAuth = 2, kTransport = 3, kConfig = 4 };

int run_stage(const std::string& name, const PipelineConfig& config) {
    if (name == "ingest") {
        run_ingest(config, std::cout);
        return kOk;
    }
    if (name == "pipeline") {
        const auto report = run_pipeline(config);
        report.write(std::cout);
        return kOk;
    }
    const auto kg = load_dataset(config);
    if (name == "sample") {
        const auto s = run_sample(config, kg);
        std::cout << "relations=" << s.relations << "\nsample_files=" << s.files_written << "\nsamples=" << s.items
                  << '\n';
        for (const auto& w : s.warnings) std::cout << "warning=" << w << '\n';
    } else if (name == "generate") {
        const auto s = run_generate(config, kg);
        std::cout << "relations=" << s.relations << "\ncandidate_rules=" << s.items << '\n';
    } else if (name == "rank") {
        const auto s = run_rank(config, kg);
        std::cout << "relations=" << s.relations << "\nranked_rules=" << s.items << '\n';
    } else if (name == "eval") {
        run_eval(config, kg).write(std::cout);
    } else if (name == "reason") {
        const auto s = run_reason(config, kg);
        std::cout << "queries=" << s.items << '\n';
        for (const auto& w : s.warnings) std::cout << "warning=" << w << '\n';
    }
    write_manifest(config);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_mt("rulesmith"));
    spdlog::set_level(spdlog::level::warn);

    CLI::App app{"Mine, rank and apply logical rules over a knowledge graph"};
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "key=value configuration file (command-line flags take precedence)");

    PipelineConfig config;
    std::string backend = "echo";
    std::string measure = "pca";
    std::string unranked = "midpoint";
    std::string log_level = "warn";

    app.add_option("--data", config.data_dir, "Directory with train.txt, valid.txt, test.txt");
    app.add_option("--out", config.out_dir, "Working directory for stage outputs")->capture_default_str();
    app.add_option("--max-len", config.max_length, "Maximum rule body length")->capture_default_str();
    app.add_option("-k,--samples-per-query", config.k, "Rule samples per query")->capture_default_str();
    app.add_option("-d,--queries", config.d, "Queries per relation")->capture_default_str();
    app.add_option("--seed-count", config.seed_count, "Seed facts sampled per relation")->capture_default_str();
    app.add_option("--per-seed-cap", config.per_seed_cap, "Closed paths kept per seed (0 = unlimited)")
        ->capture_default_str();
    app.add_option("--seed", config.rng_seed, "Random seed for all sampling")->capture_default_str();
    app.add_option("--backend", backend, "Generator backend")
        ->check(CLI::IsMember({"echo", "replay", "live"}))
        ->capture_default_str();
    app.add_option("--fixture", config.fixture, "Replay fixture (hash<TAB>base64 response)");
    app.add_option("--record", config.record_fixture, "Write responses to this replay fixture");
    app.add_option("--model", config.model, "Chat model name")->capture_default_str();
    app.add_option("--endpoint", config.endpoint, "OpenAI-compatible API base URL")->capture_default_str();
    app.add_option("--temperature", config.temperature, "Sampling temperature")->capture_default_str();
    app.add_option("--max-retries", config.max_retries, "Retries on transport errors")->capture_default_str();
    app.add_option("--min-interval-ms", config.min_request_interval_ms, "Minimum delay between requests")
        ->capture_default_str();
    app.add_option("--input-rate", config.rates.input_per_1k, "Cost per 1000 input tokens")->capture_default_str();
    app.add_option("--output-rate", config.rates.output_per_1k, "Cost per 1000 output tokens")
        ->capture_default_str();
    app.add_option("--measure", measure, "Ranking measure")
        ->check(CLI::IsMember({"none", "coverage", "confidence", "pca"}))
        ->capture_default_str();
    app.add_option("--top-n", config.top_n, "Answers kept per query")->capture_default_str();
    app.add_option("--hits", config.hits_at, "N values for Hits@N")->delimiter(',')->capture_default_str();
    app.add_option("--unranked", unranked, "Rank assigned to unscored true answers")
        ->check(CLI::IsMember({"midpoint", "worst"}))
        ->capture_default_str();
    app.add_option("--query-file", config.queries, "Queries for the reason stage");
    app.add_option("-j,--parallelism", config.parallelism, "Worker threads")->capture_default_str();
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error")->capture_default_str();

    const std::vector<std::pair<std::string, std::string>> stages{
        {"ingest", "Load the dataset and print the load report"},
        {"sample", "Write closed-path rule samples per relation"},
        {"generate", "Prompt the backend and collect candidate rules"},
        {"rank", "Score candidates and write ranked rule files"},
        {"reason", "Answer completion queries with ranked rules"},
        {"eval", "Filtered MRR / Hits@N over the test split"},
        {"pipeline", "Run ingest, sample, generate, rank and eval"},
    };
    for (const auto& [name, help] : stages) app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    spdlog::set_level(spdlog::level::from_str(log_level));
    config.backend = *parse_backend(backend);
    config.measure = *parse_measure(measure);
    config.unranked = unranked == "worst" ? UnrankedPolicy::worst : UnrankedPolicy::midpoint;

    const std::string stage = app.get_subcommands().front()->get_name();
    try {
        config.validate();
        return run_stage(stage, config);
    } catch (const AuthError& e) {
        std::cerr << "rulesmith " << stage << ": authentication error: " << e.what() << '\n';
        return kAuth;
    } catch (const TransportError& e) {
        std::cerr << "rulesmith " << stage << ": transport error: " << e.what() << '\n';
        return kTransport;
    } catch (const ConfigError& e) {
        std::cerr << "rulesmith " << stage << ": configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "rulesmith " << stage << ": " << e.what() << '\n';
        return kFailure;
    }
}
