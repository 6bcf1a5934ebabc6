#include "rulesmith/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "rulesmith/backends.hpp"
#include "rulesmith/digest.hpp"
#include "rulesmith/errors.hpp"
#include "rulesmith/io.hpp"
#include "rulesmith/sampler.hpp"

namespace rulesmith {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kManifestName = "manifest.txt";

fs::path samples_path(const PipelineConfig& c, const KnowledgeGraph& kg, RelationId r) {
    return c.out_dir / "samples" / (relation_file_stem(kg.relation_name(r)) + ".txt");
}
fs::path candidates_path(const PipelineConfig& c, const KnowledgeGraph& kg, RelationId r) {
    return c.out_dir / "candidates" / (relation_file_stem(kg.relation_name(r)) + ".txt");
}
fs::path rejections_path(const PipelineConfig& c, const KnowledgeGraph& kg, RelationId r) {
    return c.out_dir / "candidates" / (relation_file_stem(kg.relation_name(r)) + ".rejected.txt");
}
fs::path ranked_path(const PipelineConfig& c, const KnowledgeGraph& kg, RelationId r) {
    return c.out_dir / "ranked" / (relation_file_stem(kg.relation_name(r)) + ".tsv");
}

std::string fixed(double v, int digits) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(digits) << v;
    return ss.str();
}

std::string join(const std::vector<std::size_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

std::unique_ptr<ChatBackend> make_backend(const PipelineConfig& config) {
    switch (config.backend) {
        case BackendKind::echo: return std::make_unique<EchoBackend>();
        case BackendKind::replay: return std::make_unique<ReplayBackend>(config.fixture);
        case BackendKind::live: {
            LiveOptions options;
            options.endpoint = config.endpoint;
            options.max_retries = config.max_retries;
            options.min_request_interval = std::chrono::milliseconds(config.min_request_interval_ms);
            return make_live_backend(std::move(options));
        }
    }
    throw ConfigError("unknown backend");
}

}  // namespace

std::string_view to_string(BackendKind kind) {
    switch (kind) {
        case BackendKind::echo: return "echo";
        case BackendKind::replay: return "replay";
        case BackendKind::live: return "live";
    }
    return "echo";
}

std::optional<BackendKind> parse_backend(std::string_view name) {
    for (auto k : {BackendKind::echo, BackendKind::replay, BackendKind::live}) {
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

void PipelineConfig::validate() const {
    if (max_length < 1) throw ConfigError("max_length must be >= 1");
    if (k < 1) throw ConfigError("k must be >= 1");
    if (d < 1) throw ConfigError("d must be >= 1");
    if (seed_count < 1) throw ConfigError("seed_count must be >= 1");
    if (top_n < 1) throw ConfigError("top_n must be >= 1");
    if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
    if (hits_at.empty()) throw ConfigError("hits_at must list at least one N");
    if (backend == BackendKind::replay && fixture.empty()) throw ConfigError("replay backend needs a fixture file");
}

GenerationConfig PipelineConfig::generation() const {
    GenerationConfig g;
    g.k = k;
    g.d = d;
    g.max_length = max_length;
    g.model = model;
    g.endpoint = endpoint;
    g.temperature = temperature;
    g.max_retries = max_retries;
    g.rng_seed = rng_seed;
    g.parallelism = parallelism;
    return g;
}

std::vector<std::pair<std::string, std::string>> PipelineConfig::manifest_entries() const {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("data_dir", data_dir.generic_string());
    e.emplace_back("max_length", std::to_string(max_length));
    e.emplace_back("k", std::to_string(k));
    e.emplace_back("d", std::to_string(d));
    e.emplace_back("seed_count", std::to_string(seed_count));
    e.emplace_back("per_seed_cap", std::to_string(per_seed_cap));
    e.emplace_back("rng_seed", std::to_string(rng_seed));
    e.emplace_back("backend", std::string(to_string(backend)));
    if (backend == BackendKind::replay) e.emplace_back("fixture", fixture.generic_string());
    if (backend == BackendKind::live) {
        e.emplace_back("endpoint", endpoint);
        e.emplace_back("max_retries", std::to_string(max_retries));
        e.emplace_back("min_request_interval_ms", std::to_string(min_request_interval_ms));
    }
    e.emplace_back("model", model);
    e.emplace_back("temperature", fixed(temperature, 3));
    e.emplace_back("input_rate_per_1k", fixed(rates.input_per_1k, 6));
    e.emplace_back("output_rate_per_1k", fixed(rates.output_per_1k, 6));
    e.emplace_back("measure", std::string(to_string(measure)));
    e.emplace_back("top_n", std::to_string(top_n));
    e.emplace_back("hits_at", join(hits_at));
    e.emplace_back("unranked", unranked == UnrankedPolicy::midpoint ? "midpoint" : "worst");
    return e;
}

KnowledgeGraph load_dataset(const PipelineConfig& config) {
    if (config.data_dir.empty()) throw ConfigError("no dataset directory given");
    auto kg = load_kg_dir(config.data_dir);
    Vocabulary check(kg);  // verbalization collisions
    return kg;
}

void run_ingest(const PipelineConfig& config, std::ostream& out) {
    const auto kg = load_dataset(config);
    kg.report().write(out);
}

StageSummary run_sample(const PipelineConfig& config, const KnowledgeGraph& kg) {
    config.validate();
    StageSummary summary;
    if (kg.num_relations() == 0) {
        summary.warnings.push_back("knowledge graph has no relations; no sample files written");
        spdlog::warn("sample: {}", summary.warnings.back());
        return summary;
    }
    const Vocabulary vocab(kg);
    SamplerOptions options;
    options.max_length = config.max_length;
    options.seed_count = config.seed_count;
    options.rng_seed = config.rng_seed;
    options.per_seed_cap = config.per_seed_cap;
    options.parallelism = config.parallelism;

    SampleStats stats;
    for (auto r : kg.relations()) {
        const auto paths = sample_closed_paths(kg, r, options, &stats);
        const auto samples = abstract_to_samples(paths);
        std::ostringstream ss;
        write_samples(ss, samples, vocab);
        write_file(samples_path(config, kg, r), ss.str());
        ++summary.files_written;
        ++summary.relations;
        summary.items += samples.size();
    }
    spdlog::info("sample: {} relations, {} seeds, {} paths ({} seeds truncated)", summary.relations, stats.seeds,
                 stats.paths, stats.truncated_seeds);
    return summary;
}

StageSummary run_generate(const PipelineConfig& config, const KnowledgeGraph& kg) {
    config.validate();
    auto backend = make_backend(config);
    if (!config.record_fixture.empty()) {
        RecordingBackend recorder(*backend, config.record_fixture);
        return run_generate(config, kg, recorder);
    }
    return run_generate(config, kg, *backend);
}

StageSummary run_generate(const PipelineConfig& config, const KnowledgeGraph& kg, ChatBackend& backend) {
    config.validate();
    const Vocabulary vocab(kg);
    const GenerationConfig gen = config.generation();
    StageSummary summary;
    TokenUsage total;
    std::vector<std::string> failed;
    std::ostringstream report;
    report << "backend=" << backend.name() << '\n';

    for (auto r : kg.relations()) {
        const auto spath = samples_path(config, kg, r);
        if (!fs::exists(spath)) continue;
        std::ifstream in(spath);
        const auto samples = read_samples(in, vocab, spath.string());

        CandidateRuleSet set;
        set.target = r;
        if (!samples.empty()) set = generate(vocab, r, samples, gen, backend);

        std::ostringstream rules, rejected;
        write_rules(rules, set.rules, vocab);
        write_rejections(rejected, set.rejected);
        write_file(candidates_path(config, kg, r), rules.str());
        write_file(rejections_path(config, kg, r), rejected.str());
        summary.files_written += 2;
        ++summary.relations;
        summary.items += set.rules.size();
        total += set.usage;

        const std::string& name = kg.relation_name(r);
        report << "relation." << name << ".queries=" << set.queries << '\n'
               << "relation." << name << ".rules=" << set.rules.size() << '\n'
               << "relation." << name << ".rejected=" << set.rejected.size() << '\n';
        if (set.partial()) {
            report << "relation." << name << ".failed_queries=" << set.failed_queries << '\n';
            failed.push_back(name + " (" + set.transport_error + ")");
        }
    }
    report << "rules=" << summary.items << '\n'
           << "input_tokens=" << total.input_tokens << '\n'
           << "output_tokens=" << total.output_tokens << '\n'
           << "cost=" << fixed(estimate_cost(total, config.rates), 3) << '\n';
    if (!failed.empty()) report << "partial=true\n";
    write_file(config.out_dir / "generation_report.txt", report.str());
    ++summary.files_written;

    if (!failed.empty()) {
        std::string msg = "generation incomplete for:";
        for (const auto& f : failed) msg += " " + f;
        throw TransportError(msg);
    }
    return summary;
}

StageSummary run_rank(const PipelineConfig& config, const KnowledgeGraph& kg) {
    config.validate();
    const Vocabulary vocab(kg);
    StageSummary summary;
    std::vector<RankedRule> all;
    for (auto r : kg.relations()) {
        const auto cpath = candidates_path(config, kg, r);
        if (!fs::exists(cpath)) continue;
        std::ifstream in(cpath);
        const auto candidates = read_rules(in, vocab, cpath.string());
        const auto ranked = rank_rules(kg, candidates, RankOptions{config.measure, config.parallelism});
        std::ostringstream ss;
        write_ranked(ss, ranked, vocab);
        write_file(ranked_path(config, kg, r), ss.str());
        ++summary.files_written;
        ++summary.relations;
        summary.items += ranked.size();
        all.insert(all.end(), ranked.begin(), ranked.end());
    }
    std::ostringstream report;
    report << "measure=" << to_string(config.measure) << '\n';
    rule_set_report(all).write(report, kg);
    write_file(config.out_dir / "rule_report.txt", report.str());
    ++summary.files_written;
    return summary;
}

RulesByRelation load_ranked_rules(const PipelineConfig& config, const KnowledgeGraph& kg) {
    const Vocabulary vocab(kg);
    RulesByRelation rules;
    for (auto r : kg.relations()) {
        const auto path = ranked_path(config, kg, r);
        if (!fs::exists(path)) continue;
        std::ifstream in(path);
        rules[r] = read_ranked(in, vocab, config.measure, path.string());
    }
    return rules;
}

EvalReport run_eval(const PipelineConfig& config, const KnowledgeGraph& kg) {
    config.validate();
    const auto rules = load_ranked_rules(config, kg);
    EvalOptions options;
    options.n_values = config.hits_at;
    options.unranked = config.unranked;
    options.parallelism = config.parallelism;
    const auto report = evaluate(kg, rules, options);

    std::ostringstream main, relations;
    main << "measure=" << to_string(config.measure) << '\n';
    report.write(main);
    for (auto r : report.missing_rule_relations) main << "missing_rules=" << kg.relation_name(r) << '\n';
    report.write_relations_tsv(relations, kg);
    write_file(config.out_dir / "eval_report.txt", main.str());
    write_file(config.out_dir / "eval_relations.tsv", relations.str());
    return report;
}

StageSummary run_reason(const PipelineConfig& config, const KnowledgeGraph& kg) {
    config.validate();
    if (config.queries.empty()) throw ConfigError("reason needs a query file");
    const auto rules = load_ranked_rules(config, kg);
    std::ifstream in(config.queries);
    if (!in) throw IoError("cannot open " + config.queries.string());
    const auto lines = read_queries(in, config.queries.string());

    StageSummary summary;
    Reasoner reasoner(kg);
    std::ostringstream out;
    const std::vector<RankedRule> none;
    for (const auto& q : lines) {
        const auto subject = kg.find_entity(q.subject);
        const auto relation = kg.find_relation(q.relation);
        if (!subject || !relation) {
            summary.warnings.push_back("unknown entity or relation in query: " + q.subject + " " + q.relation);
            spdlog::warn("reason: {}", summary.warnings.back());
            continue;
        }
        const CompletionQuery query{*subject, *relation};
        auto it = rules.find(*relation);
        const auto result = reasoner.answer(it == rules.end() ? none : it->second, query, config.top_n);
        write_answers(out, kg, query, result);
        ++summary.items;
    }
    write_file(config.out_dir / "answers.tsv", out.str());
    summary.files_written = 1;
    return summary;
}

EvalReport run_pipeline(const PipelineConfig& config) {
    config.validate();
    const auto kg = load_dataset(config);
    {
        std::ostringstream ss;
        kg.report().write(ss);
        write_file(config.out_dir / "load_report.txt", ss.str());
    }
    run_sample(config, kg);
    run_generate(config, kg);
    run_rank(config, kg);
    auto report = run_eval(config, kg);
    write_manifest(config);
    return report;
}

void write_manifest(const PipelineConfig& config) {
    std::vector<std::pair<std::string, std::string>> hashes;
    if (fs::exists(config.out_dir)) {
        for (const auto& entry : fs::recursive_directory_iterator(config.out_dir)) {
            if (!entry.is_regular_file()) continue;
            const auto rel = fs::relative(entry.path(), config.out_dir).generic_string();
            if (rel == kManifestName) continue;
            hashes.emplace_back(rel, sha256_hex(read_file(entry.path())));
        }
    }
    std::sort(hashes.begin(), hashes.end());
    std::ostringstream ss;
    ss << "# rulesmith manifest\n";
    for (const auto& [k, v] : config.manifest_entries()) ss << k << '=' << v << '\n';
    for (const auto& [path, hash] : hashes) ss << "sha256." << path << '=' << hash << '\n';
    write_file(config.out_dir / kManifestName, ss.str());
}

}  // namespace rulesmith
