// Acceptance suite. Each criterion prints one line:
//
//   [criterion N] PASS|FAIL|SKIP <name>: <details> (<seconds>s)
//
// Usage: rulesmith_acceptance [N ...]   (no arguments runs every criterion)
// Exit status: 0 all selected passed, 1 any failed, 77 all selected skipped.

#include <spdlog/spdlog.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "rulesmith/errors.hpp"
#include "rulesmith/evalkit.hpp"
#include "rulesmith/generator.hpp"
#include "rulesmith/io.hpp"
#include "rulesmith/parallel.hpp"
#include "rulesmith/pipeline.hpp"
#include "rulesmith/ranker.hpp"
#include "rulesmith/reasoner.hpp"
#include "rulesmith/rule_lang.hpp"
#include "rulesmith/sampler.hpp"

namespace fs = std::filesystem;
using namespace rulesmith;
using namespace rulesmith::testing;
using Clock = std::chrono::steady_clock;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
    Status status = Status::pass;
    std::string details;
};

struct Criterion {
    int number;
    std::string name;
    double budget_seconds;
    std::function<Outcome()> run;
};

Outcome fail(std::string why) { return {Status::fail, std::move(why)}; }

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// 1. Worked example on the five-fact graph, exact ratios, under 1 ms.

Outcome appendix_worked_example() {
    const auto start = Clock::now();
    const auto kg = appendix_kg();
    const Rule rule{rel(kg, "playsFor"), {rel(kg, "isAffiliatedTo")}};
    const auto q = score_rule(kg, rule);
    const double elapsed = seconds_since(start);

    std::ostringstream d;
    d << "support=" << q.support << " coverage=" << q.support << '/' << q.head_pairs << " confidence=" << q.support
      << '/' << q.body_pairs << " pca=" << q.support << '/' << q.pca_body_pairs << " in " << elapsed * 1e3 << "ms";
    const bool exact = q.support == 1 && q.coverage_ratio() == Ratio{1, 2} && q.confidence_ratio() == Ratio{1, 3} &&
                       q.pca_ratio() == Ratio{1, 2} && q.coverage() == 0.5 && q.confidence() == 1.0 / 3.0 &&
                       q.pca_confidence() == 0.5;
    if (!exact) return fail(d.str());
    if (elapsed >= 1e-3) return fail(d.str() + " exceeds 1ms");
    return {Status::pass, d.str()};
}

// ---------------------------------------------------------------------------
// 2 and 3. Oracle equivalence over a shared random corpus.

constexpr std::size_t kCorpusSize = 1000;

RandomKgShape corpus_shape() {
    RandomKgShape s;
    s.max_entities = 12;
    s.max_forward_relations = 8;
    s.max_triples = 200;
    return s;
}

// Distinct rules for every relation built from sampled closed-path bodies.
std::vector<Rule> sampled_rules(const KnowledgeGraph& kg, std::uint64_t seed) {
    SamplerOptions o;
    o.max_length = 3;
    o.seed_count = 20;
    o.per_seed_cap = 20;
    o.rng_seed = seed;
    std::vector<Rule> out;
    for (auto r : kg.relations()) {
        for (const auto& s : abstract_to_samples(sample_closed_paths(kg, r, o))) out.push_back(s.rule());
    }
    return out;
}

Outcome ranking_oracle() {
    std::mt19937_64 rng(20240601);
    std::size_t rules_checked = 0;
    std::size_t mismatches = 0;
    std::string first;
    for (std::size_t i = 0; i < kCorpusSize; ++i) {
        const auto g = random_kg(rng, corpus_shape());
        const Oracle oracle(g.kg, g.train);
        auto rules = sampled_rules(g.kg, i);
        // A few uniformly random bodies so zero-support rules are covered too.
        const auto nr = static_cast<std::uint32_t>(g.kg.num_relations());
        for (int j = 0; j < 5; ++j) {
            Rule r{RelationId{static_cast<std::uint32_t>(rng() % nr)}, {}};
            const std::size_t len = 1 + rng() % 3;
            for (std::size_t k = 0; k < len; ++k) r.body.push_back(RelationId{static_cast<std::uint32_t>(rng() % nr)});
            rules.push_back(r);
        }
        for (const auto& rule : rules) {
            const auto got = score_rule(g.kg, rule);
            const auto want = oracle.quality(rule);
            ++rules_checked;
            const bool same = got.support == want.support && got.head_pairs == want.head &&
                              got.body_pairs == want.body && got.pca_body_pairs == want.pca_body &&
                              got.coverage_ratio() == Ratio{want.support, want.head} &&
                              got.confidence_ratio() == Ratio{want.support, want.body} &&
                              got.pca_ratio() == Ratio{want.support, want.pca_body};
            if (!same && mismatches++ == 0) first = "graph " + std::to_string(i);
        }
    }
    std::ostringstream d;
    d << kCorpusSize << " graphs, " << rules_checked << " rules, " << mismatches << " mismatches";
    if (mismatches) return fail(d.str() + " (first in " + first + ")");
    return {Status::pass, d.str()};
}

Outcome reasoning_oracle() {
    std::mt19937_64 rng(20240601);
    std::size_t scores_checked = 0;
    std::size_t mismatches = 0;
    std::string first;
    for (std::size_t i = 0; i < kCorpusSize; ++i) {
        const auto g = random_kg(rng, corpus_shape());
        const Oracle oracle(g.kg, g.train);
        const auto rules = sampled_rules(g.kg, i);
        std::map<RelationId, std::vector<RankedRule>> by_head;
        for (const auto& r : rules) {
            by_head[r.head].push_back(RankedRule{r, {}, 1.0 / static_cast<double>(1 + rng() % 9)});
        }
        Reasoner reasoner(g.kg);
        const std::size_t n = g.kg.num_entities();
        for (const auto& [head, list] : by_head) {
            for (std::uint32_t e = 0; e < n; ++e) {
                const auto res = reasoner.answer(list, CompletionQuery{EntityId{e}, head});
                std::size_t positive = 0;
                for (std::uint32_t y = 0; y < n; ++y) {
                    double want = 0.0;
                    for (const auto& r : list) want += r.score * static_cast<double>(oracle.groundings(r.rule, e, y));
                    positive += want > 0.0;
                    ++scores_checked;
                    if (res.score_of(EntityId{y}) != want && mismatches++ == 0) first = "graph " + std::to_string(i);
                }
                if (res.ranked.size() != positive && mismatches++ == 0) first = "graph " + std::to_string(i);
            }
        }
    }
    std::ostringstream d;
    d << kCorpusSize << " graphs, " << scores_checked << " entity scores, " << mismatches << " mismatches";
    if (mismatches) return fail(d.str() + " (first in " + first + ")");
    return {Status::pass, d.str()};
}

// ---------------------------------------------------------------------------
// 4. Measure ordering on a graph with planted rules and injected noise.
//
// Four random base relations over 400 entities. Three head relations are
// generated from planted bodies (80% of the implied pairs kept, then split
// 80/20 into train/test). A fourth "decoy" relation is dense and random, and
// noise rules route heads through it so they have support but low precision.

struct PlantedGraph {
    KnowledgeGraph kg;
    std::vector<Rule> planted;
    std::vector<Rule> noise;
};

PlantedGraph planted_graph(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 400;
    auto name = [](std::size_t e) { return "e" + std::to_string(e); };
    const std::vector<std::string> base{"b0", "b1", "b2", "b3", "decoy"};
    const std::vector<std::size_t> edges{700, 700, 700, 700, 3000};

    std::map<std::string, std::set<std::pair<std::size_t, std::size_t>>> facts;
    for (std::size_t b = 0; b < base.size(); ++b) {
        while (facts[base[b]].size() < edges[b]) facts[base[b]].emplace(rng() % n, rng() % n);
    }
    auto compose = [&](const std::vector<std::string>& body) {
        std::set<std::pair<std::size_t, std::size_t>> cur;
        for (auto& [a, b] : facts[body[0]]) cur.emplace(a, b);
        for (std::size_t i = 1; i < body.size(); ++i) {
            std::set<std::pair<std::size_t, std::size_t>> next;
            for (auto& [a, m] : cur)
                for (auto& [x, y] : facts[body[i]])
                    if (x == m) next.emplace(a, y);
            cur.swap(next);
        }
        return cur;
    };

    const std::vector<std::pair<std::string, std::vector<std::string>>> planted{
        {"h0", {"b0", "b1"}},
        {"h1", {"b2"}},
        {"h2", {"b3", "b0"}},
    };
    KnowledgeGraph::Builder builder;
    for (const auto& [rel_name, set] : facts) {
        for (auto& [a, b] : set) builder.add(Split::train, name(a), rel_name, name(b));
    }
    for (const auto& [head, body] : planted) {
        for (auto& [a, b] : compose(body)) {
            if (rng() % 10 >= 8) continue;
            builder.add(rng() % 10 < 8 ? Split::train : Split::test, name(a), head, name(b));
        }
    }
    PlantedGraph out;
    out.kg = std::move(builder).build();
    const auto& kg = out.kg;
    for (const auto& [head, body] : planted) {
        Rule r{rel(kg, head), {}};
        for (const auto& b : body) r.body.push_back(rel(kg, b));
        out.planted.push_back(r);
    }
    // Noise: every head paired with decoy-based bodies of length 1 and 2.
    for (const auto& [head, body] : planted) {
        const auto h = rel(kg, head);
        const auto decoy = rel(kg, "decoy");
        out.noise.push_back(Rule{h, {decoy}});
        out.noise.push_back(Rule{h, {decoy, rel(kg, "b1")}});
        out.noise.push_back(Rule{h, {rel(kg, "b2"), decoy}});
        out.noise.push_back(Rule{h, {decoy, inverse(decoy)}});
    }
    return out;
}

std::vector<RelationId> reversed_inverse(const std::vector<RelationId>& body) {
    std::vector<RelationId> out;
    for (auto it = body.rbegin(); it != body.rend(); ++it) out.push_back(inverse(*it));
    return out;
}

Outcome measure_ordering() {
    const auto g = planted_graph(7);
    const auto& kg = g.kg;

    // Candidate pool per head direction: echo-style samples, plus planted and noise rules.
    SamplerOptions so;
    so.max_length = 2;
    std::map<RelationId, std::vector<Rule>> candidates;
    std::size_t noise_kept = 0;
    auto add_both = [&](const Rule& r) {
        candidates[r.head].push_back(r);
        candidates[inverse(r.head)].push_back(Rule{inverse(r.head), reversed_inverse(r.body)});
    };
    for (const auto& r : g.planted) add_both(r);
    for (const auto& r : g.noise) {
        if (score_rule(kg, r).support > 0) ++noise_kept;
        add_both(r);
    }
    for (const auto& p : g.planted) {
        for (auto head : {p.head, inverse(p.head)}) {
            for (const auto& s : abstract_to_samples(sample_closed_paths(kg, head, so))) {
                candidates[head].push_back(s.rule());
            }
        }
    }
    for (auto& [h, list] : candidates) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    std::map<Measure, double> mrr;
    for (auto m : {Measure::none, Measure::coverage, Measure::confidence, Measure::pca}) {
        RulesByRelation rules;
        for (const auto& [h, list] : candidates) rules[h] = rank_rules(kg, list, RankOptions{m, 1});
        mrr[m] = evaluate(kg, rules).combined.mrr;
    }
    std::ostringstream d;
    d.setf(std::ios::fixed);
    d.precision(4);
    d << "noise rules with support=" << noise_kept << " test facts=" << kg.report().forward_triples[2]
      << " MRR none=" << mrr[Measure::none] << " coverage=" << mrr[Measure::coverage]
      << " confidence=" << mrr[Measure::confidence] << " pca=" << mrr[Measure::pca];
    if (noise_kept < 10) return fail(d.str() + " (fewer than 10 noise rules)");
    const bool ordered = mrr[Measure::pca] >= mrr[Measure::confidence] &&
                         mrr[Measure::confidence] >= mrr[Measure::none] &&
                         mrr[Measure::pca] - mrr[Measure::none] >= 0.05;
    if (!ordered) return fail(d.str());
    return {Status::pass, d.str()};
}

// ---------------------------------------------------------------------------
// 5. Parser totality.

std::string mutate(std::string s, std::mt19937_64& rng) {
    static const std::vector<std::string> tokens{
        "(", ")", ",", "&", "<-", "<", "-", " ", "\t", "X", "Y", "Z_1", "Z_2", "x", "_", "inv_",
        "husband", "wife", "\xE2\x86\x90", "\xE2\x88\xA7", "\xE2\x86", "\xFF", "\0", ".", "1.", "?", "()"};
    const std::size_t edits = 1 + rng() % 4;
    for (std::size_t e = 0; e < edits; ++e) {
        const std::size_t pos = s.empty() ? 0 : rng() % (s.size() + 1);
        switch (rng() % 5) {
            case 0:
                if (!s.empty() && pos < s.size()) s.erase(pos, 1 + rng() % 3);
                break;
            case 1: s.insert(pos, tokens[rng() % tokens.size()]); break;
            case 2:
                if (pos < s.size()) s[pos] = static_cast<char>(rng() % 256);
                break;
            case 3: s.resize(pos); break;
            default:
                if (pos < s.size()) s.insert(pos, s.substr(pos, 1 + rng() % 6));
                break;
        }
    }
    return s;
}

Outcome parser_totality() {
    const Vocabulary family({"husband", "inv_husband", "wife", "inv_wife", "father", "inv_father", "mother",
                             "inv_mother", "brother", "inv_brother"});
    const std::vector<std::string> seeds{
        "husband(X,Y) <- inv_wife(X,Y)",
        "father(X,Y) <- husband(X,Z_1) & mother(Z_1,Y)",
        "husband(X,Y) <- husband(X,Z_1) & brother(Z_1, Y)",
        "husband(X,Y) <- wife(Y,Z_1) & brother(X,Z_1)",
        "mother(X,Y) \xE2\x86\x90 inv_husband(X,Z_1) \xE2\x88\xA7 father(Z_1,Z_2) \xE2\x88\xA7 inv_brother(Z_2,Y)",
    };
    std::mt19937_64 rng(99);
    std::size_t parsed = 0;
    std::size_t classified = 0;
    std::size_t unclassified = 0;
    std::size_t unstable = 0;
    std::array<std::size_t, 5> by_kind{};
    const std::size_t corpus = 20000;
    for (std::size_t i = 0; i < corpus; ++i) {
        const std::string input = mutate(seeds[rng() % seeds.size()], rng);
        try {
            const Rule r = parse_rule(RuleText{input}, family);
            ++parsed;
            if (parse_rule(print_rule(r, family), family) != r) ++unstable;
        } catch (const RuleParseError& e) {
            ++classified;
            ++by_kind[static_cast<std::size_t>(e.kind())];
        } catch (...) {
            ++unclassified;
        }
    }

    // Exhaustive round trip over a five-name vocabulary.
    const Vocabulary five({"alpha", "beta", "gamma_delta", "inv_alpha", "epsilon"});
    std::size_t exhaustive = 0;
    std::size_t roundtrip_failures = 0;
    std::vector<RelationId> body;
    std::function<void(RelationId, std::size_t)> walk = [&](RelationId head, std::size_t len) {
        if (body.size() == len) {
            const Rule r{head, body};
            ++exhaustive;
            try {
                if (parse_rule(print_rule(r, five), five) != r) ++roundtrip_failures;
            } catch (...) {
                ++roundtrip_failures;
            }
            return;
        }
        for (std::uint32_t b = 0; b < five.size(); ++b) {
            body.push_back(RelationId{b});
            walk(head, len);
            body.pop_back();
        }
    };
    for (std::uint32_t h = 0; h < five.size(); ++h)
        for (std::size_t len = 1; len <= 3; ++len) walk(RelationId{h}, len);

    std::ostringstream d;
    d << corpus << " mutated inputs: " << parsed << " parsed, " << classified << " classified errors (";
    for (std::size_t k = 0; k < by_kind.size(); ++k) {
        d << (k ? " " : "") << to_string(static_cast<RuleErrorKind>(k)) << '=' << by_kind[k];
    }
    d << "), " << unclassified << " unclassified, " << unstable << " unstable; " << exhaustive
      << " exhaustive round trips, " << roundtrip_failures << " failures";
    if (unclassified || unstable || roundtrip_failures || exhaustive != 5 * (5 + 25 + 125)) return fail(d.str());
    return {Status::pass, d.str()};
}

// ---------------------------------------------------------------------------
// 6. Family ingestion counts.

Outcome family_ingestion() {
    fs::path dir = fs::path(RULESMITH_DATA_DIR) / "family";
    if (const char* env = std::getenv("RULESMITH_FAMILY_DIR")) dir = env;
    if (!fs::exists(dir / "train.txt")) {
        return {Status::skip, "dataset not found at " + dir.string() + " (set RULESMITH_FAMILY_DIR)"};
    }
    const auto start = Clock::now();
    const auto kg = load_kg_dir(dir);
    const double elapsed = seconds_since(start);
    const auto& r = kg.report();
    std::ostringstream d;
    d << "entities=" << r.entities << " forward_relations=" << r.forward_relations
      << " forward_triples=" << r.total_forward_triples() << " relations=" << r.relations
      << " triples=" << r.total_triples() << " in " << elapsed << "s";
    const bool counts = r.entities == 3007 && r.forward_relations == 12 && r.total_forward_triples() == 28356 &&
                        r.relations == 24 && r.total_triples() == 56712;
    if (!counts) return fail(d.str());
    if (elapsed >= 2.0) return fail(d.str() + " exceeds 2s");
    return {Status::pass, d.str()};
}

// ---------------------------------------------------------------------------
// 7. Ranking 100 rules over a 1,000,000-triple graph.

Outcome scalability() {
    const std::size_t entities = 123'182;
    const std::size_t relations = 37;
    const std::size_t triples = 1'000'000;
    const auto start = Clock::now();
    std::mt19937_64 rng(31337);
    KnowledgeGraph::Builder b;
    std::vector<std::string> ent_names(entities), rel_names(relations);
    for (std::size_t i = 0; i < entities; ++i) ent_names[i] = "e" + std::to_string(i);
    for (std::size_t i = 0; i < relations; ++i) rel_names[i] = "r" + std::to_string(i);
    // Mildly skewed degrees: half the heads come from the first 10% of entities.
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(triples);
    while (seen.size() < triples) {
        const std::uint64_t h = (rng() & 1) ? rng() % (entities / 10) : rng() % entities;
        const std::uint64_t r = rng() % relations;
        const std::uint64_t t = rng() % entities;
        if (!seen.insert((h * relations + r) * entities + t).second) continue;
        b.add(Split::train, ent_names[h], rel_names[r], ent_names[t]);
    }
    const auto kg = std::move(b).build();
    const double build_time = seconds_since(start);

    SamplerOptions so;
    so.seed_count = 10;
    so.rng_seed = 1;
    std::vector<Rule> rules;
    for (auto r : kg.relations()) {
        for (const auto& s : abstract_to_samples(sample_closed_paths(kg, r, so))) rules.push_back(s.rule());
    }
    std::shuffle(rules.begin(), rules.end(), rng);
    // Top up with random length-3 rules so the workload always has 100.
    const auto nr = static_cast<std::uint32_t>(kg.num_relations());
    while (rules.size() < 100) {
        rules.push_back(Rule{RelationId{static_cast<std::uint32_t>(rng() % nr)},
                             {RelationId{static_cast<std::uint32_t>(rng() % nr)},
                              RelationId{static_cast<std::uint32_t>(rng() % nr)},
                              RelationId{static_cast<std::uint32_t>(rng() % nr)}}});
    }
    rules.resize(100);
    std::size_t long_rules = 0;
    for (const auto& r : rules) long_rules += r.body.size() == 3;

    const auto rank_start = Clock::now();
    const auto ranked = rank_rules(kg, rules, RankOptions{Measure::pca, default_parallelism()});
    const double rank_time = seconds_since(rank_start);
    const double total = seconds_since(start);

    std::ostringstream d;
    d << kg.report().forward_triples[0] << " train triples, " << kg.num_entities() << " entities; built in "
      << build_time << "s; ranked 100 rules (" << long_rules << " of length 3, " << ranked.size()
      << " with support) in " << rank_time << "s; total " << total << "s";
    if (kg.report().forward_triples[0] != triples) return fail(d.str() + " (wrong graph size)");
    if (total >= 600.0) return fail(d.str() + " exceeds 10 min");
    return {Status::pass, d.str()};
}

// ---------------------------------------------------------------------------
// 8. Offline pipeline on the bundled toy graph, twice.

Outcome offline_end_to_end() {
    const fs::path data = fs::path(RULESMITH_DATA_DIR) / "toy";
    TempDir a("accept-a"), b("accept-b");
    std::vector<std::string> manifests;
    std::vector<double> mrrs;
    const auto start = Clock::now();
    for (const auto* dir : {&a, &b}) {
        PipelineConfig c;
        c.data_dir = data;
        c.out_dir = dir->path() / "out";
        c.rng_seed = 2024;
        c.backend = BackendKind::echo;
        mrrs.push_back(run_pipeline(c).combined.mrr);
        manifests.push_back(read_file(c.out_dir / "manifest.txt"));
    }
    const double elapsed = seconds_since(start);
    std::ostringstream d;
    d << "MRR=" << mrrs[0] << " / " << mrrs[1] << ", manifests " << (manifests[0] == manifests[1] ? "identical" : "differ")
      << " (" << manifests[0].size() << " bytes), " << elapsed << "s";
    if (!(mrrs[0] > 0.0) || manifests[0] != manifests[1] || manifests[0].empty()) return fail(d.str());
    if (elapsed >= 30.0) return fail(d.str() + " exceeds 30s");
    return {Status::pass, d.str()};
}

// ---------------------------------------------------------------------------
// 9. Cost accounting at the default rates.

Outcome cost_accounting() {
    struct Case {
        TokenUsage usage;
        const char* expected;  // hand-computed, 3 decimals
    };
    const std::vector<Case> cases{
        {{1'000'000, 0}, "1.000"},   // 1000 * 0.001
        {{1000, 1000}, "0.003"},     // 0.001 + 0.002
        {{123'456, 7'890}, "0.139"},  // 0.123456 + 0.01578 = 0.139236
        {{2'500'000, 400'000}, "3.300"},
        {{0, 0}, "0.000"},
    };
    std::ostringstream d;
    bool ok = true;
    for (const auto& c : cases) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", estimate_cost(c.usage));
        d << c.usage.input_tokens << '/' << c.usage.output_tokens << "->" << buf << ' ';
        ok = ok && std::string(buf) == c.expected;
    }
    if (!ok) return fail(d.str());
    return {Status::pass, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    spdlog::set_level(spdlog::level::err);
    const std::vector<Criterion> criteria{
        {1, "appendix worked example", 0.001, appendix_worked_example},
        {2, "ranking oracle equivalence", 300, ranking_oracle},
        {3, "reasoning oracle equivalence", 300, reasoning_oracle},
        {4, "ranking measure ordering", 60, measure_ordering},
        {5, "parser totality", 60, parser_totality},
        {6, "dataset ingestion", 2, family_ingestion},
        {7, "scalability", 600, scalability},
        {8, "offline end to end", 30, offline_end_to_end},
        {9, "cost accounting", 1, cost_accounting},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int passed = 0, failed = 0, skipped = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.contains(c.number)) continue;
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double elapsed = seconds_since(start);
        if (o.status == Status::pass && elapsed >= c.budget_seconds) {
            o = fail(o.details + "; over budget of " + std::to_string(c.budget_seconds) + "s");
        }
        const char* label = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
        std::printf("[criterion %d] %s %s: %s (%.3fs)\n", c.number, label, c.name.c_str(), o.details.c_str(), elapsed);
        std::fflush(stdout);
        (o.status == Status::pass ? passed : o.status == Status::fail ? failed : skipped)++;
    }
    if (failed) return 1;
    if (passed == 0 && skipped > 0) return 77;
    return 0;
}
