#include "rulesmith/ranker.hpp"

#include <algorithm>

#include "rulesmith/compose.hpp"
#include "rulesmith/parallel.hpp"

namespace rulesmith {

namespace {

std::vector<RelationId> reversed_inverse(std::span<const RelationId> body) {
    std::vector<RelationId> out(body.rbegin(), body.rend());
    for (auto& r : out) r = inverse(r);
    return out;
}

RuleQuality score_with(const KnowledgeGraph& kg, const Rule& rule, PathComposer& composer) {
    RuleQuality q;
    q.head_pairs = kg.relation_pairs(rule.head).size();
    if (rule.body.empty()) return q;

    const auto forward_sources = kg.sources(rule.body.front());
    const auto backward_sources = kg.sources(inverse(rule.body.back()));

    if (forward_sources.size() <= backward_sources.size()) {
        for (auto s : forward_sources) {
            const auto reached = composer.reach(s, rule.body);
            if (reached.empty()) continue;
            q.body_pairs += reached.size();
            const auto heads = kg.successors(s, rule.head);
            if (heads.empty()) continue;
            q.pca_body_pairs += reached.size();
            for (auto t : heads) q.support += composer.reached(t) ? 1 : 0;
        }
    } else {
        const auto back = reversed_inverse(rule.body);
        const RelationId inv_head = inverse(rule.head);
        for (auto t : backward_sources) {
            const auto reached = composer.reach(t, back);
            if (reached.empty()) continue;
            q.body_pairs += reached.size();
            for (auto s : reached) q.pca_body_pairs += kg.has_successor(s, rule.head) ? 1 : 0;
            for (auto s : kg.successors(t, inv_head)) q.support += composer.reached(s) ? 1 : 0;
        }
    }
    return q;
}

void sort_ranked(std::vector<RankedRule>& rules, const KnowledgeGraph& kg) {
    const Vocabulary vocab(kg);
    std::vector<std::pair<std::string, RankedRule>> keyed;
    keyed.reserve(rules.size());
    for (auto& r : rules) keyed.emplace_back(print_rule(r.rule, vocab).raw, std::move(r));
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.second.score != b.second.score) return a.second.score > b.second.score;
        if (a.second.quality.support != b.second.quality.support) {
            return a.second.quality.support > b.second.quality.support;
        }
        return a.first < b.first;
    });
    rules.clear();
    for (auto& [_, r] : keyed) rules.push_back(std::move(r));
}

}  // namespace

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::none: return "none";
        case Measure::coverage: return "coverage";
        case Measure::confidence: return "confidence";
        case Measure::pca: return "pca";
    }
    return "pca";
}

std::optional<Measure> parse_measure(std::string_view name) {
    for (auto m : {Measure::none, Measure::coverage, Measure::confidence, Measure::pca}) {
        if (name == to_string(m)) return m;
    }
    return std::nullopt;
}

double measure_value(const RuleQuality& q, Measure m) noexcept {
    switch (m) {
        case Measure::none: return 1.0;
        case Measure::coverage: return q.coverage();
        case Measure::confidence: return q.confidence();
        case Measure::pca: return q.pca_confidence();
    }
    return 0.0;
}

std::vector<EntityPair> body_pairs(const KnowledgeGraph& kg, std::span<const RelationId> body) {
    std::vector<EntityPair> out;
    if (body.empty()) return out;
    PathComposer composer(kg);
    for (auto s : kg.sources(body.front())) {
        for (auto t : composer.reach(s, body)) out.push_back(EntityPair{s, t});
    }
    std::sort(out.begin(), out.end());
    return out;
}

RuleQuality score_rule(const KnowledgeGraph& kg, const Rule& rule) {
    PathComposer composer(kg);
    return score_with(kg, rule, composer);
}

std::vector<RankedRule> rank_rules(const KnowledgeGraph& kg, std::span<const Rule> candidates,
                                   const RankOptions& options) {
    std::vector<RuleQuality> qualities(candidates.size());
    const std::size_t workers = std::min(std::max<std::size_t>(options.parallelism, 1), candidates.size());
    if (workers > 0) {
        // Static striping: worker w scores rules w, w + workers, ...
        parallel_for(workers, workers, [&](std::size_t w) {
            PathComposer composer(kg);
            for (std::size_t i = w; i < candidates.size(); i += workers) {
                qualities[i] = score_with(kg, candidates[i], composer);
            }
        });
    }

    std::vector<RankedRule> ranked;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (qualities[i].support == 0) continue;
        ranked.push_back(RankedRule{candidates[i], qualities[i], measure_value(qualities[i], options.measure)});
    }
    sort_ranked(ranked, kg);
    return ranked;
}

void rescore(std::vector<RankedRule>& rules, Measure measure, const KnowledgeGraph& kg) {
    for (auto& r : rules) r.score = measure_value(r.quality, measure);
    sort_ranked(rules, kg);
}

}  // namespace rulesmith
