#include "rulesmith/reasoner.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>

#include "rulesmith/errors.hpp"

namespace rulesmith {

double QueryResult::score_of(EntityId e) const noexcept {
    for (const auto& s : ranked) {
        if (s.entity == e) return s.score;
    }
    return 0.0;
}

std::uint32_t grounding_count(const KnowledgeGraph& kg, std::span<const RelationId> body, EntityId from,
                              EntityId to) {
    PathComposer composer(kg);
    for (const auto& ec : composer.count_paths(from, body)) {
        if (ec.entity == to) return ec.count;
    }
    return 0;
}

Reasoner::Reasoner(const KnowledgeGraph& kg) : kg_(&kg), composer_(kg), scores_(kg.num_entities(), 0.0) {}

QueryResult Reasoner::answer(std::span<const RankedRule> rules, const CompletionQuery& query, std::size_t top_n) {
    QueryResult result;
    if (rules.empty()) {
        spdlog::debug("reasoner: no rules for relation {}", kg_->relation_name(query.relation));
        return result;
    }
    touched_.clear();
    for (const auto& rule : rules) {
        if (rule.rule.head != query.relation) {
            throw InputError("rule head " + kg_->relation_name(rule.rule.head) + " does not match query relation " +
                             kg_->relation_name(query.relation));
        }
        if (rule.score <= 0.0) continue;
        // r <- r only ever grounds the queried triple itself.
        if (rule.rule.body.size() == 1 && rule.rule.body[0] == rule.rule.head) continue;
        bool saturated = false;
        for (const auto& [entity, count] : composer_.count_paths(query.subject, rule.rule.body, &saturated)) {
            auto& slot = scores_[entity.value];
            if (slot == 0.0) touched_.push_back(entity);
            slot += rule.score * static_cast<double>(count);
        }
        if (saturated) {
            result.saturated = true;
            spdlog::warn("reasoner: grounding count saturated for subject {}", kg_->entity_name(query.subject));
        }
    }
    result.ranked.reserve(touched_.size());
    for (auto e : touched_) {
        if (scores_[e.value] > 0.0) result.ranked.push_back(ScoredEntity{e, scores_[e.value]});
        scores_[e.value] = 0.0;
    }
    std::sort(result.ranked.begin(), result.ranked.end(), [](const ScoredEntity& a, const ScoredEntity& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.entity < b.entity;
    });
    result.candidates = result.ranked.size();
    if (top_n != 0 && result.ranked.size() > top_n) result.ranked.resize(top_n);
    return result;
}

QueryResult answer(const KnowledgeGraph& kg, std::span<const RankedRule> rules, const CompletionQuery& query,
                   std::size_t top_n) {
    Reasoner reasoner(kg);
    return reasoner.answer(rules, query, top_n);
}

}  // namespace rulesmith
