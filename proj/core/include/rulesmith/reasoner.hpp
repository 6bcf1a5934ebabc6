#pragma once
// Rule application for completion queries (e, r, ?):
//
//   score(e') = sum over rules of s(rule) * #groundings of body(rule) from e to e'
//
// Groundings are counted per path (distinct intermediate assignments).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rulesmith/kg_store.hpp"
#include "rulesmith/compose.hpp"
#include "rulesmith/ranker.hpp"

namespace rulesmith {

struct CompletionQuery {
    EntityId subject;
    RelationId relation;  // head queries use the inverse relation
};

// Rewrites (?, r, e) as (e, inv_r, ?).
inline CompletionQuery head_query(EntityId object, RelationId relation) { return {object, inverse(relation)}; }

struct ScoredEntity {
    EntityId entity;
    double score = 0.0;
    bool operator==(const ScoredEntity&) const = default;
};

struct QueryResult {
    // Positive scores only, ordered by score desc then entity id asc.
    std::vector<ScoredEntity> ranked;
    std::size_t candidates = 0;  // before top-n truncation
    bool saturated = false;

    double score_of(EntityId e) const noexcept;
};

std::uint32_t grounding_count(const KnowledgeGraph& kg, std::span<const RelationId> body, EntityId from,
                              EntityId to);

class Reasoner {
public:
    explicit Reasoner(const KnowledgeGraph& kg);

    // Every rule must have head == query.relation. top_n == 0 keeps all.
    // Identity rules (r <- r) are skipped since their only grounding for an
    // answer is the queried triple itself.
    QueryResult answer(std::span<const RankedRule> rules, const CompletionQuery& query, std::size_t top_n = 0);

private:
    const KnowledgeGraph* kg_;
    PathComposer composer_;
    std::vector<double> scores_;
    std::vector<EntityId> touched_;
};

QueryResult answer(const KnowledgeGraph& kg, std::span<const RankedRule> rules, const CompletionQuery& query,
                   std::size_t top_n = 0);

}  // namespace rulesmith
