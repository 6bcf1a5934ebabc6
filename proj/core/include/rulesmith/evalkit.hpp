#pragma once
// Filtered link-prediction evaluation (MRR, Hits@N) and rule-set statistics.
//
// Every forward test fact (h, r, t) yields a tail query (h, r, ?) and a head
// query (t, inv_r, ?). Other known answers from train/valid/test are removed
// from the candidate pool; ties share their average rank.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "rulesmith/kg_store.hpp"
#include "rulesmith/ranker.hpp"
#include "rulesmith/reasoner.hpp"

namespace rulesmith {

using RulesByRelation = std::map<RelationId, std::vector<RankedRule>>;

enum class UnrankedPolicy { midpoint, worst };

struct EvalOptions {
    std::vector<std::size_t> n_values{1, 10};
    UnrankedPolicy unranked = UnrankedPolicy::midpoint;
    std::size_t parallelism = 1;
};

struct MetricSummary {
    std::size_t queries = 0;
    double mrr = 0.0;
    std::map<std::size_t, double> hits;
};

struct EvalReport {
    MetricSummary combined;
    MetricSummary tail;
    MetricSummary head;
    std::map<RelationId, MetricSummary> per_relation;  // keyed by forward relation, both directions
    std::size_t unanswered = 0;
    std::size_t missing_rule_queries = 0;
    std::vector<RelationId> missing_rule_relations;
    UnrankedPolicy unranked = UnrankedPolicy::midpoint;

    // key=value lines
    void write(std::ostream& os) const;
    // relation<TAB>queries<TAB>mrr<TAB>hits@N...
    void write_relations_tsv(std::ostream& os, const KnowledgeGraph& kg) const;
};

// Filtered rank of `truth` within a full (untruncated) query result.
// `known` holds every true answer for the query (sorted); all but `truth`
// are filtered out.
double filtered_rank(const QueryResult& result, EntityId truth, std::span<const EntityId> known,
                     std::size_t num_entities, UnrankedPolicy policy);

EvalReport evaluate(const KnowledgeGraph& kg, const RulesByRelation& rules, const EvalOptions& options = {});

struct RuleStats {
    std::size_t count = 0;
    double mean_support = 0.0;
    double mean_coverage = 0.0;
    double mean_confidence = 0.0;
    double mean_pca = 0.0;
};

struct RuleSetReport {
    RuleStats overall;
    std::map<RelationId, RuleStats> per_relation;
    bool empty = true;

    void write(std::ostream& os, const KnowledgeGraph& kg) const;
};

RuleSetReport rule_set_report(std::span<const RankedRule> rules);

}  // namespace rulesmith
