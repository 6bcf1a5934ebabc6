#include "rulesmith/evalkit.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <iomanip>
#include <ostream>

#include "rulesmith/parallel.hpp"

namespace rulesmith {

namespace {

struct QueryOutcome {
    RelationId relation;  // forward relation of the test fact
    bool head_side = false;
    double rank = 0.0;
    bool answered = false;
    bool missing_rules = false;
};

class Accumulator {
public:
    explicit Accumulator(const std::vector<std::size_t>& n_values) : n_values_(n_values), hits_(n_values.size(), 0) {}

    void add(double rank) {
        ++queries_;
        reciprocal_ += 1.0 / rank;
        for (std::size_t i = 0; i < n_values_.size(); ++i) {
            if (rank <= static_cast<double>(n_values_[i])) ++hits_[i];
        }
    }

    MetricSummary summary() const {
        MetricSummary s;
        s.queries = queries_;
        s.mrr = queries_ ? reciprocal_ / static_cast<double>(queries_) : 0.0;
        for (std::size_t i = 0; i < n_values_.size(); ++i) {
            s.hits[n_values_[i]] = queries_ ? static_cast<double>(hits_[i]) / static_cast<double>(queries_) : 0.0;
        }
        return s;
    }

private:
    std::vector<std::size_t> n_values_;
    std::size_t queries_ = 0;
    double reciprocal_ = 0.0;
    std::vector<std::size_t> hits_;
};

void write_summary(std::ostream& os, const std::string& prefix, const MetricSummary& s) {
    os << prefix << "queries=" << s.queries << '\n';
    os << prefix << "mrr=" << std::fixed << std::setprecision(6) << s.mrr << '\n';
    for (const auto& [n, v] : s.hits) os << prefix << "hits@" << n << '=' << v << '\n';
    os.unsetf(std::ios::floatfield);
}

}  // namespace

double filtered_rank(const QueryResult& result, EntityId truth, std::span<const EntityId> known,
                     std::size_t num_entities, UnrankedPolicy policy) {
    auto filtered = [&](EntityId e) { return e != truth && std::binary_search(known.begin(), known.end(), e); };
    std::size_t filtered_out = 0;
    for (auto e : known) filtered_out += e != truth ? 1 : 0;

    double truth_score = 0.0;
    for (const auto& s : result.ranked) {
        if (s.entity == truth) truth_score = s.score;
    }

    std::size_t pool_candidates = 0;
    std::size_t higher = 0;
    std::size_t tied = 0;
    for (const auto& s : result.ranked) {
        if (filtered(s.entity)) continue;
        ++pool_candidates;
        if (truth_score > 0.0) {
            if (s.score > truth_score) ++higher;
            else if (s.score == truth_score) ++tied;
        }
    }
    if (truth_score > 0.0) return static_cast<double>(higher) + static_cast<double>(tied + 1) / 2.0;

    const double pool = static_cast<double>(num_entities - filtered_out);
    if (policy == UnrankedPolicy::worst) return pool;
    return (pool + 1.0 + static_cast<double>(pool_candidates)) / 2.0;
}

EvalReport evaluate(const KnowledgeGraph& kg, const RulesByRelation& rules, const EvalOptions& options) {
    const auto& tests = kg.test_load_order();
    const std::size_t nq = 2 * tests.size();
    std::vector<QueryOutcome> outcomes(nq);
    const std::vector<RankedRule> no_rules;

    const std::size_t workers = std::min(std::max<std::size_t>(options.parallelism, 1), std::max<std::size_t>(nq, 1));
    parallel_for(workers, workers, [&](std::size_t w) {
        Reasoner reasoner(kg);
        for (std::size_t i = w; i < nq; i += workers) {
            const Triple& fact = tests[i / 2];
            const bool head_side = (i % 2) == 1;
            const CompletionQuery q = head_side ? head_query(fact.tail, fact.relation)
                                                : CompletionQuery{fact.head, fact.relation};
            const EntityId truth = head_side ? fact.head : fact.tail;

            auto it = rules.find(q.relation);
            const auto known = kg.known_tails(q.subject, q.relation);
            QueryOutcome& out = outcomes[i];
            out.relation = fact.relation;
            out.head_side = head_side;
            if (it == rules.end()) {
                out.missing_rules = true;
                out.rank = filtered_rank(QueryResult{}, truth, known, kg.num_entities(), UnrankedPolicy::worst);
                continue;
            }
            const auto result = reasoner.answer(it->second, q, 0);
            out.answered = result.score_of(truth) > 0.0;
            out.rank = filtered_rank(result, truth, known, kg.num_entities(), options.unranked);
        }
    });

    EvalReport report;
    report.unranked = options.unranked;
    Accumulator all(options.n_values), tail(options.n_values), head(options.n_values);
    std::map<RelationId, Accumulator> per_relation;
    for (const auto& o : outcomes) {
        all.add(o.rank);
        (o.head_side ? head : tail).add(o.rank);
        per_relation.try_emplace(o.relation, options.n_values).first->second.add(o.rank);
        if (!o.answered) ++report.unanswered;
        if (o.missing_rules) {
            ++report.missing_rule_queries;
            const RelationId r = o.head_side ? inverse(o.relation) : o.relation;
            if (std::find(report.missing_rule_relations.begin(), report.missing_rule_relations.end(), r) ==
                report.missing_rule_relations.end()) {
                report.missing_rule_relations.push_back(r);
            }
        }
    }
    std::sort(report.missing_rule_relations.begin(), report.missing_rule_relations.end());
    report.combined = all.summary();
    report.tail = tail.summary();
    report.head = head.summary();
    for (const auto& [r, acc] : per_relation) report.per_relation[r] = acc.summary();
    if (report.missing_rule_queries > 0) {
        spdlog::warn("eval: {} queries over {} relations had no rules", report.missing_rule_queries,
                     report.missing_rule_relations.size());
    }
    return report;
}

void EvalReport::write(std::ostream& os) const {
    os << "protocol=filtered\n";
    os << "ties=average\n";
    os << "relations=inverse_augmented\n";
    os << "unranked=" << (unranked == UnrankedPolicy::midpoint ? "midpoint" : "worst") << '\n';
    write_summary(os, "", combined);
    write_summary(os, "tail_", tail);
    write_summary(os, "head_", head);
    os << "unanswered=" << unanswered << '\n';
    os << "missing_rule_queries=" << missing_rule_queries << '\n';
}

void EvalReport::write_relations_tsv(std::ostream& os, const KnowledgeGraph& kg) const {
    os << "relation\tqueries\tmrr";
    if (!per_relation.empty()) {
        for (const auto& [n, _] : per_relation.begin()->second.hits) os << "\thits@" << n;
    }
    os << '\n' << std::fixed << std::setprecision(6);
    for (const auto& [r, s] : per_relation) {
        os << kg.relation_name(r) << '\t' << s.queries << '\t' << s.mrr;
        for (const auto& [_, v] : s.hits) os << '\t' << v;
        os << '\n';
    }
    os.unsetf(std::ios::floatfield);
}

RuleSetReport rule_set_report(std::span<const RankedRule> rules) {
    RuleSetReport report;
    report.empty = rules.empty();
    if (report.empty) {
        spdlog::warn("rule set report: no rules");
        return report;
    }
    auto add = [](RuleStats& s, const RankedRule& r) {
        ++s.count;
        s.mean_support += static_cast<double>(r.quality.support);
        s.mean_coverage += r.quality.coverage();
        s.mean_confidence += r.quality.confidence();
        s.mean_pca += r.quality.pca_confidence();
    };
    auto finish = [](RuleStats& s) {
        if (s.count == 0) return;
        const double n = static_cast<double>(s.count);
        s.mean_support /= n;
        s.mean_coverage /= n;
        s.mean_confidence /= n;
        s.mean_pca /= n;
    };
    for (const auto& r : rules) {
        add(report.overall, r);
        add(report.per_relation[r.rule.head], r);
    }
    finish(report.overall);
    for (auto& [_, s] : report.per_relation) finish(s);
    return report;
}

void RuleSetReport::write(std::ostream& os, const KnowledgeGraph& kg) const {
    os << std::fixed << std::setprecision(6);
    os << "rules=" << overall.count << '\n';
    os << "relations_with_rules=" << per_relation.size() << '\n';
    os << "avg_rules_per_relation="
       << (per_relation.empty() ? 0.0 : static_cast<double>(overall.count) / static_cast<double>(per_relation.size()))
       << '\n';
    os << "mean_support=" << overall.mean_support << '\n';
    os << "mean_coverage=" << overall.mean_coverage << '\n';
    os << "mean_confidence=" << overall.mean_confidence << '\n';
    os << "mean_pca_confidence=" << overall.mean_pca << '\n';
    if (empty) os << "warning=empty_rule_set\n";
    for (const auto& [r, s] : per_relation) {
        os << "relation." << kg.relation_name(r) << ".rules=" << s.count << '\n';
    }
    os.unsetf(std::ios::floatfield);
}

}  // namespace rulesmith
