#pragma once
// Closed-path sampling: for a seed fact (h, r, t), every relation path
// h -> ... -> t of bounded length is an instance of a rule body for r.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rulesmith/kg_store.hpp"
#include "rulesmith/rule_lang.hpp"

namespace rulesmith {

struct ClosedPath {
    Triple seed;
    std::vector<RelationId> relations;
    std::vector<EntityId> entities;  // relations.size() + 1 entries, seed.head .. seed.tail
    auto operator<=>(const ClosedPath&) const = default;
};

struct RuleSample {
    RelationId head;
    std::vector<RelationId> body;
    std::size_t multiplicity = 1;

    Rule rule() const { return Rule{head, body}; }
    bool operator==(const RuleSample&) const = default;
};

struct SamplerOptions {
    std::size_t max_length = kDefaultMaxRuleLength;
    std::size_t seed_count = 500;
    std::uint64_t rng_seed = 0;
    std::size_t per_seed_cap = 100;  // 0 = unlimited
    std::size_t parallelism = 1;
};

struct SampleStats {
    std::size_t seeds = 0;
    std::size_t paths = 0;
    std::size_t truncated_seeds = 0;
};

// Breadth-first enumeration from each sampled seed's head. Paths are emitted
// shortest first; the single-edge path labelled `target` (the seed itself)
// and immediate backtracking over an edge's inverse are excluded.
std::vector<ClosedPath> sample_closed_paths(const KnowledgeGraph& kg, RelationId target,
                                            const SamplerOptions& options, SampleStats* stats = nullptr);

// Drops entities and merges identical (head, body) signatures, counting
// multiplicity. Sorted by body, then head.
std::vector<RuleSample> abstract_to_samples(std::span<const ClosedPath> paths);

}  // namespace rulesmith
