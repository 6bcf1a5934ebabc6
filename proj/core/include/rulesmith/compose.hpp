#pragma once
// Relational composition over the train adjacency index.
//
// A PathComposer owns O(|entities|) scratch space and is not thread-safe;
// use one per worker.

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "rulesmith/kg_store.hpp"

namespace rulesmith {

inline constexpr std::uint32_t kCountSaturation = std::numeric_limits<std::uint32_t>::max();

constexpr std::uint32_t saturating_add(std::uint32_t a, std::uint32_t b) noexcept {
    return a > kCountSaturation - b ? kCountSaturation : a + b;
}

struct EntityCount {
    EntityId entity;
    std::uint32_t count;
};

class PathComposer {
public:
    explicit PathComposer(const KnowledgeGraph& kg);

    // Distinct entities reachable from `source` along `body`, in discovery
    // order. Valid until the next call.
    std::span<const EntityId> reach(EntityId source, std::span<const RelationId> body);

    // Membership in the most recent reach() result.
    bool reached(EntityId e) const noexcept { return stamp_[e.value] == epoch_; }

    // Number of body groundings from `source` to each endpoint (saturating at
    // 2^32-1). Unordered; valid until the next call. `saturated` is set when
    // any count clipped.
    std::span<const EntityCount> count_paths(EntityId source, std::span<const RelationId> body,
                                             bool* saturated = nullptr);

private:
    void bump_epoch();

    const KnowledgeGraph* kg_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::vector<EntityId> frontier_;
    std::vector<EntityId> next_;

    std::vector<std::uint32_t> next_counts_;
    std::vector<EntityCount> count_frontier_;
    std::vector<EntityCount> count_next_;
};

}  // namespace rulesmith
