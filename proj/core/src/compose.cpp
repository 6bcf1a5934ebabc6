#include "rulesmith/compose.hpp"

#include <algorithm>

namespace rulesmith {

PathComposer::PathComposer(const KnowledgeGraph& kg)
    : kg_(&kg), stamp_(kg.num_entities(), 0), next_counts_(kg.num_entities(), 0) {}

void PathComposer::bump_epoch() {
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
}

std::span<const EntityId> PathComposer::reach(EntityId source, std::span<const RelationId> body) {
    frontier_.assign(1, source);
    bump_epoch();
    stamp_[source.value] = epoch_;
    for (auto r : body) {
        bump_epoch();
        next_.clear();
        for (auto x : frontier_) {
            for (auto y : kg_->successors(x, r)) {
                if (stamp_[y.value] == epoch_) continue;
                stamp_[y.value] = epoch_;
                next_.push_back(y);
            }
        }
        frontier_.swap(next_);
        if (frontier_.empty()) break;
    }
    return frontier_;
}

std::span<const EntityCount> PathComposer::count_paths(EntityId source, std::span<const RelationId> body,
                                                       bool* saturated) {
    count_frontier_.assign(1, EntityCount{source, 1});
    for (auto r : body) {
        count_next_.clear();
        for (const auto& [x, c] : count_frontier_) {
            for (auto y : kg_->successors(x, r)) {
                auto& slot = next_counts_[y.value];
                if (slot == 0) count_next_.push_back(EntityCount{y, 0});
                const auto sum = saturating_add(slot, c);
                if (saturated && sum == kCountSaturation && slot + static_cast<std::uint64_t>(c) > kCountSaturation) {
                    *saturated = true;
                }
                slot = sum;
            }
        }
        for (auto& ec : count_next_) {
            ec.count = next_counts_[ec.entity.value];
            next_counts_[ec.entity.value] = 0;
        }
        count_frontier_.swap(count_next_);
        if (count_frontier_.empty()) break;
    }
    return count_frontier_;
}

}  // namespace rulesmith
