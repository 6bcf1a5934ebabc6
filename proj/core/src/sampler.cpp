#include "rulesmith/sampler.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "rulesmith/parallel.hpp"
#include "rulesmith/random.hpp"

namespace rulesmith {

namespace {

constexpr std::uint8_t kFar = std::numeric_limits<std::uint8_t>::max();

// Per-thread distance table, reset through the touched list.
struct Scratch {
    std::vector<std::uint8_t> dist;
    std::vector<std::uint32_t> touched;

    void prepare(std::size_t n) {
        if (dist.size() != n) {
            dist.assign(n, kFar);
            touched.clear();
        }
        for (auto e : touched) dist[e] = kFar;
        touched.clear();
    }
};

// Hop distance from `origin` up to `depth`. The graph is inverse-augmented,
// so this is also the distance from each node back to `origin`.
void bounded_distances(const KnowledgeGraph& kg, EntityId origin, std::size_t depth, Scratch& s) {
    s.dist[origin.value] = 0;
    s.touched.push_back(origin.value);
    std::vector<std::uint32_t> frontier{origin.value};
    std::vector<std::uint32_t> next;
    const auto nr = static_cast<std::uint32_t>(kg.num_relations());
    for (std::size_t d = 1; d <= depth && !frontier.empty(); ++d) {
        next.clear();
        for (auto x : frontier) {
            for (std::uint32_t r = 0; r < nr; ++r) {
                for (auto y : kg.successors(EntityId{x}, RelationId{r})) {
                    if (s.dist[y.value] != kFar) continue;
                    s.dist[y.value] = static_cast<std::uint8_t>(d);
                    s.touched.push_back(y.value);
                    next.push_back(y.value);
                }
            }
        }
        frontier.swap(next);
    }
}

struct Node {
    EntityId entity;
    RelationId via;
    std::uint32_t parent;
};

std::vector<ClosedPath> paths_for_seed(const KnowledgeGraph& kg, const Triple& seed, std::size_t max_length,
                                       std::size_t cap, bool& truncated) {
    thread_local Scratch scratch;
    scratch.prepare(kg.num_entities());
    if (max_length > 1) bounded_distances(kg, seed.tail, max_length - 1, scratch);
    auto dist = [&](EntityId e) {
        if (e == seed.tail) return std::uint8_t{0};
        return max_length > 1 ? scratch.dist[e.value] : kFar;
    };

    std::vector<Node> nodes{Node{seed.head, RelationId{0}, 0}};
    std::vector<ClosedPath> out;
    truncated = false;

    auto emit = [&](std::uint32_t last) {
        ClosedPath p;
        p.seed = seed;
        for (std::uint32_t i = last; i != 0; i = nodes[i].parent) {
            p.relations.push_back(nodes[i].via);
            p.entities.push_back(nodes[i].entity);
        }
        p.entities.push_back(seed.head);
        std::reverse(p.relations.begin(), p.relations.end());
        std::reverse(p.entities.begin(), p.entities.end());
        out.push_back(std::move(p));
    };

    const auto nr = static_cast<std::uint32_t>(kg.num_relations());
    std::size_t level_begin = 0;
    std::size_t level_end = 1;
    for (std::size_t depth = 0; depth < max_length; ++depth) {
        const std::size_t remaining = max_length - depth - 1;
        for (std::size_t i = level_begin; i < level_end; ++i) {
            const Node node = nodes[i];
            const EntityId back = i == 0 ? EntityId{std::numeric_limits<std::uint32_t>::max()} : nodes[node.parent].entity;
            for (std::uint32_t r = 0; r < nr; ++r) {
                const RelationId rel{r};
                for (auto y : kg.successors(node.entity, rel)) {
                    if (i != 0 && rel == inverse(node.via) && y == back) continue;
                    const bool closes = y == seed.tail && !(depth == 0 && rel == seed.relation);
                    const bool extend = remaining > 0 && dist(y) <= remaining;
                    if (!closes && !extend) continue;
                    nodes.push_back(Node{y, rel, static_cast<std::uint32_t>(i)});
                    if (closes) {
                        emit(static_cast<std::uint32_t>(nodes.size() - 1));
                        if (cap != 0 && out.size() >= cap) {
                            truncated = true;
                            return out;
                        }
                    }
                    if (!extend) nodes.pop_back();
                }
            }
        }
        level_begin = level_end;
        level_end = nodes.size();
        if (level_begin == level_end) break;
    }
    return out;
}

}  // namespace

std::vector<ClosedPath> sample_closed_paths(const KnowledgeGraph& kg, RelationId target,
                                            const SamplerOptions& options, SampleStats* stats) {
    if (options.max_length == 0 || target.value >= kg.num_relations()) return {};
    const auto pairs = kg.relation_pairs(target);
    if (pairs.empty()) return {};

    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t count = std::min(options.seed_count, pairs.size());
    Rng rng = derive_rng(options.rng_seed, target.value);
    partial_shuffle(std::span<std::size_t>(order), count, rng);
    order.resize(count);
    std::sort(order.begin(), order.end());

    std::vector<std::vector<ClosedPath>> per_seed(count);
    std::vector<char> truncated(count, 0);
    parallel_for(count, options.parallelism, [&](std::size_t i) {
        const auto& p = pairs[order[i]];
        bool t = false;
        per_seed[i] = paths_for_seed(kg, Triple{p.head, target, p.tail}, options.max_length, options.per_seed_cap, t);
        truncated[i] = t ? 1 : 0;
    });

    std::vector<ClosedPath> out;
    std::size_t truncated_seeds = 0;
    for (std::size_t i = 0; i < count; ++i) {
        truncated_seeds += truncated[i];
        for (auto& p : per_seed[i]) out.push_back(std::move(p));
    }
    if (truncated_seeds > 0) {
        spdlog::info("sampler: {} of {} seeds for relation {} hit the per-seed cap of {}", truncated_seeds, count,
                     kg.relation_name(target), options.per_seed_cap);
    }
    if (stats) {
        stats->seeds += count;
        stats->paths += out.size();
        stats->truncated_seeds += truncated_seeds;
    }
    return out;
}

std::vector<RuleSample> abstract_to_samples(std::span<const ClosedPath> paths) {
    std::map<std::pair<std::vector<RelationId>, RelationId>, std::size_t> counts;
    for (const auto& p : paths) ++counts[{p.relations, p.seed.relation}];
    std::vector<RuleSample> out;
    out.reserve(counts.size());
    for (auto& [key, n] : counts) out.push_back(RuleSample{key.second, key.first, n});
    return out;
}

}  // namespace rulesmith
