#pragma once
// KnowledgeGraph: interned, inverse-augmented triple store.
//
// Relation ids are paired: forward relation i has id 2i and its inverse
// ("inv_" + name) has id 2i+1, so inverse(r) is a single xor.
//
// Train facts are indexed twice:
//   - out index: CSR keyed by (relation, head) -> sorted tails
//   - rel index: sorted (head, tail) pairs per relation
// Valid/test facts are kept as sorted triple lists and used only for
// filtered evaluation; grounding never sees them.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rulesmith {

struct EntityId {
    std::uint32_t value = 0;
    auto operator<=>(const EntityId&) const = default;
};

struct RelationId {
    std::uint32_t value = 0;
    auto operator<=>(const RelationId&) const = default;
};

struct Triple {
    EntityId head;
    RelationId relation;
    EntityId tail;
    auto operator<=>(const Triple&) const = default;
};

struct EntityPair {
    EntityId head;
    EntityId tail;
    auto operator<=>(const EntityPair&) const = default;
};

enum class Split : std::uint8_t { train = 0, valid = 1, test = 2 };

inline constexpr std::string_view kInversePrefix = "inv_";

constexpr RelationId inverse(RelationId r) noexcept { return RelationId{r.value ^ 1u}; }
constexpr bool is_inverse(RelationId r) noexcept { return (r.value & 1u) != 0; }
constexpr RelationId base_relation(RelationId r) noexcept { return RelationId{r.value & ~1u}; }

struct LoadReport {
    std::size_t entities = 0;
    std::size_t forward_relations = 0;
    std::size_t relations = 0;  // after augmentation
    std::size_t forward_triples[3] = {0, 0, 0};
    std::size_t duplicates_dropped = 0;

    std::size_t total_forward_triples() const noexcept {
        return forward_triples[0] + forward_triples[1] + forward_triples[2];
    }
    std::size_t total_triples() const noexcept { return 2 * total_forward_triples(); }

    // key=value lines
    void write(std::ostream& os) const;
};

class KnowledgeGraph {
public:
    class Builder;

    KnowledgeGraph() = default;

    std::size_t num_entities() const noexcept { return entity_names_.size(); }
    std::size_t num_relations() const noexcept { return relation_names_.size(); }
    std::size_t num_forward_relations() const noexcept { return relation_names_.size() / 2; }

    const std::string& entity_name(EntityId e) const { return entity_names_.at(e.value); }
    const std::string& relation_name(RelationId r) const { return relation_names_.at(r.value); }
    std::optional<EntityId> find_entity(std::string_view name) const;
    std::optional<RelationId> find_relation(std::string_view name) const;

    std::vector<RelationId> relations() const;
    std::vector<RelationId> forward_relations() const;

    // Sorted, duplicate-free train tails of (e, r).
    std::span<const EntityId> successors(EntityId e, RelationId r) const noexcept {
        const std::size_t base = static_cast<std::size_t>(r.value) * (num_entities() + 1) + e.value;
        return {tails_.data() + offsets_[base], tails_.data() + offsets_[base + 1]};
    }
    bool has_successor(EntityId e, RelationId r) const noexcept {
        const std::size_t base = static_cast<std::size_t>(r.value) * (num_entities() + 1) + e.value;
        return offsets_[base + 1] != offsets_[base];
    }

    // Distinct train (head, tail) pairs of r, sorted.
    std::span<const EntityPair> relation_pairs(RelationId r) const noexcept {
        return {pairs_.data() + pair_offsets_[r.value], pairs_.data() + pair_offsets_[r.value + 1]};
    }

    // Distinct heads with at least one train fact under r, sorted.
    std::span<const EntityId> sources(RelationId r) const noexcept {
        return {sources_.data() + source_offsets_[r.value], sources_.data() + source_offsets_[r.value + 1]};
    }

    bool contains(Split split, const Triple& t) const;

    // Augmented facts of one split, sorted by (head, relation, tail).
    const std::vector<Triple>& facts(Split split) const noexcept { return facts_[static_cast<int>(split)]; }

    // Forward train facts in their original load order (after dedup).
    const std::vector<Triple>& train_load_order() const noexcept { return train_order_; }

    // Forward test facts in load order.
    const std::vector<Triple>& test_load_order() const noexcept { return test_order_; }

    // Every t with (h, r, t) in train, valid or test; sorted and unique.
    std::vector<EntityId> known_tails(EntityId h, RelationId r) const;

    const LoadReport& report() const noexcept { return report_; }

private:
    std::vector<std::string> entity_names_;
    std::vector<std::string> relation_names_;
    std::unordered_map<std::string, std::uint32_t> entity_lookup_;
    std::unordered_map<std::string, std::uint32_t> relation_lookup_;

    std::vector<std::uint64_t> offsets_;  // (relation, entity) -> range in tails_
    std::vector<EntityId> tails_;
    std::vector<EntityPair> pairs_;
    std::vector<std::size_t> pair_offsets_;
    std::vector<EntityId> sources_;
    std::vector<std::size_t> source_offsets_;

    std::vector<Triple> facts_[3];
    std::vector<Triple> train_order_;
    std::vector<Triple> test_order_;
    LoadReport report_;
};

class KnowledgeGraph::Builder {
public:
    Builder() = default;

    // Names must be non-empty and free of tabs/newlines; relation names may
    // not start with the reserved inverse prefix.
    void add(Split split, std::string_view head, std::string_view relation, std::string_view tail);

    // Reads head<TAB>relation<TAB>tail lines. `label` names the source in errors.
    void add_tsv(Split split, std::istream& in, const std::string& label);

    KnowledgeGraph build() &&;

private:
    std::uint32_t intern_entity(std::string_view name);
    std::uint32_t intern_relation(std::string_view name);

    KnowledgeGraph kg_;
    std::vector<Triple> raw_[3];  // forward only, load order
};

KnowledgeGraph load_kg(const std::filesystem::path& train, const std::filesystem::path& valid,
                       const std::filesystem::path& test);

// Loads <dir>/train.txt, valid.txt, test.txt; missing valid/test are treated as empty.
KnowledgeGraph load_kg_dir(const std::filesystem::path& dir);

// Writes forward train facts as TSV in load order.
void write_train_tsv(const KnowledgeGraph& kg, std::ostream& os);

}  // namespace rulesmith
