#include "rulesmith/kg_store.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <unordered_set>

#include "rulesmith/errors.hpp"

namespace rulesmith {

namespace {

struct TripleHash {
    std::size_t operator()(const Triple& t) const noexcept {
        std::uint64_t h = (static_cast<std::uint64_t>(t.head.value) << 32) | t.tail.value;
        h ^= static_cast<std::uint64_t>(t.relation.value) * 0x9e3779b97f4a7c15ULL;
        h ^= h >> 29;
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 32;
        return static_cast<std::size_t>(h);
    }
};

bool valid_name(std::string_view s) {
    return !s.empty() && s.find_first_of("\t\n\r") == std::string_view::npos;
}

Triple flipped(const Triple& t) { return Triple{t.tail, inverse(t.relation), t.head}; }

}  // namespace

void LoadReport::write(std::ostream& os) const {
    os << "entities=" << entities << '\n'
       << "forward_relations=" << forward_relations << '\n'
       << "relations=" << relations << '\n'
       << "train_triples=" << forward_triples[0] << '\n'
       << "valid_triples=" << forward_triples[1] << '\n'
       << "test_triples=" << forward_triples[2] << '\n'
       << "forward_triples=" << total_forward_triples() << '\n'
       << "triples=" << total_triples() << '\n'
       << "duplicates_dropped=" << duplicates_dropped << '\n';
}

std::optional<EntityId> KnowledgeGraph::find_entity(std::string_view name) const {
    auto it = entity_lookup_.find(std::string(name));
    if (it == entity_lookup_.end()) return std::nullopt;
    return EntityId{it->second};
}

std::optional<RelationId> KnowledgeGraph::find_relation(std::string_view name) const {
    auto it = relation_lookup_.find(std::string(name));
    if (it == relation_lookup_.end()) return std::nullopt;
    return RelationId{it->second};
}

std::vector<RelationId> KnowledgeGraph::relations() const {
    std::vector<RelationId> out(num_relations());
    for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = RelationId{i};
    return out;
}

std::vector<RelationId> KnowledgeGraph::forward_relations() const {
    std::vector<RelationId> out(num_forward_relations());
    for (std::uint32_t i = 0; i < out.size(); ++i) out[i] = RelationId{2 * i};
    return out;
}

bool KnowledgeGraph::contains(Split split, const Triple& t) const {
    if (split == Split::train) {
        if (t.head.value >= num_entities() || t.relation.value >= num_relations()) return false;
        auto succ = successors(t.head, t.relation);
        return std::binary_search(succ.begin(), succ.end(), t.tail);
    }
    const auto& f = facts(split);
    return std::binary_search(f.begin(), f.end(), t);
}

std::vector<EntityId> KnowledgeGraph::known_tails(EntityId h, RelationId r) const {
    auto succ = successors(h, r);
    std::vector<EntityId> out(succ.begin(), succ.end());
    for (Split s : {Split::valid, Split::test}) {
        const auto& f = facts(s);
        auto lo = std::lower_bound(f.begin(), f.end(), Triple{h, r, EntityId{0}});
        for (; lo != f.end() && lo->head == h && lo->relation == r; ++lo) out.push_back(lo->tail);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint32_t KnowledgeGraph::Builder::intern_entity(std::string_view name) {
    auto [it, inserted] =
        kg_.entity_lookup_.try_emplace(std::string(name), static_cast<std::uint32_t>(kg_.entity_names_.size()));
    if (inserted) kg_.entity_names_.emplace_back(name);
    return it->second;
}

std::uint32_t KnowledgeGraph::Builder::intern_relation(std::string_view name) {
    auto it = kg_.relation_lookup_.find(std::string(name));
    if (it != kg_.relation_lookup_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(kg_.relation_names_.size());
    std::string inv = std::string(kInversePrefix) + std::string(name);
    kg_.relation_lookup_.emplace(std::string(name), id);
    kg_.relation_lookup_.emplace(inv, id + 1);
    kg_.relation_names_.emplace_back(name);
    kg_.relation_names_.push_back(std::move(inv));
    return id;
}

void KnowledgeGraph::Builder::add(Split split, std::string_view head, std::string_view relation,
                                  std::string_view tail) {
    if (!valid_name(head) || !valid_name(relation) || !valid_name(tail)) {
        throw InputError("empty name or name containing tab/newline");
    }
    if (relation.starts_with(kInversePrefix)) {
        throw InputError("relation name '" + std::string(relation) + "' uses the reserved prefix '" +
                         std::string(kInversePrefix) + "'");
    }
    const auto h = intern_entity(head);
    const auto t = intern_entity(tail);
    const auto r = intern_relation(relation);
    raw_[static_cast<int>(split)].push_back(Triple{EntityId{h}, RelationId{r}, EntityId{t}});
}

void KnowledgeGraph::Builder::add_tsv(Split split, std::istream& in, const std::string& label) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::string_view view(line);
        const auto a = view.find('\t');
        const auto b = a == std::string_view::npos ? a : view.find('\t', a + 1);
        if (a == std::string_view::npos || b == std::string_view::npos ||
            view.find('\t', b + 1) != std::string_view::npos) {
            throw ParseError(label, lineno, "expected 3 tab-separated fields");
        }
        try {
            add(split, view.substr(0, a), view.substr(a + 1, b - a - 1), view.substr(b + 1));
        } catch (const InputError& e) {
            throw InputError(label + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

KnowledgeGraph KnowledgeGraph::Builder::build() && {
    KnowledgeGraph kg = std::move(kg_);
    const std::size_t n = kg.num_entities();
    const std::size_t nr = kg.num_relations();

    for (int s = 0; s < 3; ++s) {
        std::unordered_set<Triple, TripleHash> seen;
        seen.reserve(raw_[s].size());
        std::vector<Triple> order;
        order.reserve(raw_[s].size());
        for (const auto& t : raw_[s]) {
            if (seen.insert(t).second) {
                order.push_back(t);
            } else {
                ++kg.report_.duplicates_dropped;
            }
        }
        raw_[s].clear();
        raw_[s].shrink_to_fit();
        kg.report_.forward_triples[s] = order.size();

        auto& facts = kg.facts_[s];
        facts.reserve(2 * order.size());
        for (const auto& t : order) {
            facts.push_back(t);
            facts.push_back(flipped(t));
        }
        std::sort(facts.begin(), facts.end());
        if (s == 0) kg.train_order_ = std::move(order);
        if (s == 2) kg.test_order_ = std::move(order);
    }

    // Train index, ordered by (relation, head, tail).
    std::vector<Triple> edges = kg.facts_[0];
    std::sort(edges.begin(), edges.end(), [](const Triple& a, const Triple& b) {
        if (a.relation != b.relation) return a.relation < b.relation;
        if (a.head != b.head) return a.head < b.head;
        return a.tail < b.tail;
    });

    kg.offsets_.assign(nr * (n + 1), 0);
    kg.tails_.resize(edges.size());
    kg.pairs_.resize(edges.size());
    kg.pair_offsets_.assign(nr + 1, 0);
    kg.source_offsets_.assign(nr + 1, 0);

    for (const auto& t : edges) {
        ++kg.offsets_[static_cast<std::size_t>(t.relation.value) * (n + 1) + t.head.value + 1];
        ++kg.pair_offsets_[t.relation.value + 1];
    }
    std::uint64_t running = 0;
    for (std::size_t r = 0; r < nr; ++r) {
        const std::size_t base = r * (n + 1);
        kg.offsets_[base] = running;
        for (std::size_t e = 1; e <= n; ++e) {
            running += kg.offsets_[base + e];
            kg.offsets_[base + e] = running;
        }
        kg.pair_offsets_[r + 1] += kg.pair_offsets_[r];
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        kg.tails_[i] = edges[i].tail;
        kg.pairs_[i] = EntityPair{edges[i].head, edges[i].tail};
    }
    for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t i = kg.pair_offsets_[r]; i < kg.pair_offsets_[r + 1]; ++i) {
            if (kg.sources_.size() == kg.source_offsets_[r] || kg.sources_.back() != kg.pairs_[i].head) {
                kg.sources_.push_back(kg.pairs_[i].head);
            }
        }
        kg.source_offsets_[r + 1] = kg.sources_.size();
    }

    kg.report_.entities = n;
    kg.report_.relations = nr;
    kg.report_.forward_relations = nr / 2;
    return kg;
}

namespace {

void add_file(KnowledgeGraph::Builder& b, Split split, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    b.add_tsv(split, in, path.string());
}

}  // namespace

KnowledgeGraph load_kg(const std::filesystem::path& train, const std::filesystem::path& valid,
                       const std::filesystem::path& test) {
    KnowledgeGraph::Builder b;
    add_file(b, Split::train, train);
    add_file(b, Split::valid, valid);
    add_file(b, Split::test, test);
    return std::move(b).build();
}

KnowledgeGraph load_kg_dir(const std::filesystem::path& dir) {
    KnowledgeGraph::Builder b;
    add_file(b, Split::train, dir / "train.txt");
    for (auto [split, name] : {std::pair{Split::valid, "valid.txt"}, std::pair{Split::test, "test.txt"}}) {
        if (std::filesystem::exists(dir / name)) add_file(b, split, dir / name);
    }
    return std::move(b).build();
}

void write_train_tsv(const KnowledgeGraph& kg, std::ostream& os) {
    for (const auto& t : kg.train_load_order()) {
        os << kg.entity_name(t.head) << '\t' << kg.relation_name(t.relation) << '\t' << kg.entity_name(t.tail)
           << '\n';
    }
}

}  // namespace rulesmith
