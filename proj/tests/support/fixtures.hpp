#pragma once

#include <filesystem>
#include <sstream>
#include <string>

#include "rulesmith/kg_store.hpp"

namespace rulesmith::testing {

// Two relations, five facts.
inline KnowledgeGraph appendix_kg() {
    KnowledgeGraph::Builder b;
    b.add(Split::train, "Alex", "isAffiliatedTo", "Club 1");
    b.add(Split::train, "Alex", "isAffiliatedTo", "Club 2");
    b.add(Split::train, "Bob", "isAffiliatedTo", "Club 3");
    b.add(Split::train, "Alex", "playsFor", "Club 1");
    b.add(Split::train, "Charlie", "playsFor", "Club 2");
    return std::move(b).build();
}

inline KnowledgeGraph kg_from_tsv(const std::string& train, const std::string& valid = "",
                                  const std::string& test = "") {
    KnowledgeGraph::Builder b;
    std::istringstream tr(train), va(valid), te(test);
    b.add_tsv(Split::train, tr, "train");
    b.add_tsv(Split::valid, va, "valid");
    b.add_tsv(Split::test, te, "test");
    return std::move(b).build();
}

inline EntityId ent(const KnowledgeGraph& kg, const std::string& name) { return *kg.find_entity(name); }
inline RelationId rel(const KnowledgeGraph& kg, const std::string& name) { return *kg.find_relation(name); }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("rulesmith-" + tag + "-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace rulesmith::testing
