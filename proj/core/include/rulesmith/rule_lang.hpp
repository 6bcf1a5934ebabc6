#pragma once
// Chain rules and their textual form.
//
//   head(X,Y) <- r1(X,Z_1) & r2(Z_1,Z_2) & r3(Z_2,Y)
//
// Only the relation chain is stored; the variable chain is implied.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rulesmith/errors.hpp"
#include "rulesmith/kg_store.hpp"

namespace rulesmith {

inline constexpr std::size_t kDefaultMaxRuleLength = 3;

struct Rule {
    RelationId head;
    std::vector<RelationId> body;
    auto operator<=>(const Rule&) const = default;
};

struct RuleText {
    std::string raw;
};

enum class RuleErrorKind {
    grammar,
    vocabulary,
    chain,
    length,
    head_mismatch,
};

std::string_view to_string(RuleErrorKind kind);

class RuleParseError : public Error {
public:
    RuleParseError(RuleErrorKind kind, std::string line, const std::string& detail)
        : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind), line_(std::move(line)) {}

    RuleErrorKind kind() const noexcept { return kind_; }
    const std::string& line() const noexcept { return line_; }

private:
    RuleErrorKind kind_;
    std::string line_;
};

// Relation name table used by the parser. Lookup is case-insensitive and
// treats '_', '/' and runs of whitespace as one separator, so both raw
// names and their verbalized forms resolve.
class Vocabulary {
public:
    Vocabulary() = default;

    // Throws InputError if two names normalize to the same key.
    explicit Vocabulary(const KnowledgeGraph& kg);

    // Test/standalone form: names[i] is relation i, paired as forward/inverse.
    explicit Vocabulary(std::vector<std::string> names);

    std::optional<RelationId> lookup(std::string_view name) const;
    const std::string& name(RelationId r) const { return names_.at(r.value); }
    std::size_t size() const noexcept { return names_.size(); }

private:
    void index();

    std::vector<std::string> names_;
    std::unordered_map<std::string, RelationId> by_key_;
};

// Display form used inside prompts: '_' and '/' become spaces (collapsed,
// trimmed), except that a leading "inv_" marker is kept as-is.
std::string verbalize(std::string_view relation_name);

struct ParseOptions {
    std::size_t max_length = kDefaultMaxRuleLength;
    std::optional<RelationId> expected_head;
};

// Throws RuleParseError. Checks run in a fixed order (grammar, chain,
// length, vocabulary, head) so each input maps to one error class.
Rule parse_rule(const RuleText& text, const Vocabulary& vocab, const ParseOptions& options = {});

// Canonical text using raw relation names.
RuleText print_rule(const Rule& rule, const Vocabulary& vocab);

// Same shape with verbalized relation names.
std::string verbalize_rule(const Rule& rule, const Vocabulary& vocab);

// Lines of an LLM response that contain an implication token, with list
// markers ("1.", "-", "*") stripped. Everything else is dropped.
std::vector<RuleText> extract_rule_lines(std::string_view response);

}  // namespace rulesmith
