#pragma once
// Text file formats shared by the pipeline stages.
//
//   samples     rule<TAB>multiplicity
//   candidates  rule
//   rejections  error-class<TAB>raw line
//   ranked      rule<TAB>support<TAB>coverage<TAB>confidence<TAB>pca   (6 decimals)
//   answers     subject<TAB>relation<TAB>answer<TAB>score<TAB>rank
//
// Rules are canonical text with raw relation names.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rulesmith/generator.hpp"
#include "rulesmith/ranker.hpp"
#include "rulesmith/reasoner.hpp"
#include "rulesmith/sampler.hpp"

namespace rulesmith {

// Percent-encodes everything outside [A-Za-z0-9._-] so any relation name
// maps to a distinct, portable file stem.
std::string relation_file_stem(std::string_view relation_name);

void write_samples(std::ostream& os, std::span<const RuleSample> samples, const Vocabulary& vocab);
std::vector<RuleSample> read_samples(std::istream& is, const Vocabulary& vocab, const std::string& label);

void write_rules(std::ostream& os, std::span<const Rule> rules, const Vocabulary& vocab);
std::vector<Rule> read_rules(std::istream& is, const Vocabulary& vocab, const std::string& label);

void write_rejections(std::ostream& os, std::span<const Rejection> rejected);

void write_ranked(std::ostream& os, std::span<const RankedRule> rules, const Vocabulary& vocab);

// Scores are taken from the file column for `measure` (1.0 for none);
// only `quality.support` is restored.
std::vector<RankedRule> read_ranked(std::istream& is, const Vocabulary& vocab, Measure measure,
                                    const std::string& label);

struct QueryLine {
    std::string subject;
    std::string relation;  // already rewritten for head queries
};

// Accepts "subject<TAB>relation", "subject<TAB>relation<TAB>?" and
// "?<TAB>relation<TAB>object" (rewritten to object, inv_relation).
std::vector<QueryLine> read_queries(std::istream& is, const std::string& label);

void write_answers(std::ostream& os, const KnowledgeGraph& kg, const CompletionQuery& query,
                   const QueryResult& result);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace rulesmith
