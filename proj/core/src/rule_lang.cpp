#include "rulesmith/rule_lang.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace rulesmith {

namespace {

constexpr std::string_view kArrowUnicode = "\xE2\x86\x90";  // ←
constexpr std::string_view kAndUnicode = "\xE2\x88\xA7";    // ∧

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

bool is_separator(char c) { return c == '_' || c == '/' || is_space(c); }

// Lowercased, separators collapsed to one space, trimmed.
std::string fold(std::string_view s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (is_separator(c)) {
            pending = !out.empty();
            continue;
        }
        if (pending) out.push_back(' ');
        pending = false;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

bool starts_with_inverse(std::string_view s) {
    if (s.size() < kInversePrefix.size()) return false;
    for (std::size_t i = 0; i < kInversePrefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) != kInversePrefix[i]) return false;
    }
    return true;
}

std::string lookup_key(std::string_view name) {
    name = trim(name);
    if (starts_with_inverse(name)) return std::string(kInversePrefix) + fold(name.substr(kInversePrefix.size()));
    return fold(name);
}

bool is_variable(std::string_view v) {
    if (v.empty() || !std::isupper(static_cast<unsigned char>(v.front()))) return false;
    return std::all_of(v.begin(), v.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

struct Atom {
    std::string_view name;
    std::string_view from;
    std::string_view to;
};

[[noreturn]] void fail(RuleErrorKind kind, std::string_view line, const std::string& detail) {
    throw RuleParseError(kind, std::string(line), detail);
}

Atom parse_atom(std::string_view text, std::string_view line) {
    text = trim(text);
    if (text.empty()) fail(RuleErrorKind::grammar, line, "empty atom");
    const auto open = text.find('(');
    if (open == std::string_view::npos) fail(RuleErrorKind::grammar, line, "atom without argument list");
    const auto close = text.find(')', open);
    if (close == std::string_view::npos) fail(RuleErrorKind::grammar, line, "unterminated argument list");
    if (!trim(text.substr(close + 1)).empty()) fail(RuleErrorKind::grammar, line, "trailing text after atom");
    Atom atom;
    atom.name = trim(text.substr(0, open));
    if (atom.name.empty()) fail(RuleErrorKind::grammar, line, "missing predicate name");
    if (atom.name.find_first_of("(),&") != std::string_view::npos) {
        fail(RuleErrorKind::grammar, line, "invalid predicate name");
    }
    const auto args = text.substr(open + 1, close - open - 1);
    const auto comma = args.find(',');
    if (comma == std::string_view::npos || args.find(',', comma + 1) != std::string_view::npos) {
        fail(RuleErrorKind::grammar, line, "atom must have exactly two arguments");
    }
    atom.from = trim(args.substr(0, comma));
    atom.to = trim(args.substr(comma + 1));
    if (!is_variable(atom.from) || !is_variable(atom.to)) {
        fail(RuleErrorKind::grammar, line, "arguments must be variables");
    }
    return atom;
}

std::vector<std::string_view> split_body(std::string_view body) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < body.size()) {
        if (body[i] == '&') {
            parts.push_back(body.substr(start, i - start));
            start = i = i + 1;
        } else if (body.substr(i).starts_with(kAndUnicode)) {
            parts.push_back(body.substr(start, i - start));
            start = i = i + kAndUnicode.size();
        } else {
            ++i;
        }
    }
    parts.push_back(body.substr(start));
    return parts;
}

// Position and length of the first implication token, or npos.
std::pair<std::size_t, std::size_t> find_arrow(std::string_view s) {
    const auto ascii = s.find("<-");
    const auto uni = s.find(kArrowUnicode);
    if (ascii == std::string_view::npos && uni == std::string_view::npos) return {std::string_view::npos, 0};
    if (uni == std::string_view::npos || (ascii != std::string_view::npos && ascii < uni)) {
        std::size_t len = 2;
        while (ascii + len < s.size() && s[ascii + len] == '-') ++len;
        return {ascii, len};
    }
    return {uni, kArrowUnicode.size()};
}

std::string variable_name(std::size_t index, std::size_t length) {
    if (index == 0) return "X";
    if (index == length) return "Y";
    return "Z_" + std::to_string(index);
}

template <typename NameOf>
std::string render(const Rule& rule, NameOf&& name_of) {
    std::string out = name_of(rule.head) + "(X,Y) <- ";
    const std::size_t n = rule.body.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) out += " & ";
        out += name_of(rule.body[i]);
        out += '(';
        out += variable_name(i, n);
        out += ',';
        out += variable_name(i + 1, n);
        out += ')';
    }
    return out;
}

}  // namespace

std::string_view to_string(RuleErrorKind kind) {
    switch (kind) {
        case RuleErrorKind::grammar: return "GrammarError";
        case RuleErrorKind::vocabulary: return "VocabularyError";
        case RuleErrorKind::chain: return "ChainError";
        case RuleErrorKind::length: return "LengthError";
        case RuleErrorKind::head_mismatch: return "HeadMismatchError";
    }
    return "UnknownError";
}

Vocabulary::Vocabulary(const KnowledgeGraph& kg) {
    names_.reserve(kg.num_relations());
    for (auto r : kg.relations()) names_.push_back(kg.relation_name(r));
    index();
}

Vocabulary::Vocabulary(std::vector<std::string> names) : names_(std::move(names)) { index(); }

void Vocabulary::index() {
    by_key_.clear();
    for (std::uint32_t i = 0; i < names_.size(); ++i) {
        auto [it, inserted] = by_key_.emplace(lookup_key(names_[i]), RelationId{i});
        if (!inserted) {
            throw InputError("relation names '" + names_[it->second.value] + "' and '" + names_[i] +
                             "' collide after verbalization");
        }
    }
}

std::optional<RelationId> Vocabulary::lookup(std::string_view name) const {
    auto it = by_key_.find(lookup_key(name));
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
}

std::string verbalize(std::string_view relation_name) {
    if (relation_name.starts_with(kInversePrefix)) {
        return std::string(kInversePrefix) + verbalize(relation_name.substr(kInversePrefix.size()));
    }
    std::string out;
    bool pending = false;
    for (char c : relation_name) {
        if (c == '_' || c == '/' || is_space(c)) {
            pending = !out.empty();
            continue;
        }
        if (pending) out.push_back(' ');
        pending = false;
        out.push_back(c);
    }
    return out;
}

Rule parse_rule(const RuleText& text, const Vocabulary& vocab, const ParseOptions& options) {
    const std::string_view line = text.raw;
    const std::string_view s = trim(line);

    const auto [pos, len] = find_arrow(s);
    if (pos == std::string_view::npos) fail(RuleErrorKind::grammar, line, "missing implication token");

    const Atom head = parse_atom(s.substr(0, pos), line);
    const std::string_view body_text = trim(s.substr(pos + len));
    if (body_text.empty()) fail(RuleErrorKind::grammar, line, "empty body");

    std::vector<Atom> body;
    for (auto part : split_body(body_text)) body.push_back(parse_atom(part, line));

    if (head.from == head.to) fail(RuleErrorKind::chain, line, "head variables must differ");
    std::set<std::string_view> used{head.from, head.to};
    std::string_view cursor = head.from;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i].from != cursor) fail(RuleErrorKind::chain, line, "atom " + std::to_string(i + 1) + " breaks the chain");
        cursor = body[i].to;
        if (i + 1 < body.size() && !used.insert(cursor).second) {
            fail(RuleErrorKind::chain, line, "intermediate variable reused");
        }
    }
    if (cursor != head.to) fail(RuleErrorKind::chain, line, "chain does not end at the head's second variable");

    if (body.size() > options.max_length) {
        fail(RuleErrorKind::length, line,
             "body length " + std::to_string(body.size()) + " exceeds " + std::to_string(options.max_length));
    }

    auto resolve = [&](std::string_view name) {
        auto id = vocab.lookup(name);
        if (!id) fail(RuleErrorKind::vocabulary, line, "unknown relation '" + std::string(name) + "'");
        return *id;
    };
    Rule rule;
    rule.head = resolve(head.name);
    rule.body.reserve(body.size());
    for (const auto& atom : body) rule.body.push_back(resolve(atom.name));

    if (options.expected_head && rule.head != *options.expected_head) {
        fail(RuleErrorKind::head_mismatch, line, "head is not the queried relation");
    }
    return rule;
}

RuleText print_rule(const Rule& rule, const Vocabulary& vocab) {
    return RuleText{render(rule, [&](RelationId r) -> const std::string& { return vocab.name(r); })};
}

std::string verbalize_rule(const Rule& rule, const Vocabulary& vocab) {
    return render(rule, [&](RelationId r) { return verbalize(vocab.name(r)); });
}

std::vector<RuleText> extract_rule_lines(std::string_view response) {
    std::vector<RuleText> out;
    std::size_t start = 0;
    while (start <= response.size()) {
        auto end = response.find('\n', start);
        if (end == std::string_view::npos) end = response.size();
        std::string_view line = trim(response.substr(start, end - start));
        start = end + 1;
        if (find_arrow(line).first == std::string_view::npos) continue;

        // "1." / "2)" / "-" / "*" list markers
        std::size_t i = 0;
        while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
        if (i > 0 && i < line.size() && (line[i] == '.' || line[i] == ')')) {
            line = trim(line.substr(i + 1));
        } else if (!line.empty() && (line.front() == '-' || line.front() == '*') && line.size() > 1 &&
                   is_space(line[1])) {
            line = trim(line.substr(1));
        }
        if (!line.empty() && line.back() == '.') line.remove_suffix(1);
        out.push_back(RuleText{std::string(trim(line))});
    }
    return out;
}

}  // namespace rulesmith
