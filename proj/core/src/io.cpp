#include "rulesmith/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "rulesmith/errors.hpp"

namespace rulesmith {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
        if (tab == std::string_view::npos) return out;
        start = tab + 1;
    }
}

template <typename Fn>
void for_each_line(std::istream& is, Fn&& fn) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        fn(std::string_view(line), lineno);
    }
}

std::uint64_t parse_count(std::string_view s, const std::string& label, std::size_t lineno) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(label, lineno, "invalid count");
    return v;
}

double parse_decimal(std::string_view s, const std::string& label, std::size_t lineno) {
    // std::from_chars for double needs GCC 11+, which is the floor here.
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(label, lineno, "invalid decimal");
    return v;
}

Rule parse_line_rule(std::string_view text, const Vocabulary& vocab, const std::string& label,
                     std::size_t lineno) {
    try {
        return parse_rule(RuleText{std::string(text)}, vocab, ParseOptions{static_cast<std::size_t>(-1), {}});
    } catch (const RuleParseError& e) {
        throw ParseError(label, lineno, e.what());
    }
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string relation_file_stem(std::string_view name) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : name) {
        if (std::isalnum(c) || c == '.' || c == '_' || c == '-') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xf]);
        }
    }
    if (out.empty() || out.front() == '.') out.insert(0, "%");
    return out;
}

void write_samples(std::ostream& os, std::span<const RuleSample> samples, const Vocabulary& vocab) {
    for (const auto& s : samples) os << print_rule(s.rule(), vocab).raw << '\t' << s.multiplicity << '\n';
}

std::vector<RuleSample> read_samples(std::istream& is, const Vocabulary& vocab, const std::string& label) {
    std::vector<RuleSample> out;
    for_each_line(is, [&](std::string_view line, std::size_t lineno) {
        const auto cols = split_tabs(line);
        if (cols.size() > 2) throw ParseError(label, lineno, "expected rule<TAB>multiplicity");
        const Rule rule = parse_line_rule(cols[0], vocab, label, lineno);
        const std::size_t n = cols.size() == 2 ? parse_count(cols[1], label, lineno) : 1;
        out.push_back(RuleSample{rule.head, rule.body, n});
    });
    return out;
}

void write_rules(std::ostream& os, std::span<const Rule> rules, const Vocabulary& vocab) {
    for (const auto& r : rules) os << print_rule(r, vocab).raw << '\n';
}

std::vector<Rule> read_rules(std::istream& is, const Vocabulary& vocab, const std::string& label) {
    std::vector<Rule> out;
    for_each_line(is, [&](std::string_view line, std::size_t lineno) {
        out.push_back(parse_line_rule(split_tabs(line).front(), vocab, label, lineno));
    });
    return out;
}

void write_rejections(std::ostream& os, std::span<const Rejection> rejected) {
    for (const auto& r : rejected) {
        std::string text = r.text.raw;
        for (auto& c : text) {
            if (c == '\t' || c == '\n') c = ' ';
        }
        os << to_string(r.kind) << '\t' << text << '\n';
    }
}

void write_ranked(std::ostream& os, std::span<const RankedRule> rules, const Vocabulary& vocab) {
    for (const auto& r : rules) {
        os << print_rule(r.rule, vocab).raw << '\t' << r.quality.support << '\t' << fixed6(r.quality.coverage())
           << '\t' << fixed6(r.quality.confidence()) << '\t' << fixed6(r.quality.pca_confidence()) << '\n';
    }
}

std::vector<RankedRule> read_ranked(std::istream& is, const Vocabulary& vocab, Measure measure,
                                    const std::string& label) {
    std::vector<RankedRule> out;
    for_each_line(is, [&](std::string_view line, std::size_t lineno) {
        const auto cols = split_tabs(line);
        if (cols.size() != 5) throw ParseError(label, lineno, "expected 5 tab-separated columns");
        RankedRule r;
        r.rule = parse_line_rule(cols[0], vocab, label, lineno);
        r.quality.support = parse_count(cols[1], label, lineno);
        const double coverage = parse_decimal(cols[2], label, lineno);
        const double confidence = parse_decimal(cols[3], label, lineno);
        const double pca = parse_decimal(cols[4], label, lineno);
        switch (measure) {
            case Measure::none: r.score = 1.0; break;
            case Measure::coverage: r.score = coverage; break;
            case Measure::confidence: r.score = confidence; break;
            case Measure::pca: r.score = pca; break;
        }
        out.push_back(std::move(r));
    });
    return out;
}

std::vector<QueryLine> read_queries(std::istream& is, const std::string& label) {
    std::vector<QueryLine> out;
    for_each_line(is, [&](std::string_view line, std::size_t lineno) {
        const auto cols = split_tabs(line);
        if (cols.size() == 2 || (cols.size() == 3 && cols[2] == "?")) {
            out.push_back(QueryLine{std::string(cols[0]), std::string(cols[1])});
        } else if (cols.size() == 3 && cols[0] == "?") {
            out.push_back(QueryLine{std::string(cols[2]), std::string(kInversePrefix) + std::string(cols[1])});
        } else {
            throw ParseError(label, lineno, "expected subject<TAB>relation or a triple with one '?'");
        }
    });
    return out;
}

void write_answers(std::ostream& os, const KnowledgeGraph& kg, const CompletionQuery& query,
                   const QueryResult& result) {
    std::size_t rank = 0;
    for (const auto& s : result.ranked) {
        os << kg.entity_name(query.subject) << '\t' << kg.relation_name(query.relation) << '\t'
           << kg.entity_name(s.entity) << '\t' << fixed6(s.score) << '\t' << ++rank << '\n';
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace rulesmith
