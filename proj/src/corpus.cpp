#include "treecut/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace treecut {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

// strips one trailing '\r' so CRLF files behave
std::string_view chomp(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool is_blank_or_comment(std::string_view line) {
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '#';
    }
    return true;
}

std::uint64_t parse_count(std::string_view field, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": non-numeric count \"" + std::string(field) + "\"");
    }
    return value;
}

void require_fields(const std::vector<std::string_view>& f, std::size_t line_no) {
    for (const auto& x : f) {
        if (x.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty field");
        }
    }
}

}  // namespace

PairSample ingest_triples(std::istream& in) {
    PairSample s;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = chomp(raw);
        if (is_blank_or_comment(line)) continue;
        const auto f = split_tabs(line);
        if (f.size() != 3 && f.size() != 4) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 3 or 4 tab-separated fields, got " +
                             std::to_string(f.size()));
        }
        const std::uint64_t count = f.size() == 4 ? parse_count(f[3], line_no) : 1;
        require_fields({f[0], f[1], f[2]}, line_no);
        if (count == 0) continue;
        HeadKey key{std::string(f[0]), std::string(f[1])};
        s.by_head[key][std::string(f[2])] += count;
        s.total += count;
    }
    return s;
}

std::vector<TestQuadruple> parse_quadruples(std::istream& in) {
    std::vector<TestQuadruple> out;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = chomp(raw);
        if (is_blank_or_comment(line)) continue;
        const auto f = split_tabs(line);
        if (f.size() != 5) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected 5 tab-separated fields, got " +
                             std::to_string(f.size()));
        }
        require_fields(f, line_no);
        TestQuadruple q;
        q.verb = std::string(f[0]);
        q.noun1 = std::string(f[1]);
        q.prep = std::string(f[2]);
        q.noun2 = std::string(f[3]);
        if (f[4] == "V") {
            q.gold = Attachment::verb;
        } else if (f[4] == "N") {
            q.gold = Attachment::noun;
        } else {
            throw ParseError("line " + std::to_string(line_no) +
                             ": gold must be V or N, got \"" + std::string(f[4]) +
                             "\"");
        }
        out.push_back(std::move(q));
    }
    return out;
}

ValueCounts project_values(const PairSample& s) {
    ValueCounts out;
    for (const auto& [key, counts] : s.by_head) {
        for (const auto& [word, c] : counts) out[word] += c;
    }
    return out;
}

HeadSlice slice_by_head(const PairSample& s, const HeadKey& key) {
    HeadSlice slice{key, {}, 0};
    const auto it = s.by_head.find(key);
    if (it == s.by_head.end()) return slice;
    slice.counts = it->second;
    for (const auto& [word, c] : slice.counts) slice.size += c;
    return slice;
}

std::uint64_t class_count(const Taxonomy& t, NodeId node, const ValueCounts& counts) {
    std::uint64_t total = 0;
    for (const auto& [word, c] : counts) {
        const auto leaf = t.leaf_of(word);
        if (leaf && t.dominates(node, *leaf)) total += c;
    }
    return total;
}

namespace {

bool all_digits(std::string_view w) {
    if (w.empty()) return false;
    return std::all_of(w.begin(), w.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
    });
}

// digits optionally grouped by '.' or ',' e.g. 1,234.5
bool is_numeral(std::string_view w) {
    if (w.empty() || !std::isdigit(static_cast<unsigned char>(w.front()))) {
        return false;
    }
    bool prev_digit = false;
    for (char c : w) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            prev_digit = true;
        } else if ((c == '.' || c == ',') && prev_digit) {
            prev_digit = false;
        } else {
            return false;
        }
    }
    return prev_digit;
}

}  // namespace

std::string preprocess_word(std::string_view w, const Stemmer* stemmer) {
    // years first: 1950 is a year, not a generic number
    if (w.size() == 4 && all_digits(w) && w >= "1900" && w <= "2999") {
        return "year";
    }
    if (is_numeral(w)) return "number";
    if (stemmer && *stemmer) return (*stemmer)(w);
    return std::string(w);
}

ResolvedCounts resolve_counts(const Taxonomy& t, const ValueCounts& counts) {
    ResolvedCounts r;
    r.by_node.assign(t.node_count(), 0.0);
    for (const auto& [word, c] : counts) {
        if (c == 0) continue;
        if (const auto leaf = t.leaf_of(word)) {
            r.by_node[*leaf] += static_cast<double>(c);
            r.total += static_cast<double>(c);
        } else {
            r.unknown.emplace_back(word, c);
        }
    }
    return r;
}

}  // namespace treecut
