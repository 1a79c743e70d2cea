#pragma once

// Co-occurrence samples and test quadruples. A sample is a multiset of
// (value-word, head-key) pairs with aggregated counts; slices and
// projections feed the estimators. Immutable after ingestion.

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treecut/taxonomy.hpp"

namespace treecut {

struct HeadKey {
    std::string head;
    std::string slot;

    auto operator<=>(const HeadKey&) const = default;
};

// word -> occurrence count, deterministically ordered
using ValueCounts = std::map<std::string, std::uint64_t>;

struct PairSample {
    std::map<HeadKey, ValueCounts> by_head;
    std::uint64_t total = 0;  // |S|, multiset cardinality
};

struct HeadSlice {
    HeadKey key;
    ValueCounts counts;
    std::uint64_t size = 0;  // |S_v|
};

enum class Attachment { verb, noun };

struct TestQuadruple {
    std::string verb, noun1, prep, noun2;
    Attachment gold = Attachment::noun;
};

// TSV `head<TAB>slot<TAB>value[<TAB>count]`, count defaults to 1;
// `#` comment lines. Throws ParseError with the offending line number.
PairSample ingest_triples(std::istream& in);

// TSV `verb<TAB>noun1<TAB>prep<TAB>noun2<TAB>gold`, gold in {V, N}.
std::vector<TestQuadruple> parse_quadruples(std::istream& in);

// pi_1(S): value-word -> total count across all head-keys.
ValueCounts project_values(const PairSample& s);

// S_v: counts restricted to one head-key; an absent key yields an empty slice.
HeadSlice slice_by_head(const PairSample& s, const HeadKey& key);

// #(C, S): total count of words whose leaf lies under `node`.
std::uint64_t class_count(const Taxonomy& t, NodeId node, const ValueCounts& counts);

using Stemmer = std::function<std::string(std::string_view)>;

// Preprocessing rules: integers 1900-2999 -> "year", other pure numerals ->
// "number" (the year rule is checked first so 1950 stays a year), then the
// pluggable stemmer (identity when absent).
std::string preprocess_word(std::string_view w, const Stemmer* stemmer = nullptr);

// Counts mapped onto taxonomy leaves. by_node has one slot per node; only
// leaf slots are filled here. Words that resolve to no leaf are flagged and
// excluded from `total`.
struct ResolvedCounts {
    std::vector<double> by_node;
    double total = 0.0;
    std::vector<std::pair<std::string, std::uint64_t>> unknown;
};

ResolvedCounts resolve_counts(const Taxonomy& t, const ValueCounts& counts);

}  // namespace treecut
