#include "treecut/taxonomy.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

namespace treecut {

std::vector<NodeId> Taxonomy::leaves_under(NodeId n) const {
    check(n);
    std::vector<NodeId> out;
    out.reserve(nleaves_[n]);
    const NodeId end = n + size_[n];
    for (NodeId i = n; i < end; ++i) {
        if (is_leaf(i)) out.push_back(i);
    }
    return out;
}

std::optional<NodeId> Taxonomy::leaf_of(std::string_view word) const {
    auto it = word_to_leaf_.find(std::string(word));
    if (it == word_to_leaf_.end()) return std::nullopt;
    return it->second;
}

Taxonomy build_taxonomy(std::vector<std::string> labels,
                        std::vector<NodeId> parents) {
    const auto v = static_cast<std::int32_t>(labels.size());
    if (v == 0) throw ParseError("empty taxonomy");
    if (parents.size() != labels.size() || parents[0] != kNoNode) {
        throw ParseError("malformed node table: bad root");
    }
    for (NodeId i = 1; i < v; ++i) {
        if (parents[i] < 0 || parents[i] >= i) {
            // preorder means a parent always precedes its children; anything
            // else is an orphan node or a cycle
            throw ParseError("orphan node or cycle at node \"" + labels[i] + "\"");
        }
    }

    Taxonomy t;
    t.labels_ = std::move(labels);
    t.parent_ = std::move(parents);
    t.child_off_.assign(v + 1, 0);
    for (NodeId i = 1; i < v; ++i) ++t.child_off_[t.parent_[i] + 1];
    for (NodeId i = 0; i < v; ++i) t.child_off_[i + 1] += t.child_off_[i];
    t.child_ids_.resize(v - 1 >= 0 ? v - 1 : 0);
    {
        std::vector<std::int32_t> fill(t.child_off_.begin(), t.child_off_.end() - 1);
        for (NodeId i = 1; i < v; ++i) t.child_ids_[fill[t.parent_[i]]++] = i;
    }

    t.size_.assign(v, 1);
    t.nleaves_.assign(v, 0);
    for (NodeId i = v - 1; i >= 0; --i) {
        if (t.child_off_[i] == t.child_off_[i + 1]) t.nleaves_[i] = 1;
        if (i > 0) {
            t.size_[t.parent_[i]] += t.size_[i];
            t.nleaves_[t.parent_[i]] += t.nleaves_[i];
        }
    }
    t.depth_.assign(v, 0);
    for (NodeId i = 1; i < v; ++i) t.depth_[i] = t.depth_[t.parent_[i]] + 1;

    for (NodeId i = 0; i < v; ++i) {
        if (t.child_off_[i] != t.child_off_[i + 1]) continue;
        t.leaf_ids_.push_back(i);
        if (!t.word_to_leaf_.emplace(t.labels_[i], i).second) {
            throw ParseError("duplicate leaf word \"" + t.labels_[i] + "\"");
        }
    }
    return t;
}

namespace {

bool is_token_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' &&
           c != ')' && c != ';';
}

void validate_label(std::string_view label) {
    if (label.empty()) throw ParseError("empty node label");
    for (char c : label) {
        if (!is_token_char(c)) {
            throw ParseError("label \"" + std::string(label) +
                             "\" contains whitespace or reserved character");
        }
    }
}

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size()) {
            const char c = text[pos];
            if (c == ';') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    // returns "(", ")", a token, or "" at end
    std::string_view next() {
        skip_space();
        if (pos >= text.size()) return {};
        if (text[pos] == '(' || text[pos] == ')') return text.substr(pos++, 1);
        const std::size_t start = pos;
        while (pos < text.size() && is_token_char(text[pos])) ++pos;
        return text.substr(start, pos - start);
    }
};

}  // namespace

Taxonomy parse_taxonomy(std::string_view text) {
    Lexer lex{text};
    std::vector<std::string> labels;
    std::vector<NodeId> parents;
    std::vector<NodeId> stack;  // open internal nodes
    bool done = false;

    for (std::string_view tok = lex.next(); !tok.empty(); tok = lex.next()) {
        if (done) throw ParseError("trailing content after the tree (multiple roots)");
        if (tok == "(") {
            std::string_view label = lex.next();
            if (label.empty() || label == "(" || label == ")") {
                throw ParseError("expected a label after '('");
            }
            const auto id = static_cast<NodeId>(labels.size());
            if (stack.empty() && id != 0) {
                throw ParseError("trailing content after the tree (multiple roots)");
            }
            labels.emplace_back(label);
            parents.push_back(stack.empty() ? kNoNode : stack.back());
            stack.push_back(id);
        } else if (tok == ")") {
            if (stack.empty()) throw ParseError("unbalanced ')'");
            stack.pop_back();
            if (stack.empty()) done = true;
        } else {
            const auto id = static_cast<NodeId>(labels.size());
            labels.emplace_back(tok);
            if (stack.empty()) {
                if (id != 0) {
                    throw ParseError("trailing content after the tree (multiple roots)");
                }
                // bare top-level token: a single-leaf taxonomy
                parents.push_back(kNoNode);
                done = true;
            } else {
                parents.push_back(stack.back());
            }
        }
    }
    if (!stack.empty()) throw ParseError("unbalanced '(': missing ')'");
    if (labels.empty()) throw ParseError("empty taxonomy");
    return build_taxonomy(std::move(labels), std::move(parents));
}

Taxonomy parse_taxonomy_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad taxonomy json: ") + e.what());
    }

    std::vector<std::string> labels;
    std::vector<NodeId> parents;
    // explicit stack of (json node, parent id), children pushed in reverse
    // so ids come out in preorder document order
    std::vector<std::pair<const nlohmann::json*, NodeId>> stack{{&doc, kNoNode}};
    while (!stack.empty()) {
        auto [node, parent] = stack.back();
        stack.pop_back();
        if (!node->is_object() || !node->contains("label") ||
            !(*node)["label"].is_string()) {
            throw ParseError("taxonomy json node must be {\"label\": ...}");
        }
        std::string label = (*node)["label"].get<std::string>();
        validate_label(label);
        const auto id = static_cast<NodeId>(labels.size());
        labels.push_back(std::move(label));
        parents.push_back(parent);
        if (node->contains("children")) {
            const auto& kids = (*node)["children"];
            if (!kids.is_array()) {
                throw ParseError("\"children\" of node \"" + labels[id] +
                                 "\" must be an array");
            }
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
                stack.emplace_back(&*it, id);
            }
        }
    }
    return build_taxonomy(std::move(labels), std::move(parents));
}

std::string taxonomy_to_json(const Taxonomy& t) {
    const NodeId v = t.node_count();
    std::vector<nlohmann::json> buf(v);
    for (NodeId i = v - 1; i >= 0; --i) {
        nlohmann::json o;
        o["label"] = t.label(i);
        if (!t.is_leaf(i)) {
            nlohmann::json kids = nlohmann::json::array();
            for (NodeId c : t.children(i)) kids.push_back(std::move(buf[c]));
            o["children"] = std::move(kids);
        }
        buf[i] = std::move(o);
    }
    return buf[0].dump();
}

CutCheck validate_cut(const Taxonomy& t, const TreeCut& cut) {
    if (cut.members.empty()) return {false, "empty cut"};

    std::vector<std::int32_t> tag(t.node_count(), -1);
    std::int64_t covered = 0;
    for (std::size_t i = 0; i < cut.members.size(); ++i) {
        const NodeId m = cut.members[i];
        if (tag[m] >= 0) {
            return {false, "duplicate member \"" + t.label(m) + "\""};
        }
        tag[m] = static_cast<std::int32_t>(i);
        covered += t.leaf_count(m);
    }

    // domination: some strict ancestor of a member is itself a member
    for (const NodeId m : cut.members) {
        for (NodeId a = t.parent(m); a != kNoNode; a = t.parent(a)) {
            if (tag[a] >= 0) {
                return {false, "\"" + t.label(a) + "\" dominates \"" +
                                   t.label(m) + "\""};
            }
        }
    }

    if (covered != t.total_leaves()) {
        // find the highest all-uncovered subtree and name its root
        std::vector<char> covd(t.node_count(), 0);
        for (const NodeId m : cut.members) {
            const NodeId end = m + t.subtree_size(m);
            for (NodeId i = m; i < end; ++i) covd[i] = 1;
        }
        for (const NodeId leaf : t.leaf_ids()) {
            if (covd[leaf]) continue;
            // climb while the whole sibling subtree is uncovered too
            NodeId top = leaf;
            while (t.parent(top) != kNoNode) {
                const NodeId p = t.parent(top);
                bool all_clear = true;
                const NodeId end = p + t.subtree_size(p);
                for (NodeId i = p; i < end && all_clear; ++i) {
                    if (covd[i]) all_clear = false;
                }
                if (!all_clear) break;
                top = p;
            }
            return {false, "leaves under \"" + t.label(top) + "\" uncovered"};
        }
        return {false, "cut leaf coverage mismatch"};  // unreachable in a tree
    }
    return {true, {}};
}

std::vector<std::int32_t> cover_map(const Taxonomy& t, const TreeCut& cut) {
    std::vector<std::int32_t> cov(t.node_count(), -1);
    std::vector<std::int32_t> tag(t.node_count(), -1);
    for (std::size_t i = 0; i < cut.members.size(); ++i) {
        tag[cut.members[i]] = static_cast<std::int32_t>(i);
    }
    for (NodeId i = 0; i < t.node_count(); ++i) {
        if (tag[i] >= 0) {
            cov[i] = tag[i];
        } else if (i > 0) {
            cov[i] = cov[t.parent(i)];
        }
    }
    return cov;
}

TreeCut meet(const Taxonomy& t, const TreeCut& a, const TreeCut& b) {
    for (const TreeCut* c : {&a, &b}) {
        if (const CutCheck chk = validate_cut(t, *c); !chk.ok) {
            throw std::invalid_argument("invalid cut: " + chk.violation);
        }
    }
    const auto ca = cover_map(t, a);
    const auto cb = cover_map(t, b);
    std::vector<char> seen(t.node_count(), 0);
    for (const NodeId leaf : t.leaf_ids()) {
        const NodeId ma = a.members[ca[leaf]];
        const NodeId mb = b.members[cb[leaf]];
        seen[t.depth(ma) >= t.depth(mb) ? ma : mb] = 1;
    }
    TreeCut out;
    for (NodeId i = 0; i < t.node_count(); ++i) {
        if (seen[i]) out.members.push_back(i);
    }
    return out;
}

}  // namespace treecut
