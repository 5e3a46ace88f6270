#include "lexinfo/count_models.hpp"

#include <algorithm>
#include <cmath>

#include "lexinfo/errors.hpp"
#include "lexinfo/numerics.hpp"

namespace lexinfo {

UnigramModel::UnigramModel(int domain_size, std::vector<std::int64_t> counts)
    : domain_(domain_size), counts_(std::move(counts)) {
    counts_.resize(domain_, 0);
    total_ = 0;
    for (std::int64_t c : counts_) total_ += c;
}

UnigramModel UnigramModel::fit(const Lexicon& lex, bool include_eow) {
    const int surface = lex.alphabet.surface_count();
    const int domain = include_eow ? surface + 1 : surface;
    std::vector<std::int64_t> counts(domain, 0);
    for (const Word& w : lex.words) {
        for (int id : w.segment_ids) ++counts[id];
        if (include_eow) ++counts[surface];
    }
    return UnigramModel(domain, std::move(counts));
}

double UnigramModel::prob(int cls) const {
    if (cls < 0 || cls >= domain_) throw InputError("unigram_prob: unknown symbol class");
    return static_cast<double>(counts_[cls] + 1) / static_cast<double>(total_ + domain_);
}

double UnigramModel::surprisal_bits(int cls) const { return -std::log2(prob(cls)); }

std::vector<double> UnigramModel::distribution() const {
    std::vector<double> p(domain_);
    for (int c = 0; c < domain_; ++c) p[c] = prob(c);
    return p;
}

PositionalUnigramModel PositionalUnigramModel::fit(const Lexicon& lex) {
    PositionalUnigramModel m;
    m.surface_ = lex.alphabet.surface_count();
    m.n_words_ = static_cast<std::int64_t>(lex.size());
    for (const Word& w : lex.words) {
        if (w.length() > m.counts_.size()) {
            m.counts_.resize(w.length(), std::vector<std::int64_t>(m.surface_, 0));
            m.words_with_.resize(w.length(), 0);
        }
        for (std::size_t t = 0; t < w.length(); ++t) {
            ++m.counts_[t][w.segment_ids[t]];
            ++m.words_with_[t];
        }
    }
    return m;
}

std::vector<double> PositionalUnigramModel::distribution(std::size_t t) const {
    if (t < 1 || t > counts_.size()) throw InputError("positional unigram: position out of range");
    const auto& row = counts_[t - 1];
    std::int64_t total = 0;
    for (std::int64_t c : row) total += c;
    std::vector<double> p(surface_);
    for (int c = 0; c < surface_; ++c)
        p[c] = static_cast<double>(row[c] + 1) / static_cast<double>(total + surface_);
    return p;
}

double PositionalUnigramModel::coverage(std::size_t t) const {
    if (t < 1 || t > words_with_.size() || n_words_ == 0) return 0.0;
    return static_cast<double>(words_with_[t - 1]) / static_cast<double>(n_words_);
}

std::int64_t PositionalUnigramModel::position_total(std::size_t t) const {
    if (t < 1 || t > words_with_.size()) return 0;
    return words_with_[t - 1];
}

std::uint64_t word_set_fingerprint(const Lexicon& lex) {
    // XOR of per-word hashes (order independent), keyed by the alphabet so
    // id-identical lexicons over different symbols do not collide.
    std::uint64_t acc = 0x9e3779b97f4a7c15ull ^ lex.alphabet.hash();
    for (const Word& w : lex.words) {
        std::uint64_t h = 14695981039346656037ull ^ lex.alphabet.hash();
        for (int id : w.segment_ids) {
            h ^= static_cast<std::uint64_t>(id) + 0x100;
            h *= 1099511628211ull;
        }
        acc ^= h;
    }
    return acc;
}

TrieModel TrieModel::fit(const Lexicon& lex) {
    TrieModel m;
    m.nodes_.emplace_back();
    const int term = terminal_class(lex.alphabet);
    m.terminal_cls_ = term;
    for (const Word& w : lex.words) {
        std::size_t node = 0;
        ++m.nodes_[0].count;
        for (std::size_t i = 0; i <= w.length(); ++i) {
            const int cls = i < w.length() ? w.segment_ids[i] : term;
            auto it = m.nodes_[node].children.find(cls);
            std::size_t child;
            if (it == m.nodes_[node].children.end()) {
                child = m.nodes_.size();
                m.nodes_[node].children.emplace(cls, child);
                m.nodes_.emplace_back();
            } else {
                child = it->second;
            }
            ++m.nodes_[child].count;
            node = child;
        }
    }
    m.fingerprint_ = word_set_fingerprint(lex);
    return m;
}

const TrieModel::Node* TrieModel::walk(const std::vector<int>& prefix) const {
    std::size_t node = 0;
    for (int cls : prefix) {
        auto it = nodes_[node].children.find(cls);
        if (it == nodes_[node].children.end()) return nullptr;
        node = it->second;
    }
    return &nodes_[node];
}

double TrieModel::prob(const std::vector<int>& prefix, int cls) const {
    const Node* n = walk(prefix);
    if (n == nullptr) throw InputError("trie_prob: prefix not observed in training data");
    auto it = n->children.find(cls);
    if (it == n->children.end()) return 0.0;
    return static_cast<double>(nodes_[it->second].count) / static_cast<double>(n->count);
}

std::vector<double> TrieModel::word_step_probs(const std::vector<int>& word) const {
    std::vector<double> probs;
    probs.reserve(word.size() + 1);
    std::size_t node = 0;
    auto step = [&](int cls) {
        auto it = nodes_[node].children.find(cls);
        if (it == nodes_[node].children.end())
            throw InputError("trie: word leaves observed prefixes");
        probs.push_back(static_cast<double>(nodes_[it->second].count) /
                        static_cast<double>(nodes_[node].count));
        node = it->second;
    };
    for (int cls : word) step(cls);
    step(terminal_cls_);
    return probs;
}

double TrieModel::word_prob(const std::vector<int>& word) const {
    std::size_t node = 0;
    double p = 1.0;
    auto step = [&](int cls) {
        auto it = nodes_[node].children.find(cls);
        if (it == nodes_[node].children.end()) return false;
        p *= static_cast<double>(nodes_[it->second].count) / static_cast<double>(nodes_[node].count);
        node = it->second;
        return true;
    };
    for (int cls : word)
        if (!step(cls)) return 0.0;
    if (!step(terminal_cls_)) return 0.0;
    return p;
}

double TrieModel::conditional_entropy_bits(std::size_t depth) const {
    if (depth < 1) throw InputError("conditional entropy depth must be >= 1");
    // Collect nodes at depth-1 by BFS from the root.
    std::vector<std::size_t> frontier{0};
    for (std::size_t d = 1; d < depth; ++d) {
        std::vector<std::size_t> next;
        for (std::size_t n : frontier)
            for (const auto& [cls, child] : nodes_[n].children) next.push_back(child);
        frontier = std::move(next);
    }
    const double n_total = static_cast<double>(nodes_[0].count);
    double h = 0.0;
    for (std::size_t n : frontier) {
        const Node& node = nodes_[n];
        if (node.children.empty()) continue;  // word ended; nothing to predict
        const double w = static_cast<double>(node.count) / n_total;
        double hn = 0.0;
        for (const auto& [cls, child] : node.children) {
            const double p = static_cast<double>(nodes_[child].count) / static_cast<double>(node.count);
            if (p > 0.0) hn -= p * std::log2(p);
        }
        h += w * hn;
    }
    return h;
}

std::size_t TrieModel::prefix_count(std::size_t depth) const {
    std::vector<std::size_t> frontier{0};
    for (std::size_t d = 1; d < depth; ++d) {
        std::vector<std::size_t> next;
        for (std::size_t n : frontier)
            for (const auto& [cls, child] : nodes_[n].children) next.push_back(child);
        frontier = std::move(next);
    }
    return frontier.size();
}

TrieModel::Arrays TrieModel::export_arrays() const {
    Arrays a;
    a.node_counts.reserve(nodes_.size());
    a.child_offsets.reserve(nodes_.size() + 1);
    a.child_offsets.push_back(0);
    for (const Node& n : nodes_) {
        a.node_counts.push_back(n.count);
        for (const auto& [cls, child] : n.children) {
            a.child_classes.push_back(cls);
            a.child_targets.push_back(child);
        }
        a.child_offsets.push_back(a.child_classes.size());
    }
    a.terminal_cls = terminal_cls_;
    a.fingerprint = fingerprint_;
    return a;
}

TrieModel TrieModel::from_arrays(const Arrays& arrays) {
    TrieModel m;
    m.nodes_.resize(arrays.node_counts.size());
    if (m.nodes_.empty() || arrays.child_offsets.size() != arrays.node_counts.size() + 1)
        throw InputError("trie checkpoint: malformed arrays");
    for (std::size_t i = 0; i < m.nodes_.size(); ++i) {
        m.nodes_[i].count = arrays.node_counts[i];
        for (std::uint64_t j = arrays.child_offsets[i]; j < arrays.child_offsets[i + 1]; ++j) {
            const std::uint64_t target = arrays.child_targets[j];
            if (target >= m.nodes_.size()) throw InputError("trie checkpoint: bad child index");
            m.nodes_[i].children.emplace(static_cast<int>(arrays.child_classes[j]),
                                         static_cast<std::size_t>(target));
        }
    }
    m.terminal_cls_ = arrays.terminal_cls;
    m.fingerprint_ = arrays.fingerprint;
    return m;
}

}  // namespace lexinfo
