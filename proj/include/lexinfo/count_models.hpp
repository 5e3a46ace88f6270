#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "lexinfo/lexicon.hpp"

namespace lexinfo {

// Prediction-class convention shared by all models: classes 0..S-1 are the
// surface symbols of the alphabet, class S is the terminal symbol (EOW for
// forward-running models, BOW for backward ones). S+1 = |Σ|.
inline int terminal_class(const Alphabet& a) { return a.surface_count(); }

// Laplace-smoothed unigram counts over a fixed class domain.
class UnigramModel {
public:
    UnigramModel() = default;
    UnigramModel(int domain_size, std::vector<std::int64_t> counts);

    // Counts every surface segment; with include_eow, adds one terminal
    // count per word and extends the domain by the terminal class.
    static UnigramModel fit(const Lexicon& lex, bool include_eow);

    double prob(int cls) const;               // (count+1) / (total+|domain|)
    double surprisal_bits(int cls) const;
    std::vector<double> distribution() const;
    int domain_size() const { return domain_; }
    std::int64_t total() const { return total_; }
    const std::vector<std::int64_t>& counts() const { return counts_; }

private:
    int domain_ = 0;
    std::int64_t total_ = 0;
    std::vector<std::int64_t> counts_;
};

// Per-position segment counts (surface classes only; positions 1-based).
class PositionalUnigramModel {
public:
    static PositionalUnigramModel fit(const Lexicon& lex);

    std::size_t max_position() const { return counts_.size(); }
    // Laplace-smoothed distribution over surface classes at position t.
    std::vector<double> distribution(std::size_t t) const;
    // Fraction of fitted words that have a segment at position t.
    double coverage(std::size_t t) const;
    std::int64_t position_total(std::size_t t) const;

private:
    std::vector<std::vector<std::int64_t>> counts_;  // [t-1][cls]
    std::vector<std::int64_t> words_with_;           // words of length >= t
    std::int64_t n_words_ = 0;
    int surface_ = 0;
};

// Maximum-likelihood prefix trie rooted at BOW; words terminate with the
// terminal class, so each node's child counts sum to the node count. Unseen
// continuations get probability zero on purpose: this estimator's closed-
// lexicon behaviour is itself under study.
class TrieModel {
public:
    static TrieModel fit(const Lexicon& lex);

    // prefix = surface classes from word start; throws InputError when the
    // prefix was never observed.
    double prob(const std::vector<int>& prefix, int cls) const;

    // Per-step probabilities for a full word: L surface steps plus the
    // terminal step. Throws when some prefix is unobserved.
    std::vector<double> word_step_probs(const std::vector<int>& word) const;

    // Probability the trie assigns to a whole word, terminal step included;
    // zero when the word leaves observed prefixes. Training types' word
    // probabilities sum to exactly 1 (the closed-lexicon property).
    double word_prob(const std::vector<int>& word) const;

    // Plug-in conditional entropy of the class at depth t (1-based) given
    // the depth t-1 prefix, in bits, count-weighted over observed prefixes.
    double conditional_entropy_bits(std::size_t depth) const;

    // Number of distinct observed prefixes of length depth-1.
    std::size_t prefix_count(std::size_t depth) const;

    std::int64_t root_count() const { return nodes_[0].count; }
    int terminal_cls() const { return terminal_cls_; }
    std::uint64_t training_fingerprint() const { return fingerprint_; }

    // Flat-array form for serialization.
    struct Arrays {
        std::vector<std::int64_t> node_counts;
        std::vector<std::uint64_t> child_offsets;  // size = nodes + 1
        std::vector<std::int64_t> child_classes;
        std::vector<std::uint64_t> child_targets;
        int terminal_cls = 0;
        std::uint64_t fingerprint = 0;
    };
    Arrays export_arrays() const;
    static TrieModel from_arrays(const Arrays& arrays);

private:
    struct Node {
        std::int64_t count = 0;
        std::map<int, std::size_t> children;  // class -> node index
    };
    const Node* walk(const std::vector<int>& prefix) const;

    std::vector<Node> nodes_;  // nodes_[0] is the BOW root
    int terminal_cls_ = 0;
    std::uint64_t fingerprint_ = 0;
};

// Order-independent fingerprint of a lexicon's word set; used to refuse
// trie evaluation on anything but its own training data.
std::uint64_t word_set_fingerprint(const Lexicon& lex);

}  // namespace lexinfo
