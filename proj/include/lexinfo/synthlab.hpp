#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexinfo/count_models.hpp"
#include "lexinfo/lexicon.hpp"

namespace lexinfo {

// Synthetic-language generator. iid-uniform draws each segment uniformly;
// doubled-half samples a half and concatenates a copy of it; vowel-harmony
// builds CV syllables whose vowels all come from one class per word, with
// the vowel persisting syllable-to-syllable (switch probability 0.2), so a
// vowel is nearly determined by its neighbours but not by position alone.
struct GeneratorSpec {
    enum class Kind { IidUniform, DoubledHalf, VowelHarmony };

    Kind kind = Kind::IidUniform;
    int sigma = 8;           // alphabet size (iid) / half inventory (doubled)
    int min_length = 6;      // iid: word length; doubled: half length
    int max_length = 6;
    int min_syllables = 2;   // harmony only
    int max_syllables = 4;
    // Harmony option: draw the word-initial consonant from {m, n} instead of
    // {p, t, k, s}, giving position 1 a distinctive inventory.
    bool distinct_initial_consonant = false;
    std::size_t n = 10000;   // words sampled; duplicates collapse to types
    std::uint64_t seed = 1;
    std::string language = "synthetic";
};

Lexicon generate(const GeneratorSpec& spec);

// First-order plug-in bias of the depth-t conditional entropy, in bits:
// sigma^(t-1) * (sigma - 1) * log2(e) / n.
double analytic_bias_bits(int sigma, std::size_t t, std::int64_t n);

struct BiasReport {
    std::vector<std::size_t> depth;
    std::vector<double> true_bits;          // log2(sigma) at every depth
    std::vector<double> plugin_bits;        // trie plug-in conditional entropy
    std::vector<double> analytic_bias;      // first-order bias prediction
    std::vector<double> prefix_count;       // observed distinct prefixes
    std::vector<double> expected_count_per_prefix;  // n / sigma^(t-1)
    std::int64_t n_types = 0;
};

// Fits a maximum-likelihood trie on an iid-uniform lexicon and tabulates the
// plug-in conditional entropy against the constant truth per depth. Only the
// iid kind is accepted: its true entropy is known.
BiasReport bias_experiment(const GeneratorSpec& spec, std::size_t max_depth);

// Mean of bias_experiment over n_seeds derived seeds.
BiasReport bias_experiment_mean(const GeneratorSpec& spec, std::size_t max_depth,
                                std::size_t n_seeds);

std::string bias_report_to_csv(const BiasReport& report);

struct MiSymmetry {
    double forward_bits;   // H(W_t) - H(W_t | W_{t-1})
    double backward_bits;  // H(W_{t-1}) - H(W_{t-1} | W_t)
    std::size_t joint_observations;
};

// Both estimates come from the same plug-in joint table over words with
// length >= t; they agree up to floating-point rounding by MI symmetry.
MiSymmetry mi_symmetry_check(const Lexicon& lex, std::size_t t,
                             std::size_t min_observations = 1000);

}  // namespace lexinfo
