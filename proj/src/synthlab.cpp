#include "lexinfo/synthlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "lexinfo/errors.hpp"
#include "lexinfo/numerics.hpp"
#include "lexinfo/rng.hpp"

namespace lexinfo {

namespace {

std::vector<std::string> letter_inventory(int sigma) {
    std::vector<std::string> symbols;
    symbols.reserve(sigma);
    for (int i = 0; i < sigma; ++i) {
        if (sigma <= 26)
            symbols.push_back(std::string(1, static_cast<char>('a' + i)));
        else
            symbols.push_back("s" + std::to_string(i));
    }
    return symbols;
}

Lexicon from_symbol_words(const GeneratorSpec& spec, std::vector<std::string> symbols,
                          const std::vector<std::vector<int>>& sampled) {
    Lexicon lex;
    lex.language = spec.language;
    lex.alphabet = Alphabet::from_symbols(std::move(symbols));
    std::set<std::vector<int>> seen;
    for (const auto& ids : sampled) {
        if (seen.insert(ids).second) lex.words.push_back(Word{ids});
    }
    return lex;
}

Lexicon generate_iid(const GeneratorSpec& spec, Rng& rng) {
    if (spec.sigma < 2) throw InputError("iid-uniform generator needs at least 2 symbols");
    if (spec.min_length < 1 || spec.max_length < spec.min_length)
        throw InputError("iid-uniform generator: bad length range");
    std::vector<std::vector<int>> sampled;
    sampled.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const int len = spec.min_length +
                        static_cast<int>(rng.below(spec.max_length - spec.min_length + 1));
        std::vector<int> ids(len);
        for (int& id : ids) id = static_cast<int>(rng.below(spec.sigma));
        sampled.push_back(std::move(ids));
    }
    return from_symbol_words(spec, letter_inventory(spec.sigma), sampled);
}

Lexicon generate_doubled(const GeneratorSpec& spec, Rng& rng) {
    if (spec.sigma < 2) throw InputError("doubled-half generator needs at least 2 symbols");
    if (spec.min_length < 1 || spec.max_length < spec.min_length)
        throw InputError("doubled-half generator: bad half-length range");
    std::vector<std::vector<int>> sampled;
    sampled.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const int half = spec.min_length +
                         static_cast<int>(rng.below(spec.max_length - spec.min_length + 1));
        std::vector<int> ids(half);
        for (int& id : ids) id = static_cast<int>(rng.below(spec.sigma));
        ids.insert(ids.end(), ids.begin(), ids.begin() + half);  // copy of the first half
        sampled.push_back(std::move(ids));
    }
    return from_symbol_words(spec, letter_inventory(spec.sigma), sampled);
}

Lexicon generate_harmony(const GeneratorSpec& spec, Rng& rng) {
    if (spec.min_syllables < 1 || spec.max_syllables < spec.min_syllables)
        throw InputError("vowel-harmony generator: bad syllable range");
    // Inventory layout: consonants, then vowels, then optional initial-only
    // consonants; ids are fixed so generated words are reproducible.
    std::vector<std::string> symbols = {"p", "t", "k", "s", "a", "o", "e", "i"};
    const int n_consonants = 4;
    const int vowel_base = 4;  // a=4 o=5 e=6 i=7; classes {a,o} and {e,i}
    int initial_base = 0;
    if (spec.distinct_initial_consonant) {
        symbols.push_back("m");
        symbols.push_back("n");
        initial_base = 8;
    }

    std::vector<std::vector<int>> sampled;
    sampled.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const int syllables =
            spec.min_syllables +
            static_cast<int>(rng.below(spec.max_syllables - spec.min_syllables + 1));
        const int vclass = static_cast<int>(rng.below(2));  // 0: {a,o}, 1: {e,i}
        std::vector<int> ids;
        ids.reserve(2 * syllables);
        int prev_vowel = -1;
        for (int s = 0; s < syllables; ++s) {
            if (s == 0 && spec.distinct_initial_consonant)
                ids.push_back(initial_base + static_cast<int>(rng.below(2)));
            else
                ids.push_back(static_cast<int>(rng.below(n_consonants)));
            int vowel;
            if (prev_vowel < 0) {
                vowel = static_cast<int>(rng.below(2));
            } else {
                vowel = rng.bernoulli(0.2) ? 1 - prev_vowel : prev_vowel;
            }
            prev_vowel = vowel;
            ids.push_back(vowel_base + 2 * vclass + vowel);
        }
        sampled.push_back(std::move(ids));
    }
    return from_symbol_words(spec, std::move(symbols), sampled);
}

}  // namespace

Lexicon generate(const GeneratorSpec& spec) {
    if (spec.n < 1) throw InputError("generator: n must be at least 1");
    Rng rng(spec.seed);
    switch (spec.kind) {
        case GeneratorSpec::Kind::IidUniform: return generate_iid(spec, rng);
        case GeneratorSpec::Kind::DoubledHalf: return generate_doubled(spec, rng);
        case GeneratorSpec::Kind::VowelHarmony: return generate_harmony(spec, rng);
    }
    throw InputError("generator: invalid kind");
}

double analytic_bias_bits(int sigma, std::size_t t, std::int64_t n) {
    return std::pow(static_cast<double>(sigma), static_cast<double>(t - 1)) *
           static_cast<double>(sigma - 1) * kLog2E / static_cast<double>(n);
}

BiasReport bias_experiment(const GeneratorSpec& spec, std::size_t max_depth) {
    if (spec.kind != GeneratorSpec::Kind::IidUniform)
        throw InputError("bias_experiment requires an iid-uniform spec (true entropy must be known)");
    const std::size_t depth_cap = std::min<std::size_t>(max_depth, spec.min_length);

    const Lexicon lex = generate(spec);
    const TrieModel trie = TrieModel::fit(lex);
    const std::int64_t n = trie.root_count();

    BiasReport report;
    report.n_types = n;
    for (std::size_t t = 1; t <= depth_cap; ++t) {
        report.depth.push_back(t);
        report.true_bits.push_back(std::log2(static_cast<double>(spec.sigma)));
        report.plugin_bits.push_back(trie.conditional_entropy_bits(t));
        report.analytic_bias.push_back(analytic_bias_bits(spec.sigma, t, n));
        report.prefix_count.push_back(static_cast<double>(trie.prefix_count(t)));
        report.expected_count_per_prefix.push_back(
            static_cast<double>(n) /
            std::pow(static_cast<double>(spec.sigma), static_cast<double>(t - 1)));
    }
    return report;
}

BiasReport bias_experiment_mean(const GeneratorSpec& spec, std::size_t max_depth,
                                std::size_t n_seeds) {
    if (n_seeds < 1) throw InputError("bias_experiment_mean: need at least one seed");
    BiasReport mean;
    for (std::size_t s = 0; s < n_seeds; ++s) {
        GeneratorSpec run = spec;
        run.seed = derive_seed(spec.seed, s);
        const BiasReport r = bias_experiment(run, max_depth);
        if (s == 0) {
            mean = r;
            continue;
        }
        mean.n_types += r.n_types;
        for (std::size_t i = 0; i < mean.depth.size(); ++i) {
            mean.plugin_bits[i] += r.plugin_bits[i];
            mean.prefix_count[i] += r.prefix_count[i];
        }
    }
    const double k = static_cast<double>(n_seeds);
    mean.n_types = static_cast<std::int64_t>(static_cast<double>(mean.n_types) / k);
    for (std::size_t i = 0; i < mean.depth.size(); ++i) {
        mean.plugin_bits[i] /= k;
        mean.prefix_count[i] /= k;
        // Analytic bias recomputed against the mean type count.
        mean.analytic_bias[i] = analytic_bias_bits(spec.sigma, mean.depth[i], mean.n_types);
    }
    return mean;
}

std::string bias_report_to_csv(const BiasReport& report) {
    std::string out = "depth,true_bits,plugin_bits,analytic_bias_bits,prefix_count\n";
    char buf[160];
    for (std::size_t i = 0; i < report.depth.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f,%.6f,%.1f\n", report.depth[i],
                      report.true_bits[i], report.plugin_bits[i], report.analytic_bias[i],
                      report.prefix_count[i]);
        out += buf;
    }
    return out;
}

MiSymmetry mi_symmetry_check(const Lexicon& lex, std::size_t t, std::size_t min_observations) {
    if (t < 2) throw InputError("mi_symmetry_check: t must be at least 2");
    const int s = lex.alphabet.surface_count();
    std::vector<std::vector<double>> joint(s, std::vector<double>(s, 0.0));
    std::size_t n = 0;
    for (const Word& w : lex.words) {
        if (w.length() < t) continue;
        joint[w.segment_ids[t - 2]][w.segment_ids[t - 1]] += 1.0;
        ++n;
    }
    if (n < min_observations)
        throw InputError("mi_symmetry_check: insufficient joint observations (" +
                         std::to_string(n) + " < " + std::to_string(min_observations) + ")");
    for (auto& row : joint)
        for (double& x : row) x /= static_cast<double>(n);

    std::vector<double> pa(s, 0.0), pb(s, 0.0);
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) {
            pa[a] += joint[a][b];
            pb[b] += joint[a][b];
        }

    // H(W_t | W_{t-1}) via per-row entropies.
    double h_b_given_a = 0.0;
    for (int a = 0; a < s; ++a) {
        if (pa[a] <= 0.0) continue;
        double h = 0.0;
        for (int b = 0; b < s; ++b) {
            const double p = joint[a][b] / pa[a];
            if (p > 0.0) h -= p * std::log2(p);
        }
        h_b_given_a += pa[a] * h;
    }
    // H(W_{t-1} | W_t) via per-column entropies.
    double h_a_given_b = 0.0;
    for (int b = 0; b < s; ++b) {
        if (pb[b] <= 0.0) continue;
        double h = 0.0;
        for (int a = 0; a < s; ++a) {
            const double p = joint[a][b] / pb[b];
            if (p > 0.0) h -= p * std::log2(p);
        }
        h_a_given_b += pb[b] * h;
    }

    MiSymmetry out;
    out.forward_bits = entropy_bits(pb) - h_b_given_a;
    out.backward_bits = entropy_bits(pa) - h_a_given_b;
    out.joint_observations = n;
    return out;
}

}  // namespace lexinfo
