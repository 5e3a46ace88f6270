#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lexinfo/count_models.hpp"
#include "lexinfo/surprisal.hpp"

namespace lexinfo {

// Per-word initial/final half means over the effective record sequence
// (records ordered by position, backward's position 0 included first).
struct BinnedWord {
    int word_id;
    double initial_mean;
    double final_mean;
    double diff() const { return initial_mean - final_mean; }
};

struct BinningResult {
    std::vector<BinnedWord> words;
    std::size_t excluded_short = 0;  // words with effective length < 2
    // Segment-pooled means over the two halves (middle positions dropped),
    // the quantities reported in the ablation table.
    double pooled_initial_mean = 0.0;
    double pooled_final_mean = 0.0;
    std::size_t pooled_initial_n = 0;
    std::size_t pooled_final_n = 0;
};

BinningResult bin_initial_final(const std::vector<SurprisalRecord>& records);

struct TestResult {
    double statistic = 0.0;  // mean of per-word (initial - final), bits
    double p_value = 1.0;    // (k+1)/(n+1) estimator, two-sided
    std::size_t n_words = 0;
    std::string direction;  // "initial" | "final" | "none"
    bool bh_significant = false;
};

// Null: each word's (initial, final) pair is swapped with probability 1/2.
TestResult paired_permutation_test(const std::vector<BinnedWord>& words,
                                   std::size_t n_permutations, std::uint64_t seed);

// Unpaired variant: pools all half-means and reshuffles group labels.
TestResult pooled_permutation_test(const std::vector<BinnedWord>& words,
                                   std::size_t n_permutations, std::uint64_t seed);

// Benjamini-Hochberg step-up; returns per-input rejection flags.
std::vector<bool> bh_correct(const std::vector<double>& p_values, double alpha = 0.01);

enum class SlopeRestriction { AllPositions, FirstTwoOnly };

struct SlopeResult {
    double slope = 0.0;  // bits per segment of word length
    double p_value = 1.0;
    SlopeRestriction restriction = SlopeRestriction::AllPositions;
    std::size_t n_pairs = 0;
};

// OLS slope of surprisal on word length (one pair per record); permutation
// p-value from shuffling the surprisal-length pairing.
SlopeResult length_slope(const std::vector<SurprisalRecord>& records, SlopeRestriction restriction,
                         std::size_t n_permutations, std::uint64_t seed);

struct KLProfile {
    std::vector<int> positions;     // retained positions (coverage ok)
    std::vector<double> kl_bits;    // KL(p(.|t) || p(.)) per retained position
    std::vector<double> coverage;   // fraction of words reaching the position
    int argmax_position = 0;
};

KLProfile positional_kl(const PositionalUnigramModel& positional, const UnigramModel& global,
                        double min_coverage = 0.75);

struct CurvePoint {
    int position;
    double mean_bits;
    std::size_t count;
};

std::vector<CurvePoint> positional_mean_curve(const std::vector<SurprisalRecord>& records);
std::string curve_to_csv(const std::vector<CurvePoint>& curve);

struct AblationRow {
    std::string measure;
    // Terminal-including stats exist only for the directional measures.
    std::optional<double> initial_with;
    std::optional<double> final_with;
    std::optional<double> diff_pct_with;
    double initial_without = 0.0;
    double final_without = 0.0;
    double diff_pct_without = 0.0;
};

// Rows per measure present in the inputs; both record sets must cover the
// same words of the same language per measure.
std::vector<AblationRow> eow_ablation_report(const std::vector<SurprisalRecord>& with_terminals,
                                             const std::vector<SurprisalRecord>& without_terminals);
std::string ablation_to_csv(const std::vector<AblationRow>& rows);

inline double diff_pct(double initial, double final_) {
    return (initial - final_) / initial * 100.0;
}

}  // namespace lexinfo
