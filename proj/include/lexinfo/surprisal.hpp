#pragma once

#include <string>
#include <vector>

#include "lexinfo/count_models.hpp"
#include "lexinfo/lexicon.hpp"
#include "lexinfo/neural_models.hpp"

namespace lexinfo {

enum class MeasureKind { Forward, Backward, Unigram, PositionSpecific, Cloze };

MeasureKind measure_from_name(std::string_view name);  // throws InputError
std::string measure_name(MeasureKind m);

// Terminal policy: forward keeps its EOW prediction, backward keeps its BOW
// prediction. Unigram, position-specific and cloze never score terminals.
struct EowPolicy {
    bool include_terminals = true;
};

inline const std::string kEowSegment = "<eow>";
inline const std::string kBowSegment = "<bow>";

struct SurprisalRecord {
    std::string language;
    int word_id;       // index of the word within the evaluated lexicon
    int position;      // 1-based; 0 marks the backward BOW terminal
    std::string segment;
    MeasureKind measure;
    double bits;

    bool is_terminal() const { return segment == kEowSegment || segment == kBowSegment; }
};

struct SurprisalResult {
    std::vector<SurprisalRecord> records;
    std::size_t quarantined = 0;  // non-finite surprisals kept out of records
};

// Forward with terminals: positions 1..L+1 (L+1 is the EOW step). Backward
// with terminals: positions 0..L (0 is the BOW step). Measure and model
// family must agree.
SurprisalResult compute_surprisals(const RecurrentLM& model, const Lexicon& lex, MeasureKind m,
                                   EowPolicy policy);
SurprisalResult compute_surprisals(const MaskedAttentionLM& model, const Lexicon& lex,
                                   MeasureKind m, EowPolicy policy);
SurprisalResult compute_surprisals(const UnigramModel& model, const Lexicon& lex, MeasureKind m,
                                   EowPolicy policy);

// The plug-in setting: the trie is only defined on its own training set;
// anything else is refused because unseen continuations have probability 0.
SurprisalResult compute_surprisals_trie(const TrieModel& model, const Lexicon& training_set,
                                        EowPolicy policy);

enum class RecordFilter { All, TerminalsOnly, NonTerminalsOnly };

// Arithmetic mean of surprisals (bits) after filtering; empty selection is
// an error.
double cross_entropy_estimate(const std::vector<SurprisalRecord>& records, RecordFilter filter);

// CSV: language,word_id,position,segment,measure,surprisal_bits (6 decimals).
std::string records_to_csv(const std::vector<SurprisalRecord>& records);
std::vector<SurprisalRecord> records_from_csv(std::string_view csv);
void save_records(const std::vector<SurprisalRecord>& records, const std::string& path);
std::vector<SurprisalRecord> load_records(const std::string& path);

}  // namespace lexinfo
