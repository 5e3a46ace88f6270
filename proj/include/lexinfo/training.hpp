#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexinfo/lexicon.hpp"
#include "lexinfo/neural_models.hpp"
#include "lexinfo/optimizer.hpp"

namespace lexinfo {

enum class ModelFamily { ForwardLstm, BackwardLstm, Cloze, PositionOnly, Unigram, Trie };

ModelFamily family_from_name(std::string_view name);  // throws InputError
std::string family_name(ModelFamily family);
std::vector<std::string> family_names();
bool family_is_neural(ModelFamily family);

struct TrainConfig {
    RecurrentConfig recurrent;
    AttentionConfig attention;
    int batch_size = 64;
    int max_epochs = 100;
    int patience = 5;  // epochs without dev improvement before stopping
    AdamConfig adam;
};

struct EpochLog {
    int epoch;
    double train_nats;  // mean per target, training mode
    double dev_nats;    // mean per target, evaluation mode
};

struct TrainResult {
    std::vector<EpochLog> log;
    int best_epoch = 0;
    double best_dev_nats = 0.0;
};

// Training words may repeat (callers control the example stream); dev words
// drive early stopping. The model keeps its best-dev parameters. The seed
// fixes initialization, shuffling, and dropout, so identical seeds give
// bitwise-identical parameters.
TrainResult train_recurrent(RecurrentLM& model, const std::vector<Word>& train_words,
                            const std::vector<Word>& dev_words, const TrainConfig& cfg,
                            std::uint64_t seed);
TrainResult train_attention(MaskedAttentionLM& model, const std::vector<Word>& train_words,
                            const std::vector<Word>& dev_words, const TrainConfig& cfg,
                            std::uint64_t seed);

// Mean per-target loss (nats) in evaluation mode.
double eval_recurrent_nats(const RecurrentLM& model, const std::vector<Word>& words);
double eval_attention_nats(const MaskedAttentionLM& model, const std::vector<Word>& words);

std::string training_log_json(ModelFamily family, std::uint64_t seed, const TrainResult& result);

}  // namespace lexinfo
