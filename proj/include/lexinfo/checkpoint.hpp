#pragma once

#include <memory>
#include <string>

#include "lexinfo/count_models.hpp"
#include "lexinfo/lexicon.hpp"
#include "lexinfo/neural_models.hpp"
#include "lexinfo/training.hpp"

namespace lexinfo {

// A trained model of any family plus the provenance needed to evaluate it.
struct AnyModel {
    ModelFamily family;
    std::string language;
    std::uint64_t alphabet_hash = 0;
    int surface_count = 0;
    std::uint64_t split_seed = 0;
    std::uint64_t train_seed = 0;

    std::unique_ptr<RecurrentLM> recurrent;
    std::unique_ptr<MaskedAttentionLM> attention;
    std::unique_ptr<UnigramModel> unigram;
    std::unique_ptr<TrieModel> trie;
};

// Versioned binary container: JSON header (family, sizes, hashes) followed by
// named raw double arrays. Loading verifies the alphabet hash.
void save_model(const AnyModel& model, const std::string& path);
AnyModel load_model(const std::string& path, const Alphabet& alphabet);

}  // namespace lexinfo
