#pragma once

#include <string>
#include <vector>

#include "lexinfo/graph.hpp"
#include "lexinfo/lexicon.hpp"
#include "lexinfo/rng.hpp"
#include "lexinfo/tensor.hpp"

namespace lexinfo {

// Named parameter tensors in a fixed order.
struct ParamSet {
    std::vector<std::string> names;
    std::vector<Tensor> tensors;

    Tensor& add(std::string name, std::vector<std::size_t> shape);
    std::size_t index_of(std::string_view name) const;  // throws InputError
    Tensor& operator[](std::string_view name) { return tensors[index_of(name)]; }
    const Tensor& at(std::string_view name) const;
};

// Registers every parameter as a graph leaf, in order.
std::vector<Val> make_leaves(Graph& g, const ParamSet& params);

struct RecurrentConfig {
    int embed_dim = 64;
    int layers = 2;
    int hidden = 256;
    double dropout = 0.3;
};

enum class Direction { Forward, Backward };

// Gated-recurrent (LSTM) character model. Input tokens are the surface
// classes plus a start token; predictions range over surface classes plus
// the terminal class. Backward models see reversed strings, making their
// terminal prediction the BOW.
class RecurrentLM {
public:
    RecurrentLM(Direction dir, int surface_count, RecurrentConfig cfg);

    void init_params(Rng& rng);

    // Per-target losses in nats for one word: L surface steps + terminal.
    // leaves must come from make_leaves on this model's params.
    void build_losses(Graph& g, const std::vector<Val>& leaves, const Word& word, bool train,
                      Rng* dropout_rng, std::vector<Val>& out) const;

    // One distribution per target (L+1 of them), each over S+1 classes.
    // Forward: targets w_1..w_L, EOW. Backward: targets w_L..w_1, BOW.
    std::vector<std::vector<double>> step_distributions(const Word& word) const;

    Direction direction() const { return dir_; }
    const RecurrentConfig& config() const { return cfg_; }
    int surface_count() const { return surface_; }
    int num_classes() const { return surface_ + 1; }

    ParamSet& params() { return params_; }
    const ParamSet& params() const { return params_; }

private:
    Val lstm_step(Graph& g, const std::vector<Val>& leaves, int layer, Val x, Val h_prev,
                  Val c_prev, Val& c_out) const;

    Direction dir_;
    int surface_;
    RecurrentConfig cfg_;
    ParamSet params_;
};

struct AttentionConfig {
    int embed_dim = 64;
    int layers = 3;
    int heads = 4;
    int ff_dim = 256;
};

enum class AttentionVariant { Cloze, PositionOnly };

// Bidirectional self-attention model with sinusoidal position encodings.
// The cloze variant masks one segment and predicts it from the rest; the
// position-only variant masks every segment, so its output depends only on
// (position, word length). Predictions range over surface classes only.
class MaskedAttentionLM {
public:
    MaskedAttentionLM(AttentionVariant variant, int surface_count, AttentionConfig cfg);

    void init_params(Rng& rng);

    // Cloze loss for masking position t (1-based) of word.
    Val build_cloze_loss(Graph& g, const std::vector<Val>& leaves, const Word& word,
                         std::size_t t) const;
    // Position-only losses for all positions of one word.
    void build_position_losses(Graph& g, const std::vector<Val>& leaves, const Word& word,
                               std::vector<Val>& out) const;

    std::vector<double> cloze_distribution(const Word& word, std::size_t t) const;
    std::vector<double> position_distribution(std::size_t t, std::size_t length) const;

    AttentionVariant variant() const { return variant_; }
    const AttentionConfig& config() const { return cfg_; }
    int surface_count() const { return surface_; }

    ParamSet& params() { return params_; }
    const ParamSet& params() const { return params_; }

private:
    Val encode(Graph& g, const std::vector<Val>& leaves, const std::vector<int>& ids) const;
    Tensor positional_encoding(std::size_t length) const;
    int mask_token() const { return surface_; }

    AttentionVariant variant_;
    int surface_;
    AttentionConfig cfg_;
    ParamSet params_;
};

}  // namespace lexinfo
