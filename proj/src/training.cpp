#include "lexinfo/training.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

#include "lexinfo/errors.hpp"

namespace lexinfo {

ModelFamily family_from_name(std::string_view name) {
    if (name == "forward-lstm") return ModelFamily::ForwardLstm;
    if (name == "backward-lstm") return ModelFamily::BackwardLstm;
    if (name == "cloze") return ModelFamily::Cloze;
    if (name == "position") return ModelFamily::PositionOnly;
    if (name == "unigram") return ModelFamily::Unigram;
    if (name == "trie") return ModelFamily::Trie;
    std::string valid;
    for (const std::string& n : family_names()) {
        if (!valid.empty()) valid += ", ";
        valid += n;
    }
    throw InputError("unknown model family '" + std::string(name) + "' (valid: " + valid + ")");
}

std::string family_name(ModelFamily family) {
    switch (family) {
        case ModelFamily::ForwardLstm: return "forward-lstm";
        case ModelFamily::BackwardLstm: return "backward-lstm";
        case ModelFamily::Cloze: return "cloze";
        case ModelFamily::PositionOnly: return "position";
        case ModelFamily::Unigram: return "unigram";
        case ModelFamily::Trie: return "trie";
    }
    throw InputError("invalid model family");
}

std::vector<std::string> family_names() {
    return {"forward-lstm", "backward-lstm", "cloze", "position", "unigram", "trie"};
}

bool family_is_neural(ModelFamily family) {
    return family == ModelFamily::ForwardLstm || family == ModelFamily::BackwardLstm ||
           family == ModelFamily::Cloze || family == ModelFamily::PositionOnly;
}

namespace {

// One unit of training work: a word, and for cloze models the masked position.
struct Example {
    std::size_t word_idx;
    std::size_t cloze_pos;  // 1-based; 0 for non-cloze families
};

struct BatchLoss {
    double nats_sum = 0.0;
    std::size_t targets = 0;
};

template <typename BuildFn>
TrainResult run_training(ParamSet& params, const BuildFn& build_batch,
                         const std::vector<Example>& examples,
                         const std::function<double()>& eval_dev, const TrainConfig& cfg,
                         std::uint64_t seed) {
    if (examples.empty()) throw InputError("training requires at least one example");

    Adam adam(params.tensors, cfg.adam);
    Rng shuffle_rng(derive_seed(seed, "shuffle"));
    Rng dropout_rng(derive_seed(seed, "dropout"));

    TrainResult result;
    std::vector<Tensor> best_params = params.tensors;
    double best_dev = std::numeric_limits<double>::infinity();
    int best_epoch = 0;
    int since_best = 0;

    std::vector<Example> order = examples;
    const std::size_t batch = std::max<std::size_t>(1, static_cast<std::size_t>(cfg.batch_size));

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double epoch_nats = 0.0;
        std::size_t epoch_targets = 0;

        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t end = std::min(order.size(), start + batch);
            Graph g;
            std::vector<Val> leaves = make_leaves(g, params);
            std::vector<Val> losses;
            for (std::size_t i = start; i < end; ++i)
                build_batch(g, leaves, order[i], dropout_rng, losses);
            const Val total = g.sum_scalars(losses);
            const Val mean = g.scale(total, 1.0 / static_cast<double>(losses.size()));
            const double batch_nats = g.value(mean).v[0];
            if (!std::isfinite(batch_nats)) throw NumericError("training diverged: non-finite loss");
            epoch_nats += g.value(total).v[0];
            epoch_targets += losses.size();

            g.backward(mean);
            std::vector<Tensor> grads;
            grads.reserve(leaves.size());
            for (Val v : leaves) grads.push_back(g.grad(v));
            adam.step(params.tensors, grads);
        }

        const double train_nats = epoch_nats / static_cast<double>(epoch_targets);
        const double dev_nats = eval_dev();
        if (!std::isfinite(dev_nats)) throw NumericError("training diverged: non-finite dev loss");
        result.log.push_back({epoch, train_nats, dev_nats});

        if (dev_nats < best_dev) {
            best_dev = dev_nats;
            best_epoch = epoch;
            best_params = params.tensors;
            since_best = 0;
        } else {
            ++since_best;
            if (since_best >= cfg.patience) break;
        }
    }

    params.tensors = std::move(best_params);
    result.best_epoch = best_epoch;
    result.best_dev_nats = best_dev;
    return result;
}

}  // namespace

double eval_recurrent_nats(const RecurrentLM& model, const std::vector<Word>& words) {
    if (words.empty()) throw InputError("evaluation set is empty");
    double nats = 0.0;
    std::size_t targets = 0;
    for (const Word& w : words) {
        Graph g;
        std::vector<Val> leaves = make_leaves(g, model.params());
        std::vector<Val> losses;
        model.build_losses(g, leaves, w, /*train=*/false, nullptr, losses);
        for (Val v : losses) nats += g.value(v).v[0];
        targets += losses.size();
    }
    return nats / static_cast<double>(targets);
}

double eval_attention_nats(const MaskedAttentionLM& model, const std::vector<Word>& words) {
    if (words.empty()) throw InputError("evaluation set is empty");
    double nats = 0.0;
    std::size_t targets = 0;
    for (const Word& w : words) {
        Graph g;
        std::vector<Val> leaves = make_leaves(g, model.params());
        std::vector<Val> losses;
        if (model.variant() == AttentionVariant::Cloze) {
            for (std::size_t t = 1; t <= w.length(); ++t)
                losses.push_back(model.build_cloze_loss(g, leaves, w, t));
        } else {
            model.build_position_losses(g, leaves, w, losses);
        }
        for (Val v : losses) nats += g.value(v).v[0];
        targets += losses.size();
    }
    return nats / static_cast<double>(targets);
}

TrainResult train_recurrent(RecurrentLM& model, const std::vector<Word>& train_words,
                            const std::vector<Word>& dev_words, const TrainConfig& cfg,
                            std::uint64_t seed) {
    Rng init_rng(derive_seed(seed, "init"));
    model.init_params(init_rng);

    std::vector<Example> examples;
    examples.reserve(train_words.size());
    for (std::size_t i = 0; i < train_words.size(); ++i) examples.push_back({i, 0});

    auto build = [&](Graph& g, const std::vector<Val>& leaves, const Example& ex, Rng& drng,
                     std::vector<Val>& losses) {
        model.build_losses(g, leaves, train_words[ex.word_idx], /*train=*/true, &drng, losses);
    };
    auto eval_dev = [&] { return eval_recurrent_nats(model, dev_words); };
    return run_training(model.params(), build, examples, eval_dev, cfg, seed);
}

TrainResult train_attention(MaskedAttentionLM& model, const std::vector<Word>& train_words,
                            const std::vector<Word>& dev_words, const TrainConfig& cfg,
                            std::uint64_t seed) {
    Rng init_rng(derive_seed(seed, "init"));
    model.init_params(init_rng);

    // Cloze training enumerates every maskable position as its own example.
    std::vector<Example> examples;
    for (std::size_t i = 0; i < train_words.size(); ++i) {
        if (model.variant() == AttentionVariant::Cloze) {
            for (std::size_t t = 1; t <= train_words[i].length(); ++t) examples.push_back({i, t});
        } else {
            examples.push_back({i, 0});
        }
    }

    auto build = [&](Graph& g, const std::vector<Val>& leaves, const Example& ex, Rng& drng,
                     std::vector<Val>& losses) {
        (void)drng;
        if (model.variant() == AttentionVariant::Cloze) {
            losses.push_back(model.build_cloze_loss(g, leaves, train_words[ex.word_idx], ex.cloze_pos));
        } else {
            model.build_position_losses(g, leaves, train_words[ex.word_idx], losses);
        }
    };
    auto eval_dev = [&] { return eval_attention_nats(model, dev_words); };
    return run_training(model.params(), build, examples, eval_dev, cfg, seed);
}

std::string training_log_json(ModelFamily family, std::uint64_t seed, const TrainResult& result) {
    nlohmann::json j;
    j["family"] = family_name(family);
    j["seed"] = seed;
    j["best_epoch"] = result.best_epoch;
    j["best_dev_nats"] = result.best_dev_nats;
    nlohmann::json epochs = nlohmann::json::array();
    for (const EpochLog& e : result.log)
        epochs.push_back({{"epoch", e.epoch}, {"train_nats", e.train_nats}, {"dev_nats", e.dev_nats}});
    j["epochs"] = std::move(epochs);
    return j.dump(1);
}

}  // namespace lexinfo
