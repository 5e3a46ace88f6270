#include "lexinfo/neural_models.hpp"

#include <algorithm>
#include <cmath>

#include "lexinfo/errors.hpp"

namespace lexinfo {

Tensor& ParamSet::add(std::string name, std::vector<std::size_t> shape) {
    names.push_back(std::move(name));
    tensors.push_back(Tensor::zeros(std::move(shape)));
    return tensors.back();
}

std::size_t ParamSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    throw InputError("unknown parameter: " + std::string(name));
}

const Tensor& ParamSet::at(std::string_view name) const { return tensors[index_of(name)]; }

std::vector<Val> make_leaves(Graph& g, const ParamSet& params) {
    std::vector<Val> leaves;
    leaves.reserve(params.tensors.size());
    for (const Tensor& t : params.tensors) leaves.push_back(g.leaf(t));
    return leaves;
}

namespace {

// Uniform +-1/sqrt(fan_in); fan_in is the trailing dimension.
void init_uniform(Tensor& t, Rng& rng) {
    const std::size_t fan_in = t.rank() == 2 ? t.cols() : t.size();
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (double& x : t.v) x = rng.uniform(-bound, bound);
}

}  // namespace

// ---------------------------------------------------------------------------
// RecurrentLM
// ---------------------------------------------------------------------------

RecurrentLM::RecurrentLM(Direction dir, int surface_count, RecurrentConfig cfg)
    : dir_(dir), surface_(surface_count), cfg_(cfg) {
    const std::size_t s = static_cast<std::size_t>(surface_);
    const std::size_t d = static_cast<std::size_t>(cfg_.embed_dim);
    const std::size_t h = static_cast<std::size_t>(cfg_.hidden);
    params_.add("embed", {s + 1, d});  // surface + start token
    for (int l = 0; l < cfg_.layers; ++l) {
        const std::size_t in = l == 0 ? d : h;
        params_.add("wx." + std::to_string(l), {4 * h, in});
        params_.add("wh." + std::to_string(l), {4 * h, h});
        params_.add("b." + std::to_string(l), {4 * h});
    }
    params_.add("w_out", {s + 1, h});
    params_.add("b_out", {s + 1});
}

void RecurrentLM::init_params(Rng& rng) {
    const std::size_t h = static_cast<std::size_t>(cfg_.hidden);
    for (std::size_t i = 0; i < params_.tensors.size(); ++i) {
        Tensor& t = params_.tensors[i];
        const std::string& name = params_.names[i];
        if (name.rfind("b.", 0) == 0) {
            t.fill(0.0);
            for (std::size_t j = h; j < 2 * h; ++j) t.v[j] = 1.0;  // forget-gate bias
        } else if (name == "b_out") {
            t.fill(0.0);
        } else {
            init_uniform(t, rng);
        }
    }
}

Val RecurrentLM::lstm_step(Graph& g, const std::vector<Val>& leaves, int layer, Val x, Val h_prev,
                           Val c_prev, Val& c_out) const {
    const std::size_t h = static_cast<std::size_t>(cfg_.hidden);
    const Val wx = leaves[params_.index_of("wx." + std::to_string(layer))];
    const Val wh = leaves[params_.index_of("wh." + std::to_string(layer))];
    const Val b = leaves[params_.index_of("b." + std::to_string(layer))];
    const Val pre = g.add(g.add(g.matvec(wx, x), g.matvec(wh, h_prev)), b);
    const Val gi = g.sigmoid(g.slice(pre, 0, h));
    const Val gf = g.sigmoid(g.slice(pre, h, h));
    const Val gg = g.tanh_op(g.slice(pre, 2 * h, h));
    const Val go = g.sigmoid(g.slice(pre, 3 * h, h));
    c_out = g.add(g.mul(gf, c_prev), g.mul(gi, gg));
    return g.mul(go, g.tanh_op(c_out));
}

void RecurrentLM::build_losses(Graph& g, const std::vector<Val>& leaves, const Word& word,
                               bool train, Rng* dropout_rng, std::vector<Val>& out) const {
    if (word.segment_ids.empty()) throw InputError("recurrent model: empty word");
    std::vector<int> seq = word.segment_ids;
    if (dir_ == Direction::Backward) std::reverse(seq.begin(), seq.end());

    const int start_token = surface_;
    const int terminal = surface_;
    const std::size_t h = static_cast<std::size_t>(cfg_.hidden);
    const Val embed = leaves[params_.index_of("embed")];
    const Val w_out = leaves[params_.index_of("w_out")];
    const Val b_out = leaves[params_.index_of("b_out")];
    const bool use_dropout = train && cfg_.dropout > 0.0 && dropout_rng != nullptr;

    std::vector<Val> hs(cfg_.layers), cs(cfg_.layers);
    const Val zero_h = g.leaf(Tensor::zeros({h}));
    for (int l = 0; l < cfg_.layers; ++l) hs[l] = cs[l] = zero_h;

    const std::size_t steps = seq.size() + 1;
    for (std::size_t t = 0; t < steps; ++t) {
        const int in_id = t == 0 ? start_token : seq[t - 1];
        const int target = t < seq.size() ? seq[t] : terminal;
        Val x = g.embed_row(embed, static_cast<std::size_t>(in_id));
        if (use_dropout) x = g.dropout(x, cfg_.dropout, *dropout_rng);
        for (int l = 0; l < cfg_.layers; ++l) {
            Val c_out;
            const Val h_new = lstm_step(g, leaves, l, x, hs[l], cs[l], c_out);
            hs[l] = h_new;
            cs[l] = c_out;
            x = h_new;
            if (use_dropout) x = g.dropout(x, cfg_.dropout, *dropout_rng);
        }
        const Val logits = g.add(g.matvec(w_out, x), b_out);
        out.push_back(g.nll(g.log_softmax(logits), static_cast<std::size_t>(target)));
    }
}

std::vector<std::vector<double>> RecurrentLM::step_distributions(const Word& word) const {
    if (word.segment_ids.empty()) throw InputError("recurrent model: empty word");
    std::vector<int> seq = word.segment_ids;
    if (dir_ == Direction::Backward) std::reverse(seq.begin(), seq.end());

    Graph g;
    const std::vector<Val> leaves = make_leaves(g, params_);
    const std::size_t h = static_cast<std::size_t>(cfg_.hidden);
    const Val embed = leaves[params_.index_of("embed")];
    const Val w_out = leaves[params_.index_of("w_out")];
    const Val b_out = leaves[params_.index_of("b_out")];

    std::vector<Val> hs(cfg_.layers), cs(cfg_.layers);
    const Val zero_h = g.leaf(Tensor::zeros({h}));
    for (int l = 0; l < cfg_.layers; ++l) hs[l] = cs[l] = zero_h;

    std::vector<std::vector<double>> dists;
    const std::size_t steps = seq.size() + 1;
    for (std::size_t t = 0; t < steps; ++t) {
        const int in_id = t == 0 ? surface_ : seq[t - 1];
        Val x = g.embed_row(embed, static_cast<std::size_t>(in_id));
        for (int l = 0; l < cfg_.layers; ++l) {
            Val c_out;
            const Val h_new = lstm_step(g, leaves, l, x, hs[l], cs[l], c_out);
            hs[l] = h_new;
            cs[l] = c_out;
            x = h_new;
        }
        const Val logp = g.log_softmax(g.add(g.matvec(w_out, x), b_out));
        const Tensor& lp = g.value(logp);
        std::vector<double> dist(lp.size());
        for (std::size_t i = 0; i < lp.size(); ++i) dist[i] = std::exp(lp.v[i]);
        dists.push_back(std::move(dist));
    }
    return dists;
}

// ---------------------------------------------------------------------------
// MaskedAttentionLM
// ---------------------------------------------------------------------------

MaskedAttentionLM::MaskedAttentionLM(AttentionVariant variant, int surface_count,
                                     AttentionConfig cfg)
    : variant_(variant), surface_(surface_count), cfg_(cfg) {
    if (cfg_.embed_dim % cfg_.heads != 0)
        throw InputError("attention model: embed_dim must be divisible by heads");
    const std::size_t s = static_cast<std::size_t>(surface_);
    const std::size_t d = static_cast<std::size_t>(cfg_.embed_dim);
    const std::size_t dh = d / static_cast<std::size_t>(cfg_.heads);
    const std::size_t ff = static_cast<std::size_t>(cfg_.ff_dim);
    params_.add("embed", {s + 1, d});  // surface + MASK
    for (int l = 0; l < cfg_.layers; ++l) {
        const std::string ls = std::to_string(l);
        for (int hd = 0; hd < cfg_.heads; ++hd) {
            const std::string hs = ls + "." + std::to_string(hd);
            params_.add("wq." + hs, {dh, d});
            params_.add("wk." + hs, {dh, d});
            params_.add("wv." + hs, {dh, d});
        }
        params_.add("wo." + ls, {d, d});
        params_.add("ln1g." + ls, {d});
        params_.add("ln1b." + ls, {d});
        params_.add("ff1." + ls, {ff, d});
        params_.add("ff1b." + ls, {ff});
        params_.add("ff2." + ls, {d, ff});
        params_.add("ff2b." + ls, {d});
        params_.add("ln2g." + ls, {d});
        params_.add("ln2b." + ls, {d});
    }
    params_.add("w_out", {s, d});
    params_.add("b_out", {s});
}

void MaskedAttentionLM::init_params(Rng& rng) {
    for (std::size_t i = 0; i < params_.tensors.size(); ++i) {
        Tensor& t = params_.tensors[i];
        const std::string& name = params_.names[i];
        if (name.rfind("ln", 0) == 0) {
            t.fill(name[3] == 'g' ? 1.0 : 0.0);
        } else if (name == "b_out" || name.rfind("ff1b", 0) == 0 || name.rfind("ff2b", 0) == 0) {
            t.fill(0.0);
        } else {
            init_uniform(t, rng);
        }
    }
}

Tensor MaskedAttentionLM::positional_encoding(std::size_t length) const {
    const std::size_t d = static_cast<std::size_t>(cfg_.embed_dim);
    Tensor pe = Tensor::zeros({length, d});
    for (std::size_t pos = 0; pos < length; ++pos) {
        for (std::size_t i = 0; 2 * i < d; ++i) {
            const double angle =
                static_cast<double>(pos) /
                std::pow(10000.0, static_cast<double>(2 * i) / static_cast<double>(d));
            pe.at(pos, 2 * i) = std::sin(angle);
            if (2 * i + 1 < d) pe.at(pos, 2 * i + 1) = std::cos(angle);
        }
    }
    return pe;
}

Val MaskedAttentionLM::encode(Graph& g, const std::vector<Val>& leaves,
                              const std::vector<int>& ids) const {
    const std::size_t d = static_cast<std::size_t>(cfg_.embed_dim);
    const std::size_t dh = d / static_cast<std::size_t>(cfg_.heads);
    const double att_scale = 1.0 / std::sqrt(static_cast<double>(dh));

    Val x = g.embed_rows(leaves[params_.index_of("embed")], ids);
    x = g.add(x, g.leaf(positional_encoding(ids.size())));

    for (int l = 0; l < cfg_.layers; ++l) {
        const std::string ls = std::to_string(l);
        std::vector<Val> head_outputs;
        head_outputs.reserve(cfg_.heads);
        for (int hd = 0; hd < cfg_.heads; ++hd) {
            const std::string hs = ls + "." + std::to_string(hd);
            const Val q = g.matmul_nt(x, leaves[params_.index_of("wq." + hs)]);
            const Val k = g.matmul_nt(x, leaves[params_.index_of("wk." + hs)]);
            const Val v = g.matmul_nt(x, leaves[params_.index_of("wv." + hs)]);
            const Val scores = g.scale(g.matmul_nt(q, k), att_scale);
            head_outputs.push_back(g.matmul(g.row_softmax(scores), v));
        }
        const Val attn = g.matmul_nt(g.concat_cols(head_outputs),
                                     leaves[params_.index_of("wo." + ls)]);
        x = g.layer_norm(g.add(x, attn), leaves[params_.index_of("ln1g." + ls)],
                         leaves[params_.index_of("ln1b." + ls)]);
        const Val f1 = g.relu(g.add_rowvec(g.matmul_nt(x, leaves[params_.index_of("ff1." + ls)]),
                                           leaves[params_.index_of("ff1b." + ls)]));
        const Val f2 = g.add_rowvec(g.matmul_nt(f1, leaves[params_.index_of("ff2." + ls)]),
                                    leaves[params_.index_of("ff2b." + ls)]);
        x = g.layer_norm(g.add(x, f2), leaves[params_.index_of("ln2g." + ls)],
                         leaves[params_.index_of("ln2b." + ls)]);
    }
    return x;
}

Val MaskedAttentionLM::build_cloze_loss(Graph& g, const std::vector<Val>& leaves, const Word& word,
                                        std::size_t t) const {
    if (variant_ != AttentionVariant::Cloze)
        throw InputError("cloze loss requested from a position-only model");
    if (t < 1 || t > word.length()) throw InputError("cloze: position out of range");
    std::vector<int> ids = word.segment_ids;
    ids[t - 1] = mask_token();
    const Val x = encode(g, leaves, ids);
    const Val r = g.row(x, t - 1);
    const Val logits = g.add(g.matvec(leaves[params_.index_of("w_out")], r),
                             leaves[params_.index_of("b_out")]);
    return g.nll(g.log_softmax(logits), static_cast<std::size_t>(word.segment_ids[t - 1]));
}

void MaskedAttentionLM::build_position_losses(Graph& g, const std::vector<Val>& leaves,
                                              const Word& word, std::vector<Val>& out) const {
    if (variant_ != AttentionVariant::PositionOnly)
        throw InputError("position losses requested from a cloze model");
    const std::vector<int> ids(word.length(), mask_token());
    const Val x = encode(g, leaves, ids);
    const Val w_out = leaves[params_.index_of("w_out")];
    const Val b_out = leaves[params_.index_of("b_out")];
    for (std::size_t t = 0; t < word.length(); ++t) {
        const Val logits = g.add(g.matvec(w_out, g.row(x, t)), b_out);
        out.push_back(g.nll(g.log_softmax(logits), static_cast<std::size_t>(word.segment_ids[t])));
    }
}

std::vector<double> MaskedAttentionLM::cloze_distribution(const Word& word, std::size_t t) const {
    if (variant_ != AttentionVariant::Cloze)
        throw InputError("cloze distribution requested from a position-only model");
    if (t < 1 || t > word.length()) throw InputError("cloze: position out of range");
    std::vector<int> ids = word.segment_ids;
    ids[t - 1] = mask_token();
    Graph g;
    const std::vector<Val> leaves = make_leaves(g, params_);
    const Val x = encode(g, leaves, ids);
    const Val logits = g.add(g.matvec(leaves[params_.index_of("w_out")], g.row(x, t - 1)),
                             leaves[params_.index_of("b_out")]);
    const Val logp = g.log_softmax(logits);
    const Tensor& lp = g.value(logp);
    std::vector<double> dist(lp.size());
    for (std::size_t i = 0; i < lp.size(); ++i) dist[i] = std::exp(lp.v[i]);
    return dist;
}

std::vector<double> MaskedAttentionLM::position_distribution(std::size_t t,
                                                             std::size_t length) const {
    if (variant_ != AttentionVariant::PositionOnly)
        throw InputError("position distribution requested from a cloze model");
    if (t < 1 || t > length) throw InputError("position-only: position out of range");
    const std::vector<int> ids(length, mask_token());
    Graph g;
    const std::vector<Val> leaves = make_leaves(g, params_);
    const Val x = encode(g, leaves, ids);
    const Val logits = g.add(g.matvec(leaves[params_.index_of("w_out")], g.row(x, t - 1)),
                             leaves[params_.index_of("b_out")]);
    const Val logp = g.log_softmax(logits);
    const Tensor& lp = g.value(logp);
    std::vector<double> dist(lp.size());
    for (std::size_t i = 0; i < lp.size(); ++i) dist[i] = std::exp(lp.v[i]);
    return dist;
}

}  // namespace lexinfo
