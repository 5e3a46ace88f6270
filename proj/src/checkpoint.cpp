#include "lexinfo/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

#include "lexinfo/errors.hpp"

namespace lexinfo {

namespace {

constexpr char kMagic[4] = {'L', 'X', 'C', 'K'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void write_u64(std::ostream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
}
std::uint64_t read_u64(std::istream& is) {
    std::uint64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

void write_tensor(std::ostream& os, const std::string& name, const Tensor& t) {
    write_u64(os, name.size());
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_u64(os, t.rank());
    for (std::size_t d : t.shape) write_u64(os, d);
    os.write(reinterpret_cast<const char*>(t.v.data()),
             static_cast<std::streamsize>(t.size() * sizeof(double)));
}

std::pair<std::string, Tensor> read_tensor(std::istream& is) {
    const std::uint64_t name_len = read_u64(is);
    std::string name(name_len, '\0');
    is.read(name.data(), static_cast<std::streamsize>(name_len));
    const std::uint64_t rank = read_u64(is);
    std::vector<std::size_t> shape(rank);
    for (auto& d : shape) d = static_cast<std::size_t>(read_u64(is));
    Tensor t = Tensor::zeros(shape);
    is.read(reinterpret_cast<char*>(t.v.data()),
            static_cast<std::streamsize>(t.size() * sizeof(double)));
    if (!is) throw InputError("checkpoint: truncated tensor data");
    return {std::move(name), std::move(t)};
}

Tensor int64_to_tensor(const std::vector<std::int64_t>& v) {
    Tensor t = Tensor::zeros({v.size()});
    for (std::size_t i = 0; i < v.size(); ++i) t.v[i] = static_cast<double>(v[i]);
    return t;
}
Tensor uint64_to_tensor(const std::vector<std::uint64_t>& v) {
    Tensor t = Tensor::zeros({v.size()});
    for (std::size_t i = 0; i < v.size(); ++i) t.v[i] = static_cast<double>(v[i]);
    return t;
}
std::vector<std::int64_t> tensor_to_int64(const Tensor& t) {
    std::vector<std::int64_t> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = static_cast<std::int64_t>(t.v[i]);
    return v;
}
std::vector<std::uint64_t> tensor_to_uint64(const Tensor& t) {
    std::vector<std::uint64_t> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = static_cast<std::uint64_t>(t.v[i]);
    return v;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}
std::uint64_t from_hex64(const std::string& s) { return std::stoull(s, nullptr, 16); }

}  // namespace

void save_model(const AnyModel& model, const std::string& path) {
    nlohmann::json header;
    header["family"] = family_name(model.family);
    header["language"] = model.language;
    header["alphabet_hash"] = hex64(model.alphabet_hash);
    header["surface_count"] = model.surface_count;
    header["split_seed"] = model.split_seed;
    header["train_seed"] = model.train_seed;

    std::vector<std::pair<std::string, Tensor>> tensors;
    switch (model.family) {
        case ModelFamily::ForwardLstm:
        case ModelFamily::BackwardLstm: {
            if (!model.recurrent) throw InputError("save_model: missing recurrent model");
            const RecurrentConfig& c = model.recurrent->config();
            header["config"] = {{"embed_dim", c.embed_dim},
                                {"layers", c.layers},
                                {"hidden", c.hidden},
                                {"dropout", c.dropout}};
            const ParamSet& p = model.recurrent->params();
            for (std::size_t i = 0; i < p.tensors.size(); ++i)
                tensors.emplace_back(p.names[i], p.tensors[i]);
            break;
        }
        case ModelFamily::Cloze:
        case ModelFamily::PositionOnly: {
            if (!model.attention) throw InputError("save_model: missing attention model");
            const AttentionConfig& c = model.attention->config();
            header["config"] = {{"embed_dim", c.embed_dim},
                                {"layers", c.layers},
                                {"heads", c.heads},
                                {"ff_dim", c.ff_dim}};
            const ParamSet& p = model.attention->params();
            for (std::size_t i = 0; i < p.tensors.size(); ++i)
                tensors.emplace_back(p.names[i], p.tensors[i]);
            break;
        }
        case ModelFamily::Unigram: {
            if (!model.unigram) throw InputError("save_model: missing unigram model");
            header["config"] = {{"domain_size", model.unigram->domain_size()}};
            tensors.emplace_back("counts", int64_to_tensor(model.unigram->counts()));
            break;
        }
        case ModelFamily::Trie: {
            if (!model.trie) throw InputError("save_model: missing trie model");
            const TrieModel::Arrays a = model.trie->export_arrays();
            header["config"] = {{"terminal_cls", a.terminal_cls},
                                {"fingerprint", hex64(a.fingerprint)}};
            tensors.emplace_back("node_counts", int64_to_tensor(a.node_counts));
            tensors.emplace_back("child_offsets", uint64_to_tensor(a.child_offsets));
            tensors.emplace_back("child_classes", int64_to_tensor(a.child_classes));
            tensors.emplace_back("child_targets", uint64_to_tensor(a.child_targets));
            break;
        }
    }

    std::ofstream os(path, std::ios::binary);
    if (!os) throw InputError("cannot open for writing: " + path);
    os.write(kMagic, 4);
    write_u32(os, kVersion);
    const std::string header_text = header.dump();
    write_u64(os, header_text.size());
    os.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));
    write_u64(os, tensors.size());
    for (const auto& [name, t] : tensors) write_tensor(os, name, t);
    if (!os) throw InputError("checkpoint write failed: " + path);
}

AnyModel load_model(const std::string& path, const Alphabet& alphabet) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError("cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw InputError("not a model checkpoint: " + path);
    const std::uint32_t version = read_u32(is);
    if (version != kVersion)
        throw InputError("unsupported checkpoint version " + std::to_string(version));
    const std::uint64_t header_len = read_u64(is);
    std::string header_text(header_len, '\0');
    is.read(header_text.data(), static_cast<std::streamsize>(header_len));
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(header_text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("checkpoint header is not valid JSON: ") + e.what());
    }

    AnyModel model;
    model.family = family_from_name(header.at("family").get<std::string>());
    model.language = header.at("language").get<std::string>();
    model.alphabet_hash = from_hex64(header.at("alphabet_hash").get<std::string>());
    model.surface_count = header.at("surface_count").get<int>();
    model.split_seed = header.value("split_seed", 0ull);
    model.train_seed = header.value("train_seed", 0ull);

    if (model.alphabet_hash != alphabet.hash() ||
        model.surface_count != alphabet.surface_count())
        throw InputError("checkpoint alphabet does not match the provided lexicon's alphabet");

    const std::uint64_t n_tensors = read_u64(is);
    std::vector<std::pair<std::string, Tensor>> tensors;
    tensors.reserve(n_tensors);
    for (std::uint64_t i = 0; i < n_tensors; ++i) tensors.push_back(read_tensor(is));
    auto tensor_named = [&](std::string_view name) -> const Tensor& {
        for (const auto& [n, t] : tensors)
            if (n == name) return t;
        throw InputError("checkpoint: missing tensor " + std::string(name));
    };

    const nlohmann::json& cfg = header.at("config");
    switch (model.family) {
        case ModelFamily::ForwardLstm:
        case ModelFamily::BackwardLstm: {
            RecurrentConfig c;
            c.embed_dim = cfg.at("embed_dim").get<int>();
            c.layers = cfg.at("layers").get<int>();
            c.hidden = cfg.at("hidden").get<int>();
            c.dropout = cfg.at("dropout").get<double>();
            const Direction dir = model.family == ModelFamily::ForwardLstm ? Direction::Forward
                                                                           : Direction::Backward;
            model.recurrent = std::make_unique<RecurrentLM>(dir, model.surface_count, c);
            ParamSet& p = model.recurrent->params();
            for (std::size_t i = 0; i < p.tensors.size(); ++i) {
                const Tensor& t = tensor_named(p.names[i]);
                if (!t.same_shape(p.tensors[i]))
                    throw InputError("checkpoint: tensor shape mismatch for " + p.names[i]);
                p.tensors[i] = t;
            }
            break;
        }
        case ModelFamily::Cloze:
        case ModelFamily::PositionOnly: {
            AttentionConfig c;
            c.embed_dim = cfg.at("embed_dim").get<int>();
            c.layers = cfg.at("layers").get<int>();
            c.heads = cfg.at("heads").get<int>();
            c.ff_dim = cfg.at("ff_dim").get<int>();
            const AttentionVariant variant = model.family == ModelFamily::Cloze
                                                 ? AttentionVariant::Cloze
                                                 : AttentionVariant::PositionOnly;
            model.attention = std::make_unique<MaskedAttentionLM>(variant, model.surface_count, c);
            ParamSet& p = model.attention->params();
            for (std::size_t i = 0; i < p.tensors.size(); ++i) {
                const Tensor& t = tensor_named(p.names[i]);
                if (!t.same_shape(p.tensors[i]))
                    throw InputError("checkpoint: tensor shape mismatch for " + p.names[i]);
                p.tensors[i] = t;
            }
            break;
        }
        case ModelFamily::Unigram: {
            model.unigram = std::make_unique<UnigramModel>(
                cfg.at("domain_size").get<int>(), tensor_to_int64(tensor_named("counts")));
            break;
        }
        case ModelFamily::Trie: {
            TrieModel::Arrays a;
            a.node_counts = tensor_to_int64(tensor_named("node_counts"));
            a.child_offsets = tensor_to_uint64(tensor_named("child_offsets"));
            a.child_classes = tensor_to_int64(tensor_named("child_classes"));
            a.child_targets = tensor_to_uint64(tensor_named("child_targets"));
            a.terminal_cls = cfg.at("terminal_cls").get<int>();
            a.fingerprint = from_hex64(cfg.at("fingerprint").get<std::string>());
            model.trie = std::make_unique<TrieModel>(TrieModel::from_arrays(a));
            break;
        }
    }
    return model;
}

}  // namespace lexinfo
