// lexinfo: measure where in a word the disambiguatory information sits.
//
// Pipeline: ingest/extract/synth -> train -> surprisal -> analyze, plus the
// estimator-bias lab. All commands are deterministic for a fixed seed and
// serialize their configuration next to their outputs.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "lexinfo/analysis.hpp"
#include "lexinfo/checkpoint.hpp"
#include "lexinfo/count_models.hpp"
#include "lexinfo/errors.hpp"
#include "lexinfo/lexicon.hpp"
#include "lexinfo/neural_models.hpp"
#include "lexinfo/numerics.hpp"
#include "lexinfo/rng.hpp"
#include "lexinfo/surprisal.hpp"
#include "lexinfo/synthlab.hpp"
#include "lexinfo/training.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lexinfo;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (const fs::path dir = fs::path(path).parent_path(); !dir.empty())
        fs::create_directories(dir);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open for writing: " + path);
    f << content;
}

// Serialized RunConfig: every command drops the options it actually ran with
// into its output directory.
void write_run_config(const std::string& out_dir, const std::string& command, const json& options) {
    json j;
    j["command"] = command;
    j["options"] = options;
    write_file((fs::path(out_dir) / ("run_config." + command + ".json")).string(), j.dump(1) + "\n");
}

std::string dir_of(const std::string& output_path) {
    const fs::path dir = fs::path(output_path).parent_path();
    return dir.empty() ? "." : dir.string();
}

// Flags may also come from a JSON config file; command-line values win.
void apply_config_file(CLI::App* cmd, const std::string& config_path) {
    if (config_path.empty()) return;
    json cfg;
    try {
        cfg = json::parse(read_file(config_path));
    } catch (const json::exception& e) {
        throw InputError("config file is not valid JSON: " + std::string(e.what()));
    }
    for (const auto& [key, value] : cfg.items()) {
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr) throw InputError("config file: unknown option '" + key + "'");
        if (opt->count() > 0) continue;  // explicit flag wins
        const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        opt->add_result(text);
        opt->run_callback();
    }
}

struct TrainOptions {
    std::string model;
    std::string lexicon_path;
    std::string output_dir = "out";
    std::string config_path;
    std::uint64_t seed = 1;
    std::uint64_t split_seed = 1;
    RecurrentConfig recurrent;
    AttentionConfig attention;
    int batch_size = 64;
    int max_epochs = 100;
    int patience = 5;
    double lr = 1e-3;
    double clip = 5.0;
};

json train_options_json(const TrainOptions& o) {
    return {{"model", o.model},
            {"lexicon", o.lexicon_path},
            {"output_dir", o.output_dir},
            {"seed", o.seed},
            {"split_seed", o.split_seed},
            {"embed_dim", o.recurrent.embed_dim},
            {"layers", o.recurrent.layers},
            {"hidden", o.recurrent.hidden},
            {"dropout", o.recurrent.dropout},
            {"attention_layers", o.attention.layers},
            {"heads", o.attention.heads},
            {"ff_dim", o.attention.ff_dim},
            {"batch_size", o.batch_size},
            {"max_epochs", o.max_epochs},
            {"patience", o.patience},
            {"lr", o.lr},
            {"clip", o.clip}};
}

int run_train(const TrainOptions& o) {
    const Lexicon lex = load_lexicon(o.lexicon_path);
    const SplitLexicon parts = split(lex, o.split_seed);
    const ModelFamily family = family_from_name(o.model);

    AnyModel model;
    model.family = family;
    model.language = lex.language;
    model.alphabet_hash = lex.alphabet.hash();
    model.surface_count = lex.alphabet.surface_count();
    model.split_seed = o.split_seed;
    model.train_seed = o.seed;

    TrainConfig cfg;
    cfg.recurrent = o.recurrent;
    cfg.attention = o.attention;
    cfg.attention.embed_dim = o.recurrent.embed_dim;
    cfg.batch_size = o.batch_size;
    cfg.max_epochs = o.max_epochs;
    cfg.patience = o.patience;
    cfg.adam.lr = o.lr;
    cfg.adam.clip_norm = o.clip;

    TrainResult result;
    switch (family) {
        case ModelFamily::ForwardLstm:
        case ModelFamily::BackwardLstm: {
            const Direction dir =
                family == ModelFamily::ForwardLstm ? Direction::Forward : Direction::Backward;
            model.recurrent = std::make_unique<RecurrentLM>(dir, model.surface_count, cfg.recurrent);
            result = train_recurrent(*model.recurrent, parts.train.words, parts.dev.words, cfg, o.seed);
            break;
        }
        case ModelFamily::Cloze:
        case ModelFamily::PositionOnly: {
            const AttentionVariant variant = family == ModelFamily::Cloze
                                                 ? AttentionVariant::Cloze
                                                 : AttentionVariant::PositionOnly;
            model.attention =
                std::make_unique<MaskedAttentionLM>(variant, model.surface_count, cfg.attention);
            result = train_attention(*model.attention, parts.train.words, parts.dev.words, cfg, o.seed);
            break;
        }
        case ModelFamily::Unigram:
            model.unigram = std::make_unique<UnigramModel>(UnigramModel::fit(parts.train, true));
            break;
        case ModelFamily::Trie:
            model.trie = std::make_unique<TrieModel>(TrieModel::fit(parts.train));
            break;
    }

    fs::create_directories(o.output_dir);
    save_model(model, (fs::path(o.output_dir) / "checkpoint.bin").string());
    if (family_is_neural(family))
        write_file((fs::path(o.output_dir) / "training_log.json").string(),
                   training_log_json(family, o.seed, result) + "\n");
    write_run_config(o.output_dir, "train", train_options_json(o));

    if (family_is_neural(family))
        std::cout << "trained " << o.model << ": best dev " << nats_to_bits(result.best_dev_nats)
                  << " bits/target at epoch " << result.best_epoch << "\n";
    else
        std::cout << "fitted " << o.model << " on " << parts.train.size() << " types\n";
    return 0;
}

struct SurprisalOptions {
    std::string checkpoint_path;
    std::string lexicon_path;
    std::string output_path = "records.csv";
    std::string subset = "test";
    std::string terminals = "include";
    std::uint64_t split_seed = 0;  // 0: use the checkpoint's recorded seed
    bool split_seed_given = false;
};

int run_surprisal(const SurprisalOptions& o) {
    const Lexicon lex = load_lexicon(o.lexicon_path);
    const AnyModel model = load_model(o.checkpoint_path, lex.alphabet);

    const Lexicon* subset = &lex;
    SplitLexicon parts;
    if (o.subset != "all") {
        const std::uint64_t seed = o.split_seed_given ? o.split_seed : model.split_seed;
        parts = split(lex, seed);
        if (o.subset == "train")
            subset = &parts.train;
        else if (o.subset == "dev")
            subset = &parts.dev;
        else if (o.subset == "test")
            subset = &parts.test;
        else
            throw InputError("unknown subset '" + o.subset + "' (train|dev|test|all)");
    }

    EowPolicy policy{o.terminals == "include"};
    if (o.terminals != "include" && o.terminals != "exclude")
        throw InputError("unknown terminals policy '" + o.terminals + "' (include|exclude)");

    SurprisalResult result;
    switch (model.family) {
        case ModelFamily::ForwardLstm:
            result = compute_surprisals(*model.recurrent, *subset, MeasureKind::Forward, policy);
            break;
        case ModelFamily::BackwardLstm:
            result = compute_surprisals(*model.recurrent, *subset, MeasureKind::Backward, policy);
            break;
        case ModelFamily::Cloze:
            result = compute_surprisals(*model.attention, *subset, MeasureKind::Cloze, policy);
            break;
        case ModelFamily::PositionOnly:
            result =
                compute_surprisals(*model.attention, *subset, MeasureKind::PositionSpecific, policy);
            break;
        case ModelFamily::Unigram:
            result = compute_surprisals(*model.unigram, *subset, MeasureKind::Unigram, policy);
            break;
        case ModelFamily::Trie:
            result = compute_surprisals_trie(*model.trie, *subset, policy);
            break;
    }

    save_records(result.records, o.output_path);
    if (result.quarantined > 0)
        std::cerr << "warning: " << result.quarantined
                  << " non-finite surprisals quarantined (not written)\n";
    write_run_config(dir_of(o.output_path), "surprisal",
                     {{"checkpoint", o.checkpoint_path},
                      {"lexicon", o.lexicon_path},
                      {"output", o.output_path},
                      {"subset", o.subset},
                      {"terminals", o.terminals},
                      {"split_seed", o.split_seed_given ? o.split_seed : model.split_seed}});
    std::cout << "wrote " << result.records.size() << " records to " << o.output_path << "\n";
    return 0;
}

struct AnalyzeOptions {
    std::vector<std::string> records_paths;
    std::string output_dir = "analysis";
    std::size_t permutations = 100000;
    double alpha = 0.01;
    std::uint64_t seed = 1;
    bool pooled = false;
    bool curves = false;
    bool slopes = false;
    bool all_measures = false;
    std::string ablation_with;
    std::string ablation_without;
    std::string kl_lexicon;
    double kl_min_coverage = 0.75;
    int threads = 0;  // 0: hardware default
};

struct GroupResult {
    std::string language;
    MeasureKind measure;
    BinningResult binned;
    TestResult test;
};

int run_analyze(const AnalyzeOptions& o) {
    std::map<std::pair<std::string, MeasureKind>, std::vector<SurprisalRecord>> groups;
    for (const std::string& path : o.records_paths) {
        for (SurprisalRecord& r : load_records(path))
            groups[{r.language, r.measure}].push_back(std::move(r));
    }
    if (groups.empty() && o.ablation_with.empty() && o.kl_lexicon.empty())
        throw InputError("analyze: no input records given");

    fs::create_directories(o.output_dir);

    // Per-language tests fan out over a bounded pool; aggregation order is
    // fixed by the sorted group keys, not by thread completion.
    std::vector<GroupResult> results(groups.size());
    {
        std::vector<std::pair<std::pair<std::string, MeasureKind>, const std::vector<SurprisalRecord>*>>
            items;
        items.reserve(groups.size());
        for (const auto& [key, recs] : groups) items.emplace_back(key, &recs);

        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        const std::size_t n_threads =
            std::min<std::size_t>(items.size(), o.threads > 0 ? o.threads : hw);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= items.size()) break;
                const auto& [key, recs] = items[i];
                GroupResult gr;
                gr.language = key.first;
                gr.measure = key.second;
                gr.binned = bin_initial_final(*recs);
                const std::uint64_t test_seed =
                    derive_seed(o.seed, key.first + "/" + measure_name(key.second));
                gr.test = o.pooled
                              ? pooled_permutation_test(gr.binned.words, o.permutations, test_seed)
                              : paired_permutation_test(gr.binned.words, o.permutations, test_seed);
                results[i] = std::move(gr);
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    // Benjamini-Hochberg per measure across languages.
    std::map<MeasureKind, std::vector<std::size_t>> by_measure;
    for (std::size_t i = 0; i < results.size(); ++i)
        by_measure[results[i].measure].push_back(i);
    for (const auto& [measure, indices] : by_measure) {
        std::vector<double> ps;
        ps.reserve(indices.size());
        for (std::size_t i : indices) ps.push_back(results[i].test.p_value);
        const std::vector<bool> reject = bh_correct(ps, o.alpha);
        for (std::size_t k = 0; k < indices.size(); ++k)
            results[indices[k]].test.bh_significant = reject[k];
    }

    json report = json::array();
    for (const GroupResult& gr : results) {
        report.push_back({{"language", gr.language},
                          {"measure", measure_name(gr.measure)},
                          {"mean_initial", gr.binned.pooled_initial_mean},
                          {"mean_final", gr.binned.pooled_final_mean},
                          {"diff_pct", diff_pct(gr.binned.pooled_initial_mean,
                                                gr.binned.pooled_final_mean)},
                          {"statistic", gr.test.statistic},
                          {"p_value", gr.test.p_value},
                          {"bh_significant", gr.test.bh_significant},
                          {"direction", gr.test.direction},
                          {"n_words", gr.test.n_words},
                          {"excluded_short", gr.binned.excluded_short}});
    }
    write_file((fs::path(o.output_dir) / "report.json").string(), report.dump(1) + "\n");

    if (o.all_measures) {
        json summary;
        for (const auto& [measure, indices] : by_measure) {
            int initial = 0, final_ = 0;
            for (std::size_t i : indices) {
                if (!results[i].test.bh_significant) continue;
                if (results[i].test.direction == "initial") ++initial;
                if (results[i].test.direction == "final") ++final_;
            }
            summary[measure_name(measure)] = {{"languages", indices.size()},
                                              {"significant_initial", initial},
                                              {"significant_final", final_}};
        }
        write_file((fs::path(o.output_dir) / "summary.json").string(), summary.dump(1) + "\n");
    }

    if (o.curves) {
        for (const auto& [key, recs] : groups) {
            const std::string name =
                "curve_" + key.first + "_" + measure_name(key.second) + ".csv";
            write_file((fs::path(o.output_dir) / name).string(),
                       curve_to_csv(positional_mean_curve(recs)));
        }
    }

    if (o.slopes) {
        json slopes = json::array();
        for (const auto& [key, recs] : groups) {
            if (key.second != MeasureKind::Forward) continue;
            for (SlopeRestriction restr :
                 {SlopeRestriction::AllPositions, SlopeRestriction::FirstTwoOnly}) {
                const std::uint64_t s =
                    derive_seed(o.seed, key.first + "/slope" +
                                            (restr == SlopeRestriction::FirstTwoOnly ? "2" : ""));
                const SlopeResult sr = length_slope(recs, restr, o.permutations, s);
                slopes.push_back(
                    {{"language", key.first},
                     {"slope", sr.slope},
                     {"p_value", sr.p_value},
                     {"restriction",
                      restr == SlopeRestriction::FirstTwoOnly ? "first-two-only" : "all-positions"},
                     {"n_pairs", sr.n_pairs}});
            }
        }
        write_file((fs::path(o.output_dir) / "slopes.json").string(), slopes.dump(1) + "\n");
    }

    if (!o.ablation_with.empty() || !o.ablation_without.empty()) {
        if (o.ablation_with.empty() || o.ablation_without.empty())
            throw InputError("ablation needs both --ablation-with and --ablation-without");
        const auto rows = eow_ablation_report(load_records(o.ablation_with),
                                              load_records(o.ablation_without));
        write_file((fs::path(o.output_dir) / "ablation.csv").string(), ablation_to_csv(rows));
    }

    if (!o.kl_lexicon.empty()) {
        const Lexicon lex = load_lexicon(o.kl_lexicon);
        const PositionalUnigramModel pos = PositionalUnigramModel::fit(lex);
        const UnigramModel global = UnigramModel::fit(lex, /*include_eow=*/false);
        const KLProfile profile = positional_kl(pos, global, o.kl_min_coverage);
        std::string csv = "position,kl_bits,coverage\n";
        char buf[96];
        for (std::size_t i = 0; i < profile.positions.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%d,%.6f,%.4f\n", profile.positions[i],
                          profile.kl_bits[i], profile.coverage[i]);
            csv += buf;
        }
        write_file((fs::path(o.output_dir) / ("kl_profile_" + lex.language + ".csv")).string(), csv);
        json klj = {{"language", lex.language}, {"argmax_position", profile.argmax_position}};
        write_file((fs::path(o.output_dir) / ("kl_" + lex.language + ".json")).string(),
                   klj.dump(1) + "\n");
    }

    write_run_config(o.output_dir, "analyze",
                     {{"records", o.records_paths},
                      {"output_dir", o.output_dir},
                      {"permutations", o.permutations},
                      {"alpha", o.alpha},
                      {"seed", o.seed},
                      {"pooled", o.pooled},
                      {"curves", o.curves},
                      {"slopes", o.slopes},
                      {"all_measures", o.all_measures},
                      {"ablation_with", o.ablation_with},
                      {"ablation_without", o.ablation_without},
                      {"kl_lexicon", o.kl_lexicon}});
    std::cout << "analysis written to " << o.output_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lexinfo: positional information analysis over lexicons"};
    app.require_subcommand(1);

    // ingest
    std::string in_input, in_lang = "und", in_mode = "graphemes", in_output = "lexicon.json";
    CLI::App* ingest = app.add_subcommand("ingest", "wordlist file -> lexicon JSON");
    ingest->add_option("--input", in_input, "wordlist, one word per line")->required();
    ingest->add_option("--mode", in_mode, "graphemes|space");
    ingest->add_option("--lang", in_lang, "language tag");
    ingest->add_option("--output", in_output, "lexicon JSON path");

    // extract
    std::string ex_corpus, ex_script, ex_lang = "und", ex_output = "lexicon.json";
    std::size_t ex_max_types = 10000;
    CLI::App* extract = app.add_subcommand("extract", "raw text corpus -> lexicon JSON");
    extract->add_option("--corpus", ex_corpus, "raw UTF-8 text file")->required();
    extract->add_option("--script", ex_script, "Unicode script name, e.g. Latin")->required();
    extract->add_option("--max-types", ex_max_types, "keep the N most frequent types");
    extract->add_option("--lang", ex_lang, "language tag");
    extract->add_option("--output", ex_output, "lexicon JSON path");

    // synth
    std::string sy_kind = "iid-uniform", sy_lang = "synthetic", sy_output = "lexicon.json";
    GeneratorSpec sy_spec;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic lexicon");
    synth->add_option("--kind", sy_kind, "iid-uniform|doubled-half|vowel-harmony");
    synth->add_option("--sigma", sy_spec.sigma, "alphabet size");
    synth->add_option("--min-length", sy_spec.min_length, "min word/half length");
    synth->add_option("--max-length", sy_spec.max_length, "max word/half length");
    synth->add_option("--min-syllables", sy_spec.min_syllables, "harmony: min syllables");
    synth->add_option("--max-syllables", sy_spec.max_syllables, "harmony: max syllables");
    synth->add_flag("--initial-marker", sy_spec.distinct_initial_consonant,
                    "harmony: word-initial consonants from {m,n}");
    synth->add_option("--n", sy_spec.n, "words to sample");
    synth->add_option("--seed", sy_spec.seed, "generator seed");
    synth->add_option("--lang", sy_lang, "language tag");
    synth->add_option("--output", sy_output, "lexicon JSON path");

    // train
    TrainOptions tr;
    CLI::App* train = app.add_subcommand("train", "fit a model family on a lexicon split");
    train->add_option("--model", tr.model, "forward-lstm|backward-lstm|cloze|position|unigram|trie")
        ->required();
    train->add_option("--lexicon", tr.lexicon_path, "lexicon JSON")->required();
    train->add_option("--output-dir", tr.output_dir, "checkpoint/log directory");
    train->add_option("--seed", tr.seed, "training seed");
    train->add_option("--split-seed", tr.split_seed, "80/10/10 split seed");
    train->add_option("--embed", tr.recurrent.embed_dim, "embedding width");
    train->add_option("--layers", tr.recurrent.layers, "recurrent layers");
    train->add_option("--hidden", tr.recurrent.hidden, "recurrent hidden size");
    train->add_option("--dropout", tr.recurrent.dropout, "recurrent dropout");
    train->add_option("--attention-layers", tr.attention.layers, "attention layers");
    train->add_option("--heads", tr.attention.heads, "attention heads");
    train->add_option("--ff", tr.attention.ff_dim, "feed-forward width");
    train->add_option("--batch", tr.batch_size, "batch size");
    train->add_option("--epochs", tr.max_epochs, "max epochs");
    train->add_option("--patience", tr.patience, "early-stopping patience");
    train->add_option("--lr", tr.lr, "learning rate");
    train->add_option("--clip", tr.clip, "gradient-norm clip");
    train->add_option("--config", tr.config_path, "JSON config file (flags override)");

    // surprisal
    SurprisalOptions sp;
    CLI::App* surp = app.add_subcommand("surprisal", "checkpoint + lexicon -> records CSV");
    surp->add_option("--checkpoint", sp.checkpoint_path, "model checkpoint")->required();
    surp->add_option("--lexicon", sp.lexicon_path, "lexicon JSON")->required();
    surp->add_option("--subset", sp.subset, "train|dev|test|all");
    surp->add_option("--terminals", sp.terminals, "include|exclude");
    CLI::Option* sp_seed = surp->add_option("--split-seed", sp.split_seed,
                                            "split seed (default: checkpoint's)");
    surp->add_option("--output", sp.output_path, "records CSV path");

    // analyze
    AnalyzeOptions an;
    CLI::App* analyze = app.add_subcommand("analyze", "records -> tests, curves, reports");
    analyze->add_option("--records", an.records_paths, "records CSV (repeatable)");
    analyze->add_option("--output-dir", an.output_dir, "report directory");
    analyze->add_option("--permutations", an.permutations, "permutation count");
    analyze->add_option("--alpha", an.alpha, "BH significance level");
    analyze->add_option("--seed", an.seed, "master seed for permutation streams");
    analyze->add_flag("--pooled", an.pooled, "unpaired pooled-shuffle test variant");
    analyze->add_flag("--curves", an.curves, "emit per-position mean curves");
    analyze->add_flag("--slopes", an.slopes, "emit surprisal-length slopes (forward records)");
    analyze->add_flag("--all-measures", an.all_measures, "emit per-measure significance summary");
    analyze->add_option("--ablation-with", an.ablation_with, "records CSV incl. terminals");
    analyze->add_option("--ablation-without", an.ablation_without, "records CSV excl. terminals");
    analyze->add_option("--kl-lexicon", an.kl_lexicon, "lexicon JSON for the positional KL profile");
    analyze->add_option("--kl-min-coverage", an.kl_min_coverage, "positional coverage threshold");
    analyze->add_option("--threads", an.threads, "worker pool size (0: hardware)");

    // biaslab
    std::string bl_experiment = "iid", bl_output = "bias.csv";
    GeneratorSpec bl_spec;
    std::size_t bl_max_depth = 6, bl_seeds = 1, bl_mi_t = 2;
    CLI::App* biaslab = app.add_subcommand("biaslab", "estimator-bias experiments");
    biaslab->add_option("--experiment", bl_experiment, "iid|mi");
    biaslab->add_option("--sigma", bl_spec.sigma, "alphabet size");
    biaslab->add_option("--n", bl_spec.n, "words to sample");
    biaslab->add_option("--length", bl_spec.min_length, "word length")
        ->each([&bl_spec](const std::string&) { bl_spec.max_length = bl_spec.min_length; });
    biaslab->add_option("--max-depth", bl_max_depth, "deepest trie depth to probe");
    biaslab->add_option("--seeds", bl_seeds, "Monte-Carlo repetitions");
    biaslab->add_option("--seed", bl_spec.seed, "master seed");
    biaslab->add_option("--t", bl_mi_t, "mi: position t");
    biaslab->add_option("--output", bl_output, "CSV path");

    try {
        app.parse(argc, argv);

        if (ingest->parsed()) {
            const SegmentMode mode = in_mode == "graphemes" ? SegmentMode::Graphemes
                                   : in_mode == "space"     ? SegmentMode::SpaceSeparated
                                   : throw InputError("unknown mode '" + in_mode +
                                                      "' (graphemes|space)");
            const Lexicon lex = parse_wordlist(read_file(in_input), mode, in_lang);
            save_lexicon(lex, in_output);
            write_run_config(dir_of(in_output), "ingest",
                             {{"input", in_input},
                              {"mode", in_mode},
                              {"lang", in_lang},
                              {"output", in_output}});
            std::cout << "ingested " << lex.size() << " types, " << lex.alphabet.surface_count()
                      << " surface symbols\n";
            return 0;
        }
        if (extract->parsed()) {
            const Lexicon lex = extract_lexicon(read_file(ex_corpus), ex_script, ex_max_types, ex_lang);
            save_lexicon(lex, ex_output);
            write_run_config(dir_of(ex_output), "extract",
                             {{"corpus", ex_corpus},
                              {"script", ex_script},
                              {"max_types", ex_max_types},
                              {"lang", ex_lang},
                              {"output", ex_output}});
            std::cout << "extracted " << lex.size() << " types\n";
            return 0;
        }
        if (synth->parsed()) {
            sy_spec.kind = sy_kind == "iid-uniform"    ? GeneratorSpec::Kind::IidUniform
                           : sy_kind == "doubled-half" ? GeneratorSpec::Kind::DoubledHalf
                           : sy_kind == "vowel-harmony"
                               ? GeneratorSpec::Kind::VowelHarmony
                               : throw InputError("unknown kind '" + sy_kind + "'");
            sy_spec.language = sy_lang;
            const Lexicon lex = generate(sy_spec);
            save_lexicon(lex, sy_output);
            write_run_config(dir_of(sy_output), "synth",
                             {{"kind", sy_kind},
                              {"sigma", sy_spec.sigma},
                              {"n", sy_spec.n},
                              {"seed", sy_spec.seed},
                              {"lang", sy_lang},
                              {"output", sy_output}});
            std::cout << "generated " << lex.size() << " types\n";
            return 0;
        }
        if (train->parsed()) {
            apply_config_file(train, tr.config_path);
            return run_train(tr);
        }
        if (surp->parsed()) {
            sp.split_seed_given = sp_seed->count() > 0;
            return run_surprisal(sp);
        }
        if (analyze->parsed()) return run_analyze(an);
        if (biaslab->parsed()) {
            if (bl_experiment == "iid") {
                bl_spec.kind = GeneratorSpec::Kind::IidUniform;
                const BiasReport report = bl_seeds > 1
                                              ? bias_experiment_mean(bl_spec, bl_max_depth, bl_seeds)
                                              : bias_experiment(bl_spec, bl_max_depth);
                write_file(bl_output, bias_report_to_csv(report));
                write_run_config(dir_of(bl_output), "biaslab",
                                 {{"experiment", bl_experiment},
                                  {"sigma", bl_spec.sigma},
                                  {"n", bl_spec.n},
                                  {"length", bl_spec.min_length},
                                  {"max_depth", bl_max_depth},
                                  {"seeds", bl_seeds},
                                  {"seed", bl_spec.seed},
                                  {"output", bl_output}});
                std::cout << "bias report written to " << bl_output << "\n";
                return 0;
            }
            if (bl_experiment == "mi") {
                bl_spec.kind = GeneratorSpec::Kind::IidUniform;
                const Lexicon lex = generate(bl_spec);
                const MiSymmetry mi = mi_symmetry_check(lex, bl_mi_t);
                std::cout << "I(W_t;W_{t-1}) forward route " << mi.forward_bits
                          << " bits, backward route " << mi.backward_bits << " bits over "
                          << mi.joint_observations << " observations\n";
                return 0;
            }
            throw InputError("unknown experiment '" + bl_experiment + "' (iid|mi)");
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
