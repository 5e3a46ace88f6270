#include "lexinfo/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lexinfo/errors.hpp"
#include "lexinfo/rng.hpp"
#include "lexinfo/unicode.hpp"

namespace lexinfo {

Alphabet Alphabet::from_symbols(std::vector<std::string> symbols) {
    Alphabet a;
    a.symbols_ = std::move(symbols);
    for (std::size_t i = 0; i < a.symbols_.size(); ++i) {
        auto [it, inserted] = a.index_.emplace(a.symbols_[i], static_cast<int>(i));
        if (!inserted) throw InputError("duplicate surface symbol: " + a.symbols_[i]);
    }
    return a;
}

const std::string& Alphabet::symbol(int id) const {
    static const std::string kBow = "<bow>", kEow = "<eow>", kMask = "<mask>";
    if (id >= 0 && id < surface_count()) return symbols_[id];
    if (id == bow_id()) return kBow;
    if (id == eow_id()) return kEow;
    if (id == mask_id()) return kMask;
    throw InputError("symbol id out of range: " + std::to_string(id));
}

int Alphabet::find(std::string_view segment) const {
    auto it = index_.find(std::string(segment));
    return it == index_.end() ? -1 : it->second;
}

int Alphabet::id_of(std::string_view segment) const {
    const int id = find(segment);
    if (id < 0) throw InputError("unknown symbol: " + std::string(segment));
    return id;
}

std::uint64_t Alphabet::hash() const {
    std::uint64_t h = 14695981039346656037ull;
    for (const std::string& s : symbols_) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0x1f;
        h *= 1099511628211ull;
    }
    return h;
}

std::string Lexicon::render(const Word& w, std::string_view joiner) const {
    std::string out;
    for (std::size_t i = 0; i < w.segment_ids.size(); ++i) {
        if (i) out += joiner;
        out += alphabet.symbol(w.segment_ids[i]);
    }
    return out;
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            std::string line(text.substr(start, i - start));
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(std::move(line));
            start = i + 1;
        }
    }
    // A trailing newline produces one empty final entry; drop it.
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string> split_spaces(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char c : line) {
        if (c == ' ') {
            if (!cur.empty()) toks.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

Lexicon build_lexicon(std::string language, const std::vector<std::vector<std::string>>& segmented) {
    std::set<std::string> symbol_set;
    for (const auto& segs : segmented)
        for (const std::string& s : segs) symbol_set.insert(s);

    Lexicon lex;
    lex.language = std::move(language);
    lex.alphabet =
        Alphabet::from_symbols(std::vector<std::string>(symbol_set.begin(), symbol_set.end()));

    std::set<std::vector<int>> seen;
    for (const auto& segs : segmented) {
        Word w;
        w.segment_ids.reserve(segs.size());
        for (const std::string& s : segs) w.segment_ids.push_back(lex.alphabet.id_of(s));
        if (seen.insert(w.segment_ids).second) lex.words.push_back(std::move(w));
    }
    return lex;
}

}  // namespace

Lexicon parse_wordlist(std::string_view text, SegmentMode mode, std::string language) {
    const std::vector<std::string> lines = split_lines(text);
    std::vector<std::vector<std::string>> segmented;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string entry = lines[i];
        if (const std::size_t tab = entry.find('\t'); tab != std::string::npos)
            entry.resize(tab);  // optional word<TAB>frequency
        const std::string normalized = nfc(entry);
        std::vector<std::string> segs;
        if (mode == SegmentMode::Graphemes) {
            segs = grapheme_clusters(normalized);
        } else {
            segs = split_spaces(normalized);
        }
        if (segs.empty())
            throw InputError("line " + std::to_string(i + 1) + " yields zero segments");
        segmented.push_back(std::move(segs));
    }
    if (segmented.empty()) throw InputError("empty input");
    return build_lexicon(std::move(language), segmented);
}

Lexicon extract_lexicon(std::string_view corpus, std::string_view script, std::size_t max_types,
                        std::string language) {
    if (corpus.empty()) throw InputError("empty input");
    const int target = script_id_by_name(script);
    const int common = script_common();
    const int inherited = script_inherited();

    const std::vector<char32_t> cps = utf8_decode(nfc(corpus));
    std::map<std::string, std::size_t> freq;
    std::size_t i = 0;
    while (i < cps.size()) {
        if (!is_letter(cps[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        bool in_script = true;
        std::vector<char32_t> run;
        while (j < cps.size() && (is_letter(cps[j]) || is_mark(cps[j]))) {
            const int sc = script_of(cps[j]);
            if (sc != target && sc != common && sc != inherited) in_script = false;
            run.push_back(cps[j]);
            ++j;
        }
        if (in_script) {
            const std::string type = nfc(to_lower(utf8_encode(run)));
            ++freq[type];
        }
        i = j;
    }
    if (freq.empty()) throw InputError("no types survive script filtering");

    std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > max_types) ranked.resize(max_types);

    std::vector<std::vector<std::string>> segmented;
    segmented.reserve(ranked.size());
    for (const auto& [type, count] : ranked) segmented.push_back(grapheme_clusters(type));
    return build_lexicon(std::move(language), segmented);
}

SplitLexicon split(const Lexicon& lexicon, std::uint64_t seed) {
    const std::size_t n = lexicon.size();
    if (n < 10) throw InputError("split requires at least 10 word types, got " + std::to_string(n));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    const std::size_t n_train = (8 * n + 5) / 10;  // round(0.8 n)
    const std::size_t rest = n - n_train;
    const std::size_t n_dev = (rest + 1) / 2;

    SplitLexicon out;
    for (Lexicon* part : {&out.train, &out.dev, &out.test}) {
        part->language = lexicon.language;
        part->alphabet = lexicon.alphabet;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Word& w = lexicon.words[order[i]];
        if (i < n_train)
            out.train.words.push_back(w);
        else if (i < n_train + n_dev)
            out.dev.words.push_back(w);
        else
            out.test.words.push_back(w);
    }
    return out;
}

std::string lexicon_to_json(const Lexicon& lex) {
    nlohmann::json j;
    j["language"] = lex.language;
    j["symbols"] = lex.alphabet.symbols();
    nlohmann::json words = nlohmann::json::array();
    for (const Word& w : lex.words) words.push_back(w.segment_ids);
    j["words"] = std::move(words);
    return j.dump(1);
}

Lexicon lexicon_from_json(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid lexicon JSON: ") + e.what());
    }
    if (!j.contains("language") || !j.contains("symbols") || !j.contains("words"))
        throw InputError("lexicon JSON missing required fields");

    Lexicon lex;
    lex.language = j["language"].get<std::string>();
    lex.alphabet = Alphabet::from_symbols(j["symbols"].get<std::vector<std::string>>());

    std::set<std::vector<int>> seen;
    for (const auto& jw : j["words"]) {
        Word w;
        for (const auto& id : jw) {
            const int v = id.get<int>();
            if (v < 0 || v >= lex.alphabet.surface_count())
                throw InputError("lexicon JSON: segment id out of range");
            w.segment_ids.push_back(v);
        }
        if (w.segment_ids.empty()) throw InputError("lexicon JSON: empty word");
        if (!seen.insert(w.segment_ids).second) throw InputError("lexicon JSON: duplicate word");
        lex.words.push_back(std::move(w));
    }
    return lex;
}

void save_lexicon(const Lexicon& lex, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open for writing: " + path);
    f << lexicon_to_json(lex) << '\n';
}

Lexicon load_lexicon(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return lexicon_from_json(ss.str());
}

}  // namespace lexinfo
