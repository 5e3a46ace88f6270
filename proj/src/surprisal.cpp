#include "lexinfo/surprisal.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lexinfo/errors.hpp"
#include "lexinfo/numerics.hpp"

namespace lexinfo {

MeasureKind measure_from_name(std::string_view name) {
    if (name == "forward") return MeasureKind::Forward;
    if (name == "backward") return MeasureKind::Backward;
    if (name == "unigram") return MeasureKind::Unigram;
    if (name == "position-specific" || name == "position") return MeasureKind::PositionSpecific;
    if (name == "cloze") return MeasureKind::Cloze;
    throw InputError("unknown measure '" + std::string(name) +
                     "' (valid: forward, backward, unigram, position-specific, cloze)");
}

std::string measure_name(MeasureKind m) {
    switch (m) {
        case MeasureKind::Forward: return "forward";
        case MeasureKind::Backward: return "backward";
        case MeasureKind::Unigram: return "unigram";
        case MeasureKind::PositionSpecific: return "position-specific";
        case MeasureKind::Cloze: return "cloze";
    }
    throw InputError("invalid measure");
}

namespace {

void push_record(SurprisalResult& out, std::string language, int word_id, int position,
                 std::string segment, MeasureKind m, double bits) {
    if (!std::isfinite(bits)) {
        ++out.quarantined;
        return;
    }
    out.records.push_back(
        {std::move(language), word_id, position, std::move(segment), m, bits});
}

}  // namespace

SurprisalResult compute_surprisals(const RecurrentLM& model, const Lexicon& lex, MeasureKind m,
                                   EowPolicy policy) {
    const bool forward = model.direction() == Direction::Forward;
    if ((forward && m != MeasureKind::Forward) || (!forward && m != MeasureKind::Backward))
        throw InputError("measure '" + measure_name(m) + "' does not match this model's direction");
    if (model.surface_count() != lex.alphabet.surface_count())
        throw InputError("model and lexicon alphabets disagree");

    SurprisalResult out;
    for (std::size_t wi = 0; wi < lex.words.size(); ++wi) {
        const Word& w = lex.words[wi];
        const std::size_t L = w.length();
        const auto dists = model.step_distributions(w);
        // dists[i] predicts seq[i] where seq is the (possibly reversed) word
        // plus the terminal.
        for (std::size_t i = 0; i <= L; ++i) {
            const bool terminal = i == L;
            if (terminal && !policy.include_terminals) continue;
            int position;
            std::string segment;
            int target;
            if (forward) {
                position = static_cast<int>(i) + 1;  // 1..L+1
                target = terminal ? model.surface_count() : w.segment_ids[i];
                segment = terminal ? kEowSegment : lex.alphabet.symbol(w.segment_ids[i]);
            } else {
                position = terminal ? 0 : static_cast<int>(L - i);  // L..1, then 0
                target = terminal ? model.surface_count() : w.segment_ids[L - 1 - i];
                segment = terminal ? kBowSegment : lex.alphabet.symbol(w.segment_ids[L - 1 - i]);
            }
            push_record(out, lex.language, static_cast<int>(wi), position, std::move(segment), m,
                        cross_entropy_bits(dists[i], static_cast<std::size_t>(target)));
        }
    }
    return out;
}

SurprisalResult compute_surprisals(const MaskedAttentionLM& model, const Lexicon& lex,
                                   MeasureKind m, EowPolicy /*policy: terminals never scored*/) {
    const bool cloze = model.variant() == AttentionVariant::Cloze;
    if ((cloze && m != MeasureKind::Cloze) || (!cloze && m != MeasureKind::PositionSpecific))
        throw InputError("measure '" + measure_name(m) + "' does not match this model's variant");
    if (model.surface_count() != lex.alphabet.surface_count())
        throw InputError("model and lexicon alphabets disagree");

    SurprisalResult out;
    for (std::size_t wi = 0; wi < lex.words.size(); ++wi) {
        const Word& w = lex.words[wi];
        for (std::size_t t = 1; t <= w.length(); ++t) {
            const std::vector<double> dist =
                cloze ? model.cloze_distribution(w, t) : model.position_distribution(t, w.length());
            const int target = w.segment_ids[t - 1];
            push_record(out, lex.language, static_cast<int>(wi), static_cast<int>(t),
                        lex.alphabet.symbol(target), m,
                        cross_entropy_bits(dist, static_cast<std::size_t>(target)));
        }
    }
    return out;
}

SurprisalResult compute_surprisals(const UnigramModel& model, const Lexicon& lex, MeasureKind m,
                                   EowPolicy /*policy: terminals never scored*/) {
    if (m != MeasureKind::Unigram)
        throw InputError("measure '" + measure_name(m) + "' does not match a unigram model");
    SurprisalResult out;
    for (std::size_t wi = 0; wi < lex.words.size(); ++wi) {
        const Word& w = lex.words[wi];
        for (std::size_t t = 1; t <= w.length(); ++t) {
            const int cls = w.segment_ids[t - 1];
            push_record(out, lex.language, static_cast<int>(wi), static_cast<int>(t),
                        lex.alphabet.symbol(cls), MeasureKind::Unigram, model.surprisal_bits(cls));
        }
    }
    return out;
}

SurprisalResult compute_surprisals_trie(const TrieModel& model, const Lexicon& training_set,
                                        EowPolicy policy) {
    if (model.training_fingerprint() != word_set_fingerprint(training_set))
        throw InputError(
            "trie surprisal is defined only over the trie's own training set: held-out words can "
            "hit zero-probability continuations, making the estimate undefined");

    SurprisalResult out;
    for (std::size_t wi = 0; wi < training_set.words.size(); ++wi) {
        const Word& w = training_set.words[wi];
        const std::vector<double> probs = model.word_step_probs(w.segment_ids);
        const std::size_t L = w.length();
        for (std::size_t i = 0; i <= L; ++i) {
            const bool terminal = i == L;
            if (terminal && !policy.include_terminals) continue;
            const double bits = probs[i] > 0.0 ? -std::log2(probs[i])
                                               : std::numeric_limits<double>::infinity();
            push_record(out, training_set.language, static_cast<int>(wi), static_cast<int>(i) + 1,
                        terminal ? kEowSegment : training_set.alphabet.symbol(w.segment_ids[i]),
                        MeasureKind::Forward, bits);
        }
    }
    return out;
}

double cross_entropy_estimate(const std::vector<SurprisalRecord>& records, RecordFilter filter) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const SurprisalRecord& r : records) {
        if (filter == RecordFilter::TerminalsOnly && !r.is_terminal()) continue;
        if (filter == RecordFilter::NonTerminalsOnly && r.is_terminal()) continue;
        sum += r.bits;
        ++n;
    }
    if (n == 0) throw InputError("cross_entropy_estimate: no records after filtering");
    return sum / static_cast<double>(n);
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

std::string records_to_csv(const std::vector<SurprisalRecord>& records) {
    std::string out = "language,word_id,position,segment,measure,surprisal_bits\n";
    char buf[64];
    for (const SurprisalRecord& r : records) {
        std::snprintf(buf, sizeof(buf), "%.6f", r.bits);
        out += csv_escape(r.language);
        out += ',';
        out += std::to_string(r.word_id);
        out += ',';
        out += std::to_string(r.position);
        out += ',';
        out += csv_escape(r.segment);
        out += ',';
        out += measure_name(r.measure);
        out += ',';
        out += buf;
        out += '\n';
    }
    return out;
}

std::vector<SurprisalRecord> records_from_csv(std::string_view csv) {
    std::vector<SurprisalRecord> records;
    std::size_t start = 0;
    bool header = true;
    while (start < csv.size()) {
        std::size_t end = csv.find('\n', start);
        if (end == std::string_view::npos) end = csv.size();
        std::string line(csv.substr(start, end - start));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        start = end + 1;
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.rfind("language,", 0) != 0)
                throw InputError("records CSV: unexpected header: " + line);
            continue;
        }
        const std::vector<std::string> f = csv_split(line);
        if (f.size() != 6) throw InputError("records CSV: expected 6 fields, got line: " + line);
        SurprisalRecord r;
        r.language = f[0];
        try {
            r.word_id = std::stoi(f[1]);
            r.position = std::stoi(f[2]);
            r.bits = std::stod(f[5]);
        } catch (const std::exception&) {
            throw InputError("records CSV: malformed numeric field in line: " + line);
        }
        r.segment = f[3];
        r.measure = measure_from_name(f[4]);
        records.push_back(std::move(r));
    }
    return records;
}

void save_records(const std::vector<SurprisalRecord>& records, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open for writing: " + path);
    f << records_to_csv(records);
}

std::vector<SurprisalRecord> load_records(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return records_from_csv(ss.str());
}

}  // namespace lexinfo
