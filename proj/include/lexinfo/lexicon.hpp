#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexinfo {

// Symbol inventory: surface segments get ids 0..surface_count()-1, the three
// specials live above them. Reported |Σ| counts surface symbols plus EOW.
class Alphabet {
public:
    Alphabet() = default;

    // Throws InputError on duplicate symbols.
    static Alphabet from_symbols(std::vector<std::string> symbols);

    int surface_count() const { return static_cast<int>(symbols_.size()); }
    int sigma_size() const { return surface_count() + 1; }  // includes EOW

    int bow_id() const { return surface_count(); }
    int eow_id() const { return surface_count() + 1; }
    int mask_id() const { return surface_count() + 2; }
    int total_symbols() const { return surface_count() + 3; }

    bool is_special(int id) const { return id >= surface_count(); }

    const std::string& symbol(int id) const;
    const std::vector<std::string>& symbols() const { return symbols_; }

    // -1 when the segment is unknown.
    int find(std::string_view segment) const;
    // Throws InputError when unknown.
    int id_of(std::string_view segment) const;

    std::uint64_t hash() const;

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, int> index_;
};

// A wordform as surface-segment ids; positions are 1-based.
struct Word {
    std::vector<int> segment_ids;
    std::size_t length() const { return segment_ids.size(); }
    bool operator==(const Word& o) const { return segment_ids == o.segment_ids; }
};

// Deduplicated set of types sharing one alphabet.
struct Lexicon {
    std::string language;
    std::vector<Word> words;
    Alphabet alphabet;

    std::size_t size() const { return words.size(); }
    std::string render(const Word& w, std::string_view joiner = "") const;
};

struct SplitLexicon {
    Lexicon train;
    Lexicon dev;
    Lexicon test;
};

enum class SegmentMode { Graphemes, SpaceSeparated };

// One word per line (optional TAB-separated frequency is ignored); grapheme
// mode segments by extended grapheme cluster after NFC, space mode splits on
// single spaces. Lines that yield no segments are an error.
Lexicon parse_wordlist(std::string_view text, SegmentMode mode, std::string language);

// Tokenizes a raw corpus into maximal letter runs, drops tokens containing
// any character outside `script` (Common/Inherited always allowed),
// lowercases, ranks types by frequency with lexicographic tie-breaking, and
// keeps the top max_types.
Lexicon extract_lexicon(std::string_view corpus, std::string_view script,
                        std::size_t max_types = 10000, std::string language = "und");

// Deterministic 80/10/10 type split; dev/test differ by at most one type.
SplitLexicon split(const Lexicon& lexicon, std::uint64_t seed);

// JSON round trip: {"language": ..., "symbols": [...], "words": [[ids]...]}.
std::string lexicon_to_json(const Lexicon& lex);
Lexicon lexicon_from_json(std::string_view json_text);
void save_lexicon(const Lexicon& lex, const std::string& path);
Lexicon load_lexicon(const std::string& path);

}  // namespace lexinfo
