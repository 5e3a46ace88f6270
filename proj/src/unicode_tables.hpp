#pragma once

#include <cstddef>
#include <cstdint>

// Static Unicode property tables, generated by tools/gen_unicode_tables.py.
// All ranges are inclusive and sorted by first codepoint.

namespace lexinfo::unidata {

struct Range32 {
    char32_t first;
    char32_t last;
    std::uint8_t value;
};

// Grapheme_Cluster_Break values.
enum Gcb : std::uint8_t {
    kGcbOther = 0,
    kGcbCR = 1,
    kGcbLF = 2,
    kGcbControl = 3,
    kGcbExtend = 4,
    kGcbZWJ = 5,
    kGcbRegionalIndicator = 6,
    kGcbPrepend = 7,
    kGcbSpacingMark = 8,
    kGcbL = 9,
    kGcbV = 10,
    kGcbT = 11,
    kGcbLV = 12,
    kGcbLVT = 13,
};

// Indic_Conjunct_Break values.
enum InCB : std::uint8_t {
    kInCBNone = 0,
    kInCBExtend = 1,
    kInCBConsonant = 2,
    kInCBLinker = 3,
};

// General category groups used by the lexicon extractor.
enum Category : std::uint8_t {
    kCatOther = 0,
    kCatLetter = 1,
    kCatMark = 2,
};

extern const Range32 kGcbRanges[];
extern const std::size_t kGcbRangesCount;
extern const Range32 kExtPictRanges[];
extern const std::size_t kExtPictRangesCount;
extern const Range32 kInCBRanges[];
extern const std::size_t kInCBRangesCount;
extern const Range32 kCategoryRanges[];
extern const std::size_t kCategoryRangesCount;
extern const Range32 kScriptRanges[];  // value indexes kScriptCodes
extern const std::size_t kScriptRangesCount;
extern const Range32 kCccRanges[];  // value = canonical combining class
extern const std::size_t kCccRangesCount;

extern const char* const kScriptCodes[];
extern const char* const kScriptNames[];
extern const std::size_t kScriptCount;

// Full canonical decompositions (Hangul excluded; it is algorithmic).
struct DecompEntry {
    char32_t cp;
    std::uint32_t offset;  // into kDecompSeq
    std::uint32_t len;
};
extern const DecompEntry kDecompEntries[];
extern const std::size_t kDecompEntryCount;
extern const char32_t kDecompSeq[];

// Primary composites: (first, second) -> composite, sorted by (first, second).
struct CompPair {
    char32_t first;
    char32_t second;
    char32_t composite;
};
extern const CompPair kCompPairs[];
extern const std::size_t kCompPairCount;

// Full lowercase mappings; second = 0 for single-codepoint results.
struct LowercaseEntry {
    char32_t cp;
    char32_t lo1;
    char32_t lo2;
};
extern const LowercaseEntry kLowercaseEntries[];
extern const std::size_t kLowercaseEntryCount;

}  // namespace lexinfo::unidata
