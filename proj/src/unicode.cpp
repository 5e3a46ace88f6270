#include "lexinfo/unicode.hpp"

#include <algorithm>
#include <cctype>

#include "lexinfo/errors.hpp"
#include "unicode_tables.hpp"

namespace lexinfo {

using namespace unidata;

namespace {

std::uint8_t range_lookup(const Range32* ranges, std::size_t count, char32_t cp) {
    std::size_t lo = 0, hi = count;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cp < ranges[mid].first)
            hi = mid;
        else if (cp > ranges[mid].last)
            lo = mid + 1;
        else
            return ranges[mid].value;
    }
    return 0;
}

std::uint8_t gcb_of(char32_t cp) {
    // Hangul syllables are algorithmic: LV when T index is zero, LVT otherwise.
    if (cp >= 0xAC00 && cp <= 0xD7A3) return (cp - 0xAC00) % 28 == 0 ? kGcbLV : kGcbLVT;
    return range_lookup(kGcbRanges, kGcbRangesCount, cp);
}

bool ext_pict(char32_t cp) { return range_lookup(kExtPictRanges, kExtPictRangesCount, cp) != 0; }

std::uint8_t incb_of(char32_t cp) { return range_lookup(kInCBRanges, kInCBRangesCount, cp); }

int ccc_of(char32_t cp) { return range_lookup(kCccRanges, kCccRangesCount, cp); }

// Hangul composition constants (UAX #15).
constexpr char32_t kSBase = 0xAC00, kLBase = 0x1100, kVBase = 0x1161, kTBase = 0x11A7;
constexpr int kLCount = 19, kVCount = 21, kTCount = 28, kNCount = kVCount * kTCount;
constexpr int kSCount = kLCount * kNCount;

const DecompEntry* find_decomp(char32_t cp) {
    std::size_t lo = 0, hi = kDecompEntryCount;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (kDecompEntries[mid].cp < cp)
            lo = mid + 1;
        else if (kDecompEntries[mid].cp > cp)
            hi = mid;
        else
            return &kDecompEntries[mid];
    }
    return nullptr;
}

char32_t compose_pair(char32_t a, char32_t b) {
    // Algorithmic Hangul first.
    if (a >= kLBase && a < kLBase + kLCount && b >= kVBase && b < kVBase + kVCount) {
        return kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
    }
    if (a >= kSBase && a < kSBase + kSCount && (a - kSBase) % kTCount == 0 && b > kTBase &&
        b < kTBase + kTCount) {
        return a + (b - kTBase);
    }
    std::size_t lo = 0, hi = kCompPairCount;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const CompPair& p = kCompPairs[mid];
        if (p.first < a || (p.first == a && p.second < b))
            lo = mid + 1;
        else if (p.first > a || p.second > b)
            hi = mid;
        else
            return p.composite;
    }
    return 0;
}

void decompose_into(char32_t cp, std::vector<char32_t>& out) {
    if (cp >= kSBase && cp < kSBase + kSCount) {
        const int idx = static_cast<int>(cp - kSBase);
        out.push_back(kLBase + idx / kNCount);
        out.push_back(kVBase + (idx % kNCount) / kTCount);
        if (idx % kTCount != 0) out.push_back(kTBase + idx % kTCount);
        return;
    }
    if (const DecompEntry* e = find_decomp(cp)) {
        for (std::uint32_t i = 0; i < e->len; ++i) out.push_back(kDecompSeq[e->offset + i]);
        return;
    }
    out.push_back(cp);
}

}  // namespace

std::vector<char32_t> utf8_decode(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        char32_t cp = 0;
        std::size_t len = 0;
        if (c < 0x80) {
            cp = c;
            len = 1;
        } else if ((c & 0xE0) == 0xC0) {
            cp = c & 0x1F;
            len = 2;
        } else if ((c & 0xF0) == 0xE0) {
            cp = c & 0x0F;
            len = 3;
        } else if ((c & 0xF8) == 0xF0) {
            cp = c & 0x07;
            len = 4;
        } else {
            throw InputError("invalid UTF-8 lead byte at offset " + std::to_string(i));
        }
        if (i + len > s.size()) throw InputError("truncated UTF-8 sequence at offset " + std::to_string(i));
        for (std::size_t k = 1; k < len; ++k) {
            const unsigned char cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80)
                throw InputError("invalid UTF-8 continuation at offset " + std::to_string(i + k));
            cp = (cp << 6) | (cc & 0x3F);
        }
        // Reject overlong encodings and surrogates.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
            (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF)
            throw InputError("invalid UTF-8 scalar at offset " + std::to_string(i));
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
}

std::string utf8_encode(const std::vector<char32_t>& cps) {
    std::string out;
    for (char32_t cp : cps) out += utf8_encode(cp);
    return out;
}

std::string nfc(std::string_view s) {
    std::vector<char32_t> cps = utf8_decode(s);

    // 1. Full canonical decomposition.
    std::vector<char32_t> d;
    d.reserve(cps.size() * 2);
    for (char32_t cp : cps) decompose_into(cp, d);

    // 2. Canonical ordering: stable insertion sort of nonzero-ccc runs.
    for (std::size_t i = 1; i < d.size(); ++i) {
        const int c = ccc_of(d[i]);
        if (c == 0) continue;
        std::size_t j = i;
        while (j > 0 && ccc_of(d[j - 1]) > c) {
            std::swap(d[j - 1], d[j]);
            --j;
        }
    }

    // 3. Canonical composition. A char combines with the last starter unless
    // blocked by an intervening char of equal or higher combining class.
    if (d.empty()) return {};
    std::vector<char32_t> out;
    out.reserve(d.size());
    std::ptrdiff_t starter = -1;  // index into `out` of the last starter
    int prev_ccc = -1;            // ccc of the last appended char
    for (char32_t cp : d) {
        const int c = ccc_of(cp);
        if (starter >= 0) {
            const bool directly_follows = starter == static_cast<std::ptrdiff_t>(out.size()) - 1;
            if (directly_follows || prev_ccc < c) {
                if (const char32_t comp = compose_pair(out[starter], cp)) {
                    out[starter] = comp;
                    continue;  // prev_ccc unchanged: out's tail is untouched
                }
            }
        }
        out.push_back(cp);
        prev_ccc = c;
        if (c == 0) starter = static_cast<std::ptrdiff_t>(out.size()) - 1;
    }
    return utf8_encode(out);
}

std::vector<std::string> grapheme_clusters(std::string_view s) {
    const std::vector<char32_t> cps = utf8_decode(s);
    std::vector<std::string> out;
    if (cps.empty()) return out;

    std::vector<std::uint8_t> cls(cps.size());
    for (std::size_t i = 0; i < cps.size(); ++i) cls[i] = gcb_of(cps[i]);

    auto breaks_between = [&](std::size_t i) -> bool {
        // Break between cps[i-1] and cps[i]?
        const std::uint8_t a = cls[i - 1], b = cls[i];
        if (a == kGcbCR && b == kGcbLF) return false;                                      // GB3
        if (a == kGcbControl || a == kGcbCR || a == kGcbLF) return true;                   // GB4
        if (b == kGcbControl || b == kGcbCR || b == kGcbLF) return true;                   // GB5
        if (a == kGcbL && (b == kGcbL || b == kGcbV || b == kGcbLV || b == kGcbLVT))
            return false;                                                                  // GB6
        if ((a == kGcbLV || a == kGcbV) && (b == kGcbV || b == kGcbT)) return false;       // GB7
        if ((a == kGcbLVT || a == kGcbT) && b == kGcbT) return false;                      // GB8
        if (b == kGcbExtend || b == kGcbZWJ) return false;                                 // GB9
        if (b == kGcbSpacingMark) return false;                                            // GB9a
        if (a == kGcbPrepend) return false;                                                // GB9b

        // GB9c: Consonant [Extend Linker]* Linker [Extend Linker]* x Consonant
        if (incb_of(cps[i]) == kInCBConsonant) {
            bool seen_linker = false;
            std::size_t j = i;
            while (j > 0) {
                const std::uint8_t ic = incb_of(cps[j - 1]);
                if (ic == kInCBLinker) {
                    seen_linker = true;
                    --j;
                } else if (ic == kInCBExtend) {
                    --j;
                } else {
                    break;
                }
            }
            if (seen_linker && j > 0 && incb_of(cps[j - 1]) == kInCBConsonant) return false;
        }

        // GB11: ExtPict Extend* ZWJ x ExtPict
        if (a == kGcbZWJ && ext_pict(cps[i])) {
            std::size_t j = i - 1;
            while (j > 0 && cls[j - 1] == kGcbExtend) --j;
            if (j > 0 && ext_pict(cps[j - 1])) return false;
        }

        // GB12/GB13: break RI pairs after an even run.
        if (a == kGcbRegionalIndicator && b == kGcbRegionalIndicator) {
            std::size_t run = 0;
            std::size_t j = i - 1;
            while (true) {
                ++run;
                if (j == 0 || cls[j - 1] != kGcbRegionalIndicator) break;
                --j;
            }
            return run % 2 == 0;
        }
        return true;  // GB999
    };

    std::string current = utf8_encode(cps[0]);
    for (std::size_t i = 1; i < cps.size(); ++i) {
        if (breaks_between(i)) {
            out.push_back(std::move(current));
            current = utf8_encode(cps[i]);
        } else {
            current += utf8_encode(cps[i]);
        }
    }
    out.push_back(std::move(current));
    return out;
}

bool is_letter(char32_t cp) {
    return range_lookup(kCategoryRanges, kCategoryRangesCount, cp) == kCatLetter;
}

bool is_mark(char32_t cp) {
    return range_lookup(kCategoryRanges, kCategoryRangesCount, cp) == kCatMark;
}

namespace {
std::string fold_ascii(std::string_view v) {
    std::string out;
    for (char ch : v) {
        if (ch == '_' || ch == ' ' || ch == '-') continue;
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    return out;
}
}  // namespace

int script_id_by_name(std::string_view name) {
    const std::string key = fold_ascii(name);
    for (std::size_t i = 0; i < kScriptCount; ++i) {
        if (fold_ascii(kScriptCodes[i]) == key || fold_ascii(kScriptNames[i]) == key)
            return static_cast<int>(i);
    }
    throw InputError("unknown Unicode script: " + std::string(name));
}

int script_of(char32_t cp) { return range_lookup(kScriptRanges, kScriptRangesCount, cp); }

std::string_view script_name(int id) { return kScriptNames[id]; }

int script_common() {
    static const int id = script_id_by_name("Zyyy");
    return id;
}

int script_inherited() {
    static const int id = script_id_by_name("Zinh");
    return id;
}

std::string to_lower(std::string_view s) {
    const std::vector<char32_t> cps = utf8_decode(s);
    std::vector<char32_t> out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
        std::size_t lo = 0, hi = kLowercaseEntryCount;
        bool mapped = false;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (kLowercaseEntries[mid].cp < cp)
                lo = mid + 1;
            else if (kLowercaseEntries[mid].cp > cp)
                hi = mid;
            else {
                out.push_back(kLowercaseEntries[mid].lo1);
                if (kLowercaseEntries[mid].lo2) out.push_back(kLowercaseEntries[mid].lo2);
                mapped = true;
                break;
            }
        }
        if (!mapped) out.push_back(cp);
    }
    return utf8_encode(out);
}

}  // namespace lexinfo
