#!/usr/bin/env python3
"""Regenerates src/unicode_tables.cpp and the frozen segmentation/NFC test cases.

Requires the `regex` and `fonttools` packages (property data sources) and a
CPython with a current unicodedata. The emitted tables are committed; this
script only needs to run again on a Unicode version bump.
"""

import json
import random
import sys
import unicodedata
from pathlib import Path

import regex
import fontTools.unicodedata as fu
from fontTools.unicodedata import Scripts

MAX_CP = 0x110000

GCB_CLASSES = [
    ("CR", 1),
    ("LF", 2),
    ("Control", 3),
    ("Extend", 4),
    ("ZWJ", 5),
    ("Regional_Indicator", 6),
    ("Prepend", 7),
    ("SpacingMark", 8),
    ("L", 9),
    ("V", 10),
    ("T", 11),
    ("LV", 12),
    ("LVT", 13),
]

INCB_CLASSES = [("Extend", 1), ("Consonant", 2), ("Linker", 3)]


def all_chars():
    """Valid scalar values and a parallel codepoint list (surrogates skipped)."""
    cps = [cp for cp in range(MAX_CP) if not (0xD800 <= cp <= 0xDFFF)]
    return cps, "".join(chr(cp) for cp in cps)


def classify(cps, text, patterns):
    values = [0] * MAX_CP
    for pat, value in patterns:
        for m in regex.finditer(pat, text, concurrent=False):
            for pos in range(m.start(), m.end()):
                values[cps[pos]] = value
    return values


def to_ranges(values):
    ranges = []
    start = None
    prev_v = 0
    for cp in range(MAX_CP + 1):
        v = values[cp] if cp < MAX_CP else 0
        if start is not None and v != prev_v:
            ranges.append((start, cp - 1, prev_v))
            start = None
        if start is None and v != 0:
            start = cp
            prev_v = v
    return ranges


def fmt_ranges(name, ranges):
    lines = [f"const Range32 {name}[] = {{"]
    for i in range(0, len(ranges), 4):
        chunk = ", ".join(f"{{0x{a:X}, 0x{b:X}, {v}}}" for a, b, v in ranges[i : i + 4])
        lines.append(f"    {chunk},")
    lines.append("};")
    lines.append(f"const std::size_t {name}Count = sizeof({name}) / sizeof({name}[0]);")
    return "\n".join(lines)


def gcb_tables(cps, text):
    pats = [(regex.compile(rf"\p{{Grapheme_Cluster_Break={n}}}"), v) for n, v in GCB_CLASSES]
    return to_ranges(classify(cps, text, pats))


def extpict_tables(cps, text):
    pats = [(regex.compile(r"\p{Extended_Pictographic}"), 1)]
    return to_ranges(classify(cps, text, pats))


def incb_tables(cps, text):
    pats = [(regex.compile(rf"\p{{InCB={n}}}"), v) for n, v in INCB_CLASSES]
    return to_ranges(classify(cps, text, pats))


def category_tables(cps, text):
    # 1 = letter (L*), 2 = nonspacing/enclosing/spacing mark (M*)
    pats = [(regex.compile(r"\p{L}"), 1), (regex.compile(r"\p{M}"), 2)]
    return to_ranges(classify(cps, text, pats))


def script_tables():
    codes = sorted(set(Scripts.VALUES))
    code_index = {c: i for i, c in enumerate(codes)}
    ranges = []
    for i, start in enumerate(Scripts.RANGES):
        end = (Scripts.RANGES[i + 1] - 1) if i + 1 < len(Scripts.RANGES) else MAX_CP - 1
        ranges.append((start, end, code_index[Scripts.VALUES[i]]))
    merged = []
    for r in ranges:
        if merged and merged[-1][2] == r[2] and merged[-1][1] + 1 == r[0]:
            merged[-1] = (merged[-1][0], r[1], r[2])
        else:
            merged.append(r)
    names = []
    for c in codes:
        try:
            names.append(fu.script_name(c))
        except Exception:
            names.append(c)
    return merged, codes, names


def ccc_tables():
    values = [0] * MAX_CP
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        values[cp] = unicodedata.combining(chr(cp))
    return to_ranges(values)


def decomp_tables():
    entries = []
    seq = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF or 0xAC00 <= cp <= 0xD7A3:
            continue
        ch = chr(cp)
        nfd = unicodedata.normalize("NFD", ch)
        if nfd != ch:
            parts = [ord(c) for c in nfd]
            entries.append((cp, len(seq), len(parts)))
            seq.extend(parts)
    return entries, seq


def comp_tables():
    pairs = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF or 0xAC00 <= cp <= 0xD7A3:
            continue
        ch = chr(cp)
        raw = unicodedata.decomposition(ch)
        if not raw or raw.startswith("<"):
            continue
        parts = raw.split()
        if len(parts) != 2:
            continue
        a, b = int(parts[0], 16), int(parts[1], 16)
        # Excluded composites do not recompose under NFC.
        if unicodedata.normalize("NFC", unicodedata.normalize("NFD", ch)) == ch:
            pairs.append((a, b, cp))
    pairs.sort()
    return pairs


def lowercase_tables():
    entries = []
    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        lo = chr(cp).lower()
        if lo != chr(cp):
            parts = [ord(c) for c in lo]
            if len(parts) > 2:
                continue  # no such mappings exist today
            entries.append((cp, parts[0], parts[1] if len(parts) > 1 else 0))
    return entries


def emit_cpp(path):
    cps, text = all_chars()
    gcb = gcb_tables(cps, text)
    ext = extpict_tables(cps, text)
    incb = incb_tables(cps, text)
    cat = category_tables(cps, text)
    scripts, codes, names = script_tables()
    ccc = ccc_tables()
    dent, dseq = decomp_tables()
    comp = comp_tables()
    lower = lowercase_tables()

    out = []
    out.append("// Generated by tools/gen_unicode_tables.py — do not edit by hand.")
    out.append(f"// Sources: regex {regex.__version__}, unicodedata {unicodedata.unidata_version},")
    out.append("// fontTools script ranges.")
    out.append('#include "unicode_tables.hpp"')
    out.append("")
    out.append("namespace lexinfo::unidata {")
    out.append("")
    out.append(fmt_ranges("kGcbRanges", gcb))
    out.append("")
    out.append(fmt_ranges("kExtPictRanges", ext))
    out.append("")
    out.append(fmt_ranges("kInCBRanges", incb))
    out.append("")
    out.append(fmt_ranges("kCategoryRanges", cat))
    out.append("")
    out.append(fmt_ranges("kScriptRanges", scripts))
    out.append("")
    out.append(fmt_ranges("kCccRanges", ccc))
    out.append("")
    out.append("const char* const kScriptCodes[] = {")
    for i in range(0, len(codes), 8):
        out.append("    " + ", ".join(f'"{c}"' for c in codes[i : i + 8]) + ",")
    out.append("};")
    out.append("const char* const kScriptNames[] = {")
    for i in range(0, len(names), 4):
        out.append("    " + ", ".join(f'"{n}"' for n in names[i : i + 4]) + ",")
    out.append("};")
    out.append(f"const std::size_t kScriptCount = {len(codes)};")
    out.append("")
    out.append("const DecompEntry kDecompEntries[] = {")
    for i in range(0, len(dent), 5):
        out.append(
            "    "
            + ", ".join(f"{{0x{cp:X}, {off}, {ln}}}" for cp, off, ln in dent[i : i + 5])
            + ","
        )
    out.append("};")
    out.append(f"const std::size_t kDecompEntryCount = {len(dent)};")
    out.append("const char32_t kDecompSeq[] = {")
    for i in range(0, len(dseq), 10):
        out.append("    " + ", ".join(f"0x{c:X}" for c in dseq[i : i + 10]) + ",")
    out.append("};")
    out.append("")
    out.append("const CompPair kCompPairs[] = {")
    for i in range(0, len(comp), 4):
        out.append(
            "    " + ", ".join(f"{{0x{a:X}, 0x{b:X}, 0x{c:X}}}" for a, b, c in comp[i : i + 4]) + ","
        )
    out.append("};")
    out.append(f"const std::size_t kCompPairCount = {len(comp)};")
    out.append("")
    out.append("const LowercaseEntry kLowercaseEntries[] = {")
    for i in range(0, len(lower), 5):
        out.append(
            "    " + ", ".join(f"{{0x{a:X}, 0x{b:X}, 0x{c:X}}}" for a, b, c in lower[i : i + 5]) + ","
        )
    out.append("};")
    out.append(f"const std::size_t kLowercaseEntryCount = {len(lower)};")
    out.append("")
    out.append("}  // namespace lexinfo::unidata")
    out.append("")
    Path(path).write_text("\n".join(out), encoding="utf-8")
    print(f"wrote {path}: gcb={len(gcb)} extpict={len(ext)} incb={len(incb)} cat={len(cat)}")
    print(f"  scripts={len(scripts)} ccc={len(ccc)} decomp={len(dent)} comp={len(comp)} lower={len(lower)}")


SAMPLE_POOLS = [
    "abcdefghij",
    "éèüñç",              # precomposed Latin
    "éàüñ",                  # combining Latin
    "क्षिता",          # Devanagari incl. virama
    "กิ้มเ",                # Thai
    "한글가나",                      # Hangul syllables
    "각한",          # Hangul jamo
    "العربية",    # Arabic
    "\U0001F600\U0001F469‍\U0001F692\U0001F1E7\U0001F1F7",  # emoji + RI
    "\r\n\t ",
    "‍‌़́",                      # bare joiners/marks
]


def gen_grapheme_cases(path, n_cases=400, seed=20260810):
    rng = random.Random(seed)
    cases = []
    pool = "".join(SAMPLE_POOLS)
    for _ in range(n_cases):
        length = rng.randint(1, 12)
        s = "".join(rng.choice(pool) for _ in range(length))
        clusters = regex.findall(r"\X", s)
        cases.append({"text": s, "clusters": clusters})
    # A few directed cases.
    directed = [
        "café",
        "café",
        "\U0001F469‍\U0001F469‍\U0001F467",
        "\U0001F1E7\U0001F1F7\U0001F1EA\U0001F1F8",   # two flags
        "क्ष",
        "각가가",
        "x\r\ny",
    ]
    for s in directed:
        cases.append({"text": s, "clusters": regex.findall(r"\X", s)})
    Path(path).write_text(json.dumps(cases, ensure_ascii=False, indent=1), encoding="utf-8")
    print(f"wrote {path}: {len(cases)} cases")


def gen_nfc_cases(path, n_cases=400, seed=31337):
    rng = random.Random(seed)
    pool = (
        "aeounc"
        + "̧̣́̀̈̊̃"
        + "éÅÅḋǻ"
        + "क़াゔ"
        + "각가"
    )
    cases = []
    for _ in range(n_cases):
        length = rng.randint(1, 10)
        s = "".join(rng.choice(pool) for _ in range(length))
        cases.append({"text": s, "nfc": unicodedata.normalize("NFC", s)})
    Path(path).write_text(json.dumps(cases, ensure_ascii=False, indent=1), encoding="utf-8")
    print(f"wrote {path}: {len(cases)} cases")


if __name__ == "__main__":
    root = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent
    emit_cpp(root / "src" / "unicode_tables.cpp")
    (root / "tests" / "data").mkdir(parents=True, exist_ok=True)
    gen_grapheme_cases(root / "tests" / "data" / "grapheme_cases.json")
    gen_nfc_cases(root / "tests" / "data" / "nfc_cases.json")
