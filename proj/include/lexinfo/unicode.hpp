#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lexinfo {

// Strict UTF-8 codec; malformed input throws InputError.
std::vector<char32_t> utf8_decode(std::string_view s);
std::string utf8_encode(const std::vector<char32_t>& cps);
std::string utf8_encode(char32_t cp);

// Canonical composition (NFC).
std::string nfc(std::string_view s);

// Extended grapheme clusters per UAX #29 (GB1–GB13, GB9c, GB999).
std::vector<std::string> grapheme_clusters(std::string_view s);

bool is_letter(char32_t cp);
bool is_mark(char32_t cp);

// Script property. Identifiers accept either the long name ("Latin") or the
// ISO 15924 code ("Latn"), case-insensitively; unknown names throw InputError.
int script_id_by_name(std::string_view name);
int script_of(char32_t cp);
std::string_view script_name(int id);
int script_common();     // Zyyy
int script_inherited();  // Zinh

// Full lowercase mapping.
std::string to_lower(std::string_view s);

}  // namespace lexinfo
