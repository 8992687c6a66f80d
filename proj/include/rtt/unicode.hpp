#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rtt::uni {

/// Canonical composition (NFC) of a UTF-8 string. Malformed byte sequences
/// are replaced with U+FFFD rather than rejected.
std::string nfc(const std::string& utf8);

/// Strip ASCII whitespace (space, \t, \r, \n, \v, \f) from both ends.
std::string trim(const std::string& s);

/// Normalization applied before hashing cache keys and prompt digests:
/// NFC of the trimmed text.
std::string normalize_for_key(const std::string& s);

/// Byte-wise A-Z fold. Length-preserving, which makes it safe for substring
/// offset arithmetic; used for case-insensitive matching of English patterns.
std::string ascii_lower(std::string s);

/// True when needle occurs in haystack under ASCII case folding.
bool contains_ci(const std::string& haystack, const std::string& needle);

/// Unicode simple lowercase, codepoint by codepoint.
std::string lower_simple(const std::string& utf8);

/// General_Category L* (letter).
bool is_letter(char32_t cp);

/// Decode UTF-8 into codepoints; malformed sequences decode to U+FFFD.
std::vector<char32_t> codepoints(const std::string& utf8);

void append_utf8(std::string& out, char32_t cp);

}  // namespace rtt::uni
