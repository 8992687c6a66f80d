#include "rtt/unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/unorm2.h>
#include <unicode/ustring.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace rtt::uni {

namespace {

std::u16string utf8_to_utf16(const std::string& utf8) {
    UErrorCode status = U_ZERO_ERROR;
    int32_t len16 = 0;
    u_strFromUTF8WithSub(nullptr, 0, &len16, utf8.data(), static_cast<int32_t>(utf8.size()),
                         0xFFFD, nullptr, &status);
    if (status != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(status)) {
        throw std::runtime_error("utf8 decode failed");
    }
    status = U_ZERO_ERROR;
    std::u16string out(static_cast<std::size_t>(len16), u'\0');
    u_strFromUTF8WithSub(out.data(), len16, nullptr, utf8.data(),
                         static_cast<int32_t>(utf8.size()), 0xFFFD, nullptr, &status);
    if (U_FAILURE(status)) throw std::runtime_error("utf8 decode failed");
    return out;
}

std::string utf16_to_utf8(const std::u16string& utf16) {
    UErrorCode status = U_ZERO_ERROR;
    int32_t len8 = 0;
    u_strToUTF8WithSub(nullptr, 0, &len8, utf16.data(), static_cast<int32_t>(utf16.size()),
                       0xFFFD, nullptr, &status);
    if (status != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(status)) {
        throw std::runtime_error("utf16 encode failed");
    }
    status = U_ZERO_ERROR;
    std::string out(static_cast<std::size_t>(len8), '\0');
    u_strToUTF8WithSub(out.data(), len8, nullptr, utf16.data(),
                       static_cast<int32_t>(utf16.size()), 0xFFFD, nullptr, &status);
    if (U_FAILURE(status)) throw std::runtime_error("utf16 encode failed");
    return out;
}

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

}  // namespace

std::string nfc(const std::string& utf8) {
    if (utf8.empty()) return utf8;
    UErrorCode status = U_ZERO_ERROR;
    const UNormalizer2* norm = unorm2_getNFCInstance(&status);
    if (U_FAILURE(status)) throw std::runtime_error("NFC normalizer unavailable");

    const std::u16string in = utf8_to_utf16(utf8);
    int32_t needed = unorm2_normalize(norm, in.data(), static_cast<int32_t>(in.size()),
                                      nullptr, 0, &status);
    if (status != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(status)) {
        throw std::runtime_error("NFC normalization failed");
    }
    status = U_ZERO_ERROR;
    std::u16string out(static_cast<std::size_t>(needed), u'\0');
    unorm2_normalize(norm, in.data(), static_cast<int32_t>(in.size()), out.data(), needed,
                     &status);
    if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
    return utf16_to_utf8(out);
}

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && is_ascii_space(s[begin])) ++begin;
    while (end > begin && is_ascii_space(s[end - 1])) --end;
    return s.substr(begin, end - begin);
}

std::string normalize_for_key(const std::string& s) { return nfc(trim(s)); }

std::string ascii_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
    });
    return s;
}

bool contains_ci(const std::string& haystack, const std::string& needle) {
    return ascii_lower(haystack).find(ascii_lower(needle)) != std::string::npos;
}

std::string lower_simple(const std::string& utf8) {
    std::string out;
    out.reserve(utf8.size());
    for (char32_t cp : codepoints(utf8)) {
        append_utf8(out, static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))));
    }
    return out;
}

bool is_letter(char32_t cp) { return u_isalpha(static_cast<UChar32>(cp)) != 0; }

std::vector<char32_t> codepoints(const std::string& utf8) {
    std::vector<char32_t> out;
    out.reserve(utf8.size());
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(utf8.data());
    const int32_t n = static_cast<int32_t>(utf8.size());
    int32_t i = 0;
    while (i < n) {
        UChar32 cp = 0;
        U8_NEXT(bytes, i, n, cp);
        if (cp < 0) cp = 0xFFFD;
        out.push_back(static_cast<char32_t>(cp));
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    char buf[U8_MAX_LENGTH];
    int32_t offset = 0;
    UBool err = 0;
    U8_APPEND(reinterpret_cast<std::uint8_t*>(buf), offset, U8_MAX_LENGTH,
              static_cast<UChar32>(cp), err);
    if (err) {
        out += "\xEF\xBF\xBD";  // U+FFFD
        return;
    }
    out.append(buf, static_cast<std::size_t>(offset));
}

}  // namespace rtt::uni
