#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rtt/errors.hpp"

namespace rtt {

/// A token is a maximal run of Unicode letters, plus apostrophes (U+0027 or
/// U+2019) that sit between two letters. Everything else separates tokens.
/// Casing is preserved.
std::vector<std::string> tokenize(const std::string& text);

std::size_t word_count(const std::string& text);

/// Lowercase headword set, e.g. a common-3000 vocabulary. Membership is
/// exact (no lemmatization): "running" misses when only "run" is listed.
class WordList {
public:
    WordList(std::string name, std::unordered_set<std::string> entries);

    /// One word per line; '#' starts a comment; blank lines ignored. Entries
    /// are lowercased on load. The list name is the file stem.
    static WordList from_file(const std::filesystem::path& path);

    bool contains(const std::string& lowercase_word) const {
        return entries_.count(lowercase_word) > 0;
    }
    std::size_t size() const { return entries_.size(); }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::unordered_set<std::string> entries_;
};

/// Tokens whose lowercase form is missing from the list. Never exceeds
/// word_count(text).
std::size_t uncommon_word_count(const std::string& text, const WordList& wordlist);

struct GeneralizationReport {
    std::size_t n_pairs = 0;
    double mean_len_before = 0.0;
    double mean_len_after = 0.0;
    double len_ratio = 0.0;  // mean_len_after / mean_len_before; 0 when before mean is 0
    double mean_uncommon_before = 0.0;
    double mean_uncommon_after = 0.0;
    double uncommon_ratio = 0.0;

    nlohmann::json to_json() const;
};

/// Pairwise before/after comparison over aligned text lists. ConfigError
/// when the lists differ in length or are empty.
GeneralizationReport generalization_report(const std::vector<std::string>& before,
                                           const std::vector<std::string>& after,
                                           const WordList& wordlist);

/// One non-blank line per entry, used to load the analyze command's inputs.
std::vector<std::string> read_text_lines(const std::filesystem::path& path);

}  // namespace rtt
