#include "rtt/textmetrics.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "rtt/unicode.hpp"

namespace rtt {

std::vector<std::string> tokenize(const std::string& text) {
    const std::vector<char32_t> cps = uni::codepoints(text);
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t cp = cps[i];
        if (uni::is_letter(cp)) {
            uni::append_utf8(current, cp);
            continue;
        }
        const bool apostrophe = cp == U'\'' || cp == U'’';
        if (apostrophe && !current.empty() && i + 1 < cps.size() && uni::is_letter(cps[i + 1])) {
            uni::append_utf8(current, cp);
            continue;
        }
        flush();
    }
    flush();
    return tokens;
}

std::size_t word_count(const std::string& text) { return tokenize(text).size(); }

WordList::WordList(std::string name, std::unordered_set<std::string> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
    if (entries_.empty()) throw ConfigError("word list '" + name_ + "' is empty");
    for (const std::string& entry : entries_) {
        for (char c : entry) {
            if (c == ' ' || c == '\t') {
                throw ConfigError("word list '" + name_ + "' entry contains whitespace: '" +
                                  entry + "'");
            }
        }
    }
}

WordList WordList::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open word list: " + path.string());
    std::unordered_set<std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string word = uni::trim(line);
        if (word.empty()) continue;
        entries.insert(uni::lower_simple(word));
    }
    return WordList(path.stem().string(), std::move(entries));
}

std::size_t uncommon_word_count(const std::string& text, const WordList& wordlist) {
    std::size_t misses = 0;
    for (const std::string& token : tokenize(text)) {
        if (!wordlist.contains(uni::lower_simple(token))) ++misses;
    }
    return misses;
}

nlohmann::json GeneralizationReport::to_json() const {
    nlohmann::json doc;
    doc["n_pairs"] = n_pairs;
    doc["mean_len_before"] = mean_len_before;
    doc["mean_len_after"] = mean_len_after;
    doc["len_ratio"] = len_ratio;
    doc["mean_uncommon_before"] = mean_uncommon_before;
    doc["mean_uncommon_after"] = mean_uncommon_after;
    doc["uncommon_ratio"] = uncommon_ratio;
    return doc;
}

GeneralizationReport generalization_report(const std::vector<std::string>& before,
                                           const std::vector<std::string>& after,
                                           const WordList& wordlist) {
    if (before.size() != after.size()) {
        throw ConfigError("before/after length mismatch: " + std::to_string(before.size()) +
                          " vs " + std::to_string(after.size()));
    }
    if (before.empty()) throw ConfigError("generalization report requires at least one pair");

    GeneralizationReport report;
    report.n_pairs = before.size();
    double len_b = 0, len_a = 0, unc_b = 0, unc_a = 0;
    for (std::size_t i = 0; i < before.size(); ++i) {
        len_b += static_cast<double>(word_count(before[i]));
        len_a += static_cast<double>(word_count(after[i]));
        unc_b += static_cast<double>(uncommon_word_count(before[i], wordlist));
        unc_a += static_cast<double>(uncommon_word_count(after[i], wordlist));
    }
    const auto n = static_cast<double>(report.n_pairs);
    report.mean_len_before = len_b / n;
    report.mean_len_after = len_a / n;
    report.mean_uncommon_before = unc_b / n;
    report.mean_uncommon_after = unc_a / n;
    report.len_ratio = report.mean_len_before > 0 ? report.mean_len_after / report.mean_len_before
                                                  : 0.0;
    report.uncommon_ratio =
        report.mean_uncommon_before > 0 ? report.mean_uncommon_after / report.mean_uncommon_before
                                        : 0.0;
    return report;
}

std::vector<std::string> read_text_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open text file: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (uni::trim(line).empty()) continue;
        lines.push_back(line);
    }
    return lines;
}

}  // namespace rtt
