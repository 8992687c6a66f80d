#include "rtt/taxonomy.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rtt/errors.hpp"
#include "rtt/prng.hpp"

namespace rtt {

namespace {

const std::pair<LanguageFamily, const char*> kFamilyNames[] = {
    {LanguageFamily::IndoEuropean, "IndoEuropean"},
    {LanguageFamily::SinoTibetan, "SinoTibetan"},
    {LanguageFamily::Japonic, "Japonic"},
    {LanguageFamily::Koreanic, "Koreanic"},
    {LanguageFamily::Afroasiatic, "Afroasiatic"},
    {LanguageFamily::Turkic, "Turkic"},
    {LanguageFamily::Uralic, "Uralic"},
    {LanguageFamily::Austronesian, "Austronesian"},
    {LanguageFamily::Austroasiatic, "Austroasiatic"},
    {LanguageFamily::NigerCongo, "NigerCongo"},
    {LanguageFamily::Dravidian, "Dravidian"},
    {LanguageFamily::KraDai, "KraDai"},
    {LanguageFamily::Other, "Other"},
};

bool valid_code(const std::string& code) {
    if (code.size() < 2 || code.size() > 3) return false;
    return std::all_of(code.begin(), code.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

const char* to_string(LanguageFamily family) {
    for (const auto& [value, name] : kFamilyNames) {
        if (value == family) return name;
    }
    return "Other";
}

LanguageFamily family_from_string(const std::string& label) {
    for (const auto& [value, name] : kFamilyNames) {
        if (label == name) return value;
    }
    throw ConfigError("unknown language family label: '" + label + "'");
}

LanguageRegistry::LanguageRegistry(std::vector<Language> languages)
    : languages_(std::move(languages)) {
    for (std::size_t i = 0; i < languages_.size(); ++i) {
        const Language& lang = languages_[i];
        if (!valid_code(lang.code)) {
            throw ConfigError("invalid language code '" + lang.code +
                              "': must be 2-3 lowercase letters");
        }
        if (lang.name.empty()) {
            throw ConfigError("language '" + lang.code + "' has an empty name");
        }
        if (!index_.emplace(lang.code, i).second) {
            throw ConfigError("duplicate language code '" + lang.code + "'");
        }
    }
}

LanguageRegistry LanguageRegistry::from_languages(std::vector<Language> languages) {
    return LanguageRegistry(std::move(languages));
}

LanguageRegistry LanguageRegistry::builtin() {
    using F = LanguageFamily;
    return LanguageRegistry({
        {"en", "English", F::IndoEuropean},
        {"fr", "French", F::IndoEuropean},
        {"de", "German", F::IndoEuropean},
        {"es", "Spanish", F::IndoEuropean},
        {"pt", "Portuguese", F::IndoEuropean},
        {"it", "Italian", F::IndoEuropean},
        {"ru", "Russian", F::IndoEuropean},
        {"pl", "Polish", F::IndoEuropean},
        {"el", "Greek", F::IndoEuropean},
        {"hi", "Hindi", F::IndoEuropean},
        {"bn", "Bengali", F::IndoEuropean},
        {"fa", "Persian", F::IndoEuropean},
        {"zh", "Chinese", F::SinoTibetan},
        {"my", "Burmese", F::SinoTibetan},
        {"ja", "Japanese", F::Japonic},
        {"ko", "Korean", F::Koreanic},
        {"ar", "Arabic", F::Afroasiatic},
        {"he", "Hebrew", F::Afroasiatic},
        {"am", "Amharic", F::Afroasiatic},
        {"ha", "Hausa", F::Afroasiatic},
        {"tr", "Turkish", F::Turkic},
        {"az", "Azerbaijani", F::Turkic},
        {"kk", "Kazakh", F::Turkic},
        {"uz", "Uzbek", F::Turkic},
        {"fi", "Finnish", F::Uralic},
        {"hu", "Hungarian", F::Uralic},
        {"et", "Estonian", F::Uralic},
        {"id", "Indonesian", F::Austronesian},
        {"ms", "Malay", F::Austronesian},
        {"tl", "Tagalog", F::Austronesian},
        {"mg", "Malagasy", F::Austronesian},
        {"vi", "Vietnamese", F::Austroasiatic},
        {"km", "Khmer", F::Austroasiatic},
        {"sw", "Swahili", F::NigerCongo},
        {"yo", "Yoruba", F::NigerCongo},
        {"zu", "Zulu", F::NigerCongo},
        {"ig", "Igbo", F::NigerCongo},
        {"ta", "Tamil", F::Dravidian},
        {"te", "Telugu", F::Dravidian},
        {"kn", "Kannada", F::Dravidian},
        {"ml", "Malayalam", F::Dravidian},
        {"th", "Thai", F::KraDai},
        {"lo", "Lao", F::KraDai},
        {"ka", "Georgian", F::Other},
        {"eu", "Basque", F::Other},
        {"mn", "Mongolian", F::Other},
    });
}

LanguageRegistry LanguageRegistry::load(const std::string& path_or_builtin) {
    if (path_or_builtin == "builtin") return builtin();
    std::ifstream in(path_or_builtin);
    if (!in) throw ConfigError("cannot open language registry file: " + path_or_builtin);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed registry file " + path_or_builtin + ": " + e.what());
    }
    return from_json(doc);
}

LanguageRegistry LanguageRegistry::from_json(const nlohmann::json& doc) {
    if (!doc.is_array()) throw ConfigError("registry must be a JSON array");
    std::vector<Language> languages;
    languages.reserve(doc.size());
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("code") || !item.contains("name") ||
            !item.contains("family")) {
            throw ConfigError("registry entries must be {code, name, family} objects");
        }
        languages.push_back({item.at("code").get<std::string>(),
                             item.at("name").get<std::string>(),
                             family_from_string(item.at("family").get<std::string>())});
    }
    return LanguageRegistry(std::move(languages));
}

bool LanguageRegistry::contains(std::string_view code) const {
    return index_.find(std::string(code)) != index_.end();
}

const Language& LanguageRegistry::at(std::string_view code) const {
    auto it = index_.find(std::string(code));
    if (it == index_.end()) {
        throw ConfigError("language '" + std::string(code) + "' not in registry");
    }
    return languages_[it->second];
}

const char* to_string(ChainMode mode) {
    return mode == ChainMode::Random ? "random" : "distinct_family";
}

ChainMode chain_mode_from_string(const std::string& label) {
    if (label == "random" || label == "r") return ChainMode::Random;
    if (label == "distinct_family" || label == "d") return ChainMode::DistinctFamily;
    throw ConfigError("unknown chain mode: '" + label + "' (expected random|distinct_family)");
}

std::string chain_name(const ChainSpec& spec) {
    std::ostringstream out;
    out << "RTT" << spec.length << (spec.mode == ChainMode::Random ? 'r' : 'd');
    return out.str();
}

ChainSpec parse_chain_code(std::string_view token) {
    if (token.size() < 2) throw ConfigError("chain code must look like '3d' or '2r'");
    const char mode_ch = token.back();
    if (mode_ch != 'r' && mode_ch != 'd') {
        throw ConfigError("chain code must end in 'r' (random) or 'd' (distinct families)");
    }
    int length = 0;
    for (char c : token.substr(0, token.size() - 1)) {
        if (c < '0' || c > '9') throw ConfigError("chain code must look like '3d' or '2r'");
        length = length * 10 + (c - '0');
    }
    if (length < 1) throw ConfigError("chain length must be >= 1");
    ChainSpec spec;
    spec.length = length;
    spec.mode = (mode_ch == 'r') ? ChainMode::Random : ChainMode::DistinctFamily;
    return spec;
}

std::vector<TranslationChain::HopSpec> TranslationChain::hops() const {
    std::vector<HopSpec> out;
    out.reserve(intermediates.size() + 1);
    std::string prev = source.code;
    for (const Language& lang : intermediates) {
        out.push_back({prev, lang.code});
        prev = lang.code;
    }
    out.push_back({prev, source.code});
    return out;
}

std::vector<std::string> TranslationChain::intermediate_codes() const {
    std::vector<std::string> codes;
    codes.reserve(intermediates.size());
    for (const Language& lang : intermediates) codes.push_back(lang.code);
    return codes;
}

TranslationChain select_chain(const ChainSpec& spec, const LanguageRegistry& registry) {
    if (spec.length < 1) throw ConfigError("chain length must be >= 1");
    const Language& source = registry.at(spec.source);

    // Pool in registry order; selection depends only on (seed, registry order).
    std::vector<Language> pool;
    for (const Language& lang : registry.languages()) {
        if (lang.code == source.code) continue;
        if (spec.mode == ChainMode::DistinctFamily && lang.family == source.family) continue;
        pool.push_back(lang);
    }

    const std::size_t want = static_cast<std::size_t>(spec.length);
    SplitMix64 rng(spec.seed);
    TranslationChain chain;
    chain.source = source;

    if (spec.mode == ChainMode::Random) {
        if (pool.size() < want) {
            throw ConfigError("insufficient languages: need " + std::to_string(spec.length) +
                              " non-source languages, registry has " +
                              std::to_string(pool.size()));
        }
        chain.intermediates = sample_without_replacement(pool, want, rng);
        return chain;
    }

    std::set<LanguageFamily> available;
    for (const Language& lang : pool) available.insert(lang.family);
    if (available.size() < want) {
        throw ConfigError("insufficient languages: need " + std::to_string(spec.length) +
                          " pairwise-distinct non-source families, registry has " +
                          std::to_string(available.size()));
    }
    shuffle(pool, rng);
    std::set<LanguageFamily> used;
    for (const Language& lang : pool) {
        if (chain.intermediates.size() == want) break;
        if (used.insert(lang.family).second) chain.intermediates.push_back(lang);
    }
    return chain;
}

TranslationChain make_chain(const LanguageRegistry& registry, const std::string& source_code,
                            const std::vector<std::string>& intermediate_codes) {
    if (intermediate_codes.empty()) throw ConfigError("chain needs at least one intermediate");
    TranslationChain chain;
    chain.source = registry.at(source_code);
    for (const std::string& code : intermediate_codes) {
        chain.intermediates.push_back(registry.at(code));
    }
    auto violations = validate_chain(chain, ChainMode::Random);
    if (!violations.empty()) {
        std::string msg = "invalid chain:";
        for (const std::string& v : violations) msg += " " + v + ";";
        throw ConfigError(msg);
    }
    return chain;
}

std::vector<std::string> validate_chain(const TranslationChain& chain, ChainMode mode) {
    std::vector<std::string> violations;
    if (chain.intermediates.empty()) violations.push_back("chain has no intermediates");

    std::set<std::string> seen_codes;
    std::set<LanguageFamily> seen_families;
    for (const Language& lang : chain.intermediates) {
        if (lang.code == chain.source.code) violations.push_back("intermediate equals source");
        if (!seen_codes.insert(lang.code).second) {
            violations.push_back("duplicate intermediate: " + lang.code);
        }
        if (mode == ChainMode::DistinctFamily) {
            if (lang.family == chain.source.family) {
                violations.push_back("intermediate family equals source family: " + lang.code);
            } else if (!seen_families.insert(lang.family).second) {
                violations.push_back("duplicate intermediate family: " +
                                     std::string(to_string(lang.family)));
            }
        }
    }
    return violations;
}

TranslationChain preset_rtt3d(const LanguageRegistry& registry) {
    return make_chain(registry, "en", {"ja", "ar", "sw"});
}

}  // namespace rtt
