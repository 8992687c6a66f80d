#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rtt {

/// Coarse linguistic-family labels. Fixed enumeration; registry files must
/// use these spellings exactly.
enum class LanguageFamily {
    IndoEuropean,
    SinoTibetan,
    Japonic,
    Koreanic,
    Afroasiatic,
    Turkic,
    Uralic,
    Austronesian,
    Austroasiatic,
    NigerCongo,
    Dravidian,
    KraDai,
    Other,
};

const char* to_string(LanguageFamily family);
LanguageFamily family_from_string(const std::string& label);  // ConfigError on unknown label

struct Language {
    std::string code;  // ISO-639-1 style: lowercase, 2-3 characters
    std::string name;
    LanguageFamily family = LanguageFamily::Other;

    bool operator==(const Language&) const = default;
};

/// Immutable, ordered collection of languages keyed by code.
class LanguageRegistry {
public:
    /// Shipped registry: 40+ high-coverage machine-translation languages
    /// across all thirteen family labels.
    static LanguageRegistry builtin();

    /// "builtin" or a path to a JSON array of {code, name, family}.
    static LanguageRegistry load(const std::string& path_or_builtin);

    static LanguageRegistry from_json(const nlohmann::json& doc);
    static LanguageRegistry from_languages(std::vector<Language> languages);

    const std::vector<Language>& languages() const { return languages_; }
    std::size_t size() const { return languages_.size(); }
    bool contains(std::string_view code) const;
    const Language& at(std::string_view code) const;  // ConfigError when absent

private:
    explicit LanguageRegistry(std::vector<Language> languages);

    std::vector<Language> languages_;
    std::unordered_map<std::string, std::size_t> index_;
};

enum class ChainMode { Random, DistinctFamily };

const char* to_string(ChainMode mode);
ChainMode chain_mode_from_string(const std::string& label);  // "random" | "distinct_family"

/// Recipe for selecting a translation chain: length x, selection mode,
/// source language, and the seed that makes selection reproducible.
struct ChainSpec {
    int length = 3;
    ChainMode mode = ChainMode::DistinctFamily;
    std::string source = "en";
    std::uint64_t seed = 0;
};

/// "RTT3d", "RTT5r", ...
std::string chain_name(const ChainSpec& spec);

/// Parse the short form used on the command line: "3d" -> {3, DistinctFamily}.
ChainSpec parse_chain_code(std::string_view token);

/// An ordered, validated sequence of translation hops that starts and ends
/// at the source language.
struct TranslationChain {
    struct HopSpec {
        std::string from;
        std::string to;
    };

    Language source;
    std::vector<Language> intermediates;

    int length() const { return static_cast<int>(intermediates.size()); }

    /// source -> i1, i1 -> i2, ..., ix -> source. Always length()+1 hops.
    std::vector<HopSpec> hops() const;

    std::vector<std::string> intermediate_codes() const;
};

/// Deterministic chain selection. Same (spec, registry contents and order)
/// always yields the same chain. Random mode draws uniformly without
/// replacement among non-source languages; DistinctFamily additionally
/// requires pairwise-distinct families, none equal to the source's.
/// Throws ConfigError ("insufficient languages") when the registry cannot
/// satisfy the mode's constraints.
TranslationChain select_chain(const ChainSpec& spec, const LanguageRegistry& registry);

/// Build a chain from explicit intermediate codes; validates base invariants.
TranslationChain make_chain(const LanguageRegistry& registry, const std::string& source_code,
                            const std::vector<std::string>& intermediate_codes);

/// Every violated invariant, in stable order; empty means the chain is valid
/// for the given mode.
std::vector<std::string> validate_chain(const TranslationChain& chain, ChainMode mode);

/// Default three-family preset: en -> ja -> ar -> sw -> en.
TranslationChain preset_rtt3d(const LanguageRegistry& registry);

}  // namespace rtt
