#include "rtt/translation.hpp"

#include <ctime>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "rtt/digest.hpp"
#include "rtt/unicode.hpp"

namespace rtt {

namespace {

std::string iso8601_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// "http://host:8080/translate" -> {"http://host:8080", "/translate"}
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("endpoint must include a scheme: " + endpoint);
    }
    const auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

}  // namespace

void validate(const TranslationRequest& request) {
    if (request.from == request.to) {
        throw ConfigError("translation request has identical source and target language: '" +
                          request.from + "'");
    }
    if (uni::trim(request.text).empty()) {
        throw ConfigError("translation request has empty text");
    }
}

std::shared_ptr<TranslationCache> TranslationCache::open(const std::filesystem::path& path) {
    auto cache = std::shared_ptr<TranslationCache>(new TranslationCache());
    cache->path_ = path;

    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);

    std::ifstream in(path);
    if (in) {
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (uni::trim(line).empty()) continue;
            try {
                const auto doc = nlohmann::json::parse(line);
                const auto key = doc.at("key").get<std::string>();
                const auto value = doc.at("value").get<std::string>();
                cache->index_.emplace(key, value);  // first write wins
            } catch (const nlohmann::json::exception&) {
                std::cerr << "warning: skipping malformed cache line " << line_no << " in "
                          << path << "\n";
            }
        }
    }

    cache->out_.open(path, std::ios::app);
    if (!cache->out_) {
        std::cerr << "warning: cache file " << path
                  << " is not writable; running with in-memory cache only\n";
    }
    return cache;
}

std::optional<std::string> TranslationCache::lookup(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void TranslationCache::store_if_absent(const std::string& key, const std::string& value) {
    std::lock_guard<std::mutex> lock(mu_);
    if (!index_.emplace(key, value).second) return;
    if (!out_) return;
    nlohmann::json entry;
    entry["created_at"] = iso8601_now();
    entry["key"] = key;
    entry["value"] = value;
    out_ << entry.dump() << '\n';
    out_.flush();
    if (!out_) std::cerr << "warning: failed to append cache entry to " << path_ << "\n";
}

std::size_t TranslationCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return index_.size();
}

std::string TranslationCache::make_key(const std::string& provider_id, const std::string& from,
                                       const std::string& to, const std::string& text) {
    std::string material;
    material.reserve(provider_id.size() + from.size() + to.size() + text.size() + 3);
    material += provider_id;
    material += '\x1f';
    material += from;
    material += '\x1f';
    material += to;
    material += '\x1f';
    material += uni::normalize_for_key(text);
    return sha256_hex(material);
}

std::string translate(TranslationProvider& provider, const TranslationRequest& request,
                      const TranslateOptions& options) {
    validate(request);
    return with_retries(options.retry, [&] {
        if (options.limiter) options.limiter->acquire();
        return provider.translate_once(request);
    });
}

std::string cached_translate(TranslationCache& cache, TranslationProvider& provider,
                             const TranslationRequest& request,
                             const TranslateOptions& options) {
    validate(request);
    const std::string key =
        TranslationCache::make_key(provider.id(), request.from, request.to, request.text);
    if (auto hit = cache.lookup(key)) return *hit;
    std::string value = translate(provider, request, options);
    cache.store_if_absent(key, value);
    return value;
}

RoundTripResult round_trip(TranslationProvider& provider, const std::string& text,
                           const TranslationChain& chain, const TranslateOptions& options,
                           const std::shared_ptr<TranslationCache>& cache) {
    const auto violations = validate_chain(chain, ChainMode::Random);
    if (!violations.empty()) {
        std::string msg = "invalid chain:";
        for (const std::string& v : violations) msg += " " + v + ";";
        throw ConfigError(msg);
    }

    RoundTripResult result;
    result.original = text;
    std::string current = text;
    const auto hops = chain.hops();
    for (std::size_t i = 0; i < hops.size(); ++i) {
        const TranslationRequest request{current, hops[i].from, hops[i].to};
        std::string output;
        try {
            output = cache ? cached_translate(*cache, provider, request, options)
                           : translate(provider, request, options);
        } catch (const ProviderError& err) {
            std::ostringstream msg;
            msg << err.what() << " (hop " << i << ": " << hops[i].from << "->" << hops[i].to
                << ")";
            throw ProviderError(err.fault(), msg.str(), static_cast<int>(i));
        }
        result.hops.push_back({hops[i].from, hops[i].to, output});
        current = output;
    }
    result.final_text = current;
    return result;
}

MockLexicon MockLexicon::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open lexicon file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed lexicon file " + path.string() + ": " + e.what());
    }
    return from_json(doc);
}

MockLexicon MockLexicon::from_json(const nlohmann::json& doc) {
    MockLexicon lexicon;
    if (!doc.is_object() || !doc.contains("pairs") || !doc.at("pairs").is_array()) {
        throw ConfigError("lexicon must be an object with a 'pairs' array");
    }
    for (const auto& pair : doc.at("pairs")) {
        std::vector<RewriteRule> rules;
        for (const auto& rule : pair.at("rules")) {
            rules.push_back({rule.at("match").get<std::string>(),
                             rule.at("replace").get<std::string>()});
        }
        lexicon.add_pair(pair.at("from").get<std::string>(), pair.at("to").get<std::string>(),
                         std::move(rules));
    }
    return lexicon;
}

void MockLexicon::add_pair(const std::string& from, const std::string& to,
                           std::vector<RewriteRule> rules) {
    for (const RewriteRule& rule : rules) {
        if (rule.match.empty()) {
            throw ConfigError("lexicon rule for " + from + "->" + to + " has an empty match");
        }
    }
    pairs_[{from, to}] = std::move(rules);
}

bool MockLexicon::has_pair(const std::string& from, const std::string& to) const {
    return pairs_.find({from, to}) != pairs_.end();
}

std::string MockLexicon::apply(const std::string& from, const std::string& to,
                               const std::string& text) const {
    auto it = pairs_.find({from, to});
    if (it == pairs_.end()) {
        throw ConfigError("unknown language pair: " + from + "->" + to);
    }
    const auto& rules = it->second;

    std::vector<std::string> folded;
    folded.reserve(rules.size());
    for (const RewriteRule& rule : rules) folded.push_back(uni::ascii_lower(rule.match));

    const std::string haystack = uni::ascii_lower(text);
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t best = rules.size();
        std::size_t best_len = 0;
        for (std::size_t r = 0; r < rules.size(); ++r) {
            const std::string& m = folded[r];
            if (m.size() > best_len && haystack.compare(i, m.size(), m) == 0) {
                best = r;
                best_len = m.size();
            }
        }
        if (best < rules.size()) {
            out += rules[best].replace;
            i += best_len;
        } else {
            out += text[i];
            ++i;
        }
    }
    return out;
}

std::string mock_translate(const MockLexicon& lexicon, const TranslationRequest& request) {
    validate(request);
    return lexicon.apply(request.from, request.to, request.text);
}

std::string MockTranslationProvider::translate_once(const TranslationRequest& request) {
    calls_.fetch_add(1);
    int remaining = scripted_failures_.load();
    while (remaining > 0 &&
           !scripted_failures_.compare_exchange_weak(remaining, remaining - 1)) {
    }
    if (remaining > 0) {
        throw ProviderError(scripted_fault_, "scripted mock provider failure");
    }
    return mock_translate(lexicon_, request);
}

HttpTranslationProvider::HttpTranslationProvider(HttpProviderConfig config)
    : config_(std::move(config)) {
    if (config_.endpoint.empty()) throw ConfigError("http provider requires an endpoint");
}

std::string HttpTranslationProvider::translate_once(const TranslationRequest& request) {
    const auto [base, path] = split_endpoint(config_.endpoint);
    httplib::Client client(base);
    client.set_connection_timeout(0, config_.timeout_ms * 1000LL);
    client.set_read_timeout(0, config_.timeout_ms * 1000LL);
    client.set_write_timeout(0, config_.timeout_ms * 1000LL);

    httplib::Headers headers;
    if (!config_.key_env_var.empty()) {
        const char* key = std::getenv(config_.key_env_var.c_str());
        if (key == nullptr || *key == '\0') {
            throw ProviderError(ProviderFault::Unavailable,
                                "missing API key: environment variable '" + config_.key_env_var +
                                    "' is not set");
        }
        headers.emplace(config_.key_header, key);
    }

    nlohmann::json body;
    body["text"] = request.text;
    body["source"] = request.from;
    body["target"] = request.to;

    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) {
        throw ProviderError(ProviderFault::Unavailable,
                            "connection to " + config_.endpoint + " failed: " +
                                httplib::to_string(res.error()));
    }
    switch (res->status) {
        case 200:
            break;
        case 429:
            throw ProviderError(ProviderFault::RateLimited,
                                "provider rate limit at " + config_.endpoint);
        case 413:
            throw ProviderError(ProviderFault::TextTooLong,
                                "provider rejected text length at " + config_.endpoint);
        case 401:
        case 403:
            throw ProviderError(ProviderFault::Unavailable,
                                "provider rejected credentials at " + config_.endpoint +
                                    " (status " + std::to_string(res->status) + ")");
        default:
            throw ProviderError(ProviderFault::Unavailable,
                                "unexpected status " + std::to_string(res->status) + " from " +
                                    config_.endpoint);
    }
    try {
        const auto doc = nlohmann::json::parse(res->body);
        return doc.at("translation").get<std::string>();
    } catch (const nlohmann::json::exception&) {
        throw ProviderError(ProviderFault::Unavailable,
                            "malformed response body from " + config_.endpoint);
    }
}

std::shared_ptr<TranslationProvider> make_provider(const nlohmann::json& section,
                                                   const std::filesystem::path& base_dir) {
    if (!section.is_object() || !section.contains("provider_id")) {
        throw ConfigError("provider config must be an object with provider_id");
    }
    const auto id = section.at("provider_id").get<std::string>();
    if (id == "mock") {
        if (!section.contains("lexicon")) {
            throw ConfigError("mock provider requires a 'lexicon' path");
        }
        std::filesystem::path lexicon_path = section.at("lexicon").get<std::string>();
        if (lexicon_path.is_relative()) lexicon_path = base_dir / lexicon_path;
        return std::make_shared<MockTranslationProvider>(MockLexicon::from_file(lexicon_path));
    }
    HttpProviderConfig config;
    config.provider_id = id;
    config.endpoint = section.value("endpoint", std::string{});
    config.key_env_var = section.value("key_env_var", std::string{});
    config.key_header = section.value("key_header", std::string{"X-API-Key"});
    config.timeout_ms = section.value("timeout_ms", 30000);
    config.rps_limit = section.value("rps_limit", 0.0);
    return std::make_shared<HttpTranslationProvider>(std::move(config));
}

}  // namespace rtt
