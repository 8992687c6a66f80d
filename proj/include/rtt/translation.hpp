#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rtt/errors.hpp"
#include "rtt/retry.hpp"
#include "rtt/taxonomy.hpp"

namespace rtt {

struct TranslationRequest {
    std::string text;
    std::string from;
    std::string to;
};

/// ConfigError when from == to or the text is empty after trimming.
void validate(const TranslationRequest& request);

struct TranslatedHop {
    std::string from;
    std::string to;
    std::string output;
};

struct RoundTripResult {
    std::string original;
    std::vector<TranslatedHop> hops;
    std::string final_text;  // output of the last hop, back in the source language
};

/// One translation backend. translate_once is a single attempt: retries,
/// caching and throttling are layered on top.
class TranslationProvider {
public:
    virtual ~TranslationProvider() = default;
    virtual std::string id() const = 0;
    virtual std::string translate_once(const TranslationRequest& request) = 0;
};

/// Append-only persistent cache. One JSON object per line:
/// {"created_at": ..., "key": ..., "value": ...}. Keys are SHA-256 over
/// (provider id, from, to, NFC-trimmed text). First write wins; values are
/// immutable. Safe for concurrent use.
class TranslationCache {
public:
    static std::shared_ptr<TranslationCache> open(const std::filesystem::path& path);

    std::optional<std::string> lookup(const std::string& key) const;
    void store_if_absent(const std::string& key, const std::string& value);
    std::size_t size() const;
    const std::filesystem::path& path() const { return path_; }

    static std::string make_key(const std::string& provider_id, const std::string& from,
                                const std::string& to, const std::string& text);

private:
    TranslationCache() = default;

    mutable std::mutex mu_;
    std::unordered_map<std::string, std::string> index_;
    std::ofstream out_;
    std::filesystem::path path_;
};

/// Shared knobs for the translate operations.
struct TranslateOptions {
    RetryPolicy retry{};
    std::shared_ptr<RateLimiter> limiter;  // null -> unthrottled
};

/// Validated, throttled, retry-wrapped single translation.
std::string translate(TranslationProvider& provider, const TranslationRequest& request,
                      const TranslateOptions& options = {});

/// translate() with a persistent cache in front: a key hit returns the stored
/// value with zero provider calls. Cache I/O failures fall through to the
/// provider with a warning on stderr.
std::string cached_translate(TranslationCache& cache, TranslationProvider& provider,
                             const TranslationRequest& request,
                             const TranslateOptions& options = {});

/// Execute every hop of the chain in order, feeding each hop's output into
/// the next, recording the full trace. Provider errors are re-thrown with the
/// failing hop index attached. When `cache` is non-null each hop goes through
/// cached_translate.
RoundTripResult round_trip(TranslationProvider& provider, const std::string& text,
                           const TranslationChain& chain, const TranslateOptions& options = {},
                           const std::shared_ptr<TranslationCache>& cache = nullptr);

struct RewriteRule {
    std::string match;    // matched case-insensitively (ASCII fold)
    std::string replace;  // emitted verbatim
};

/// Deterministic per-language-pair rewrite tables for offline runs. Rules are
/// applied in a single left-to-right scan, longest match first; unmatched
/// text passes through unchanged.
class MockLexicon {
public:
    static MockLexicon from_file(const std::filesystem::path& path);
    static MockLexicon from_json(const nlohmann::json& doc);

    MockLexicon() = default;

    void add_pair(const std::string& from, const std::string& to,
                  std::vector<RewriteRule> rules);
    bool has_pair(const std::string& from, const std::string& to) const;

    /// ConfigError ("unknown language pair") when (from, to) is undefined.
    std::string apply(const std::string& from, const std::string& to,
                      const std::string& text) const;

private:
    std::map<std::pair<std::string, std::string>, std::vector<RewriteRule>> pairs_;
};

/// Apply the lexicon's (from, to) rules to the request text.
std::string mock_translate(const MockLexicon& lexicon, const TranslationRequest& request);

/// Offline provider driven by a MockLexicon. Counts calls and can be scripted
/// to fail, which is how the retry and cache contracts are exercised.
class MockTranslationProvider : public TranslationProvider {
public:
    explicit MockTranslationProvider(MockLexicon lexicon, std::string id = "mock")
        : lexicon_(std::move(lexicon)), id_(std::move(id)) {}

    std::string id() const override { return id_; }
    std::string translate_once(const TranslationRequest& request) override;

    int call_count() const { return calls_.load(); }
    void reset_call_count() { calls_.store(0); }

    /// The next `count` calls throw the given fault before translating.
    void fail_next(int count, ProviderFault fault) {
        scripted_failures_.store(count);
        scripted_fault_ = fault;
    }

    const MockLexicon& lexicon() const { return lexicon_; }

private:
    MockLexicon lexicon_;
    std::string id_;
    std::atomic<int> calls_{0};
    std::atomic<int> scripted_failures_{0};
    ProviderFault scripted_fault_ = ProviderFault::RateLimited;
};

/// Generic HTTP translation endpoint: POST {"text","source","target"} and a
/// 200 {"translation": "..."} response. Vendor-specific services are adapted
/// to this shape behind their own endpoints.
struct HttpProviderConfig {
    std::string provider_id = "http";
    std::string endpoint;             // e.g. "http://host:8080/translate"
    std::string key_env_var;          // empty -> unauthenticated
    std::string key_header = "X-API-Key";
    int timeout_ms = 30000;
    double rps_limit = 0.0;           // enforced by the caller's RateLimiter
};

class HttpTranslationProvider : public TranslationProvider {
public:
    explicit HttpTranslationProvider(HttpProviderConfig config);

    std::string id() const override { return config_.provider_id; }
    std::string translate_once(const TranslationRequest& request) override;

private:
    HttpProviderConfig config_;
};

/// Provider construction from a config section:
///   {"provider_id":"mock","lexicon":path} or
///   {"provider_id":"http","endpoint":...,"key_env_var":...,...}
std::shared_ptr<TranslationProvider> make_provider(const nlohmann::json& section,
                                                   const std::filesystem::path& base_dir);

}  // namespace rtt
