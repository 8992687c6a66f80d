#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rtt/errors.hpp"
#include "rtt/retry.hpp"

namespace rtt {

/// One defended model under test.
struct TargetSpec {
    std::string id;  // "mock" or a remote id like "vicuna", "gpt4"
    std::string endpoint;
    std::string model_name;
    std::string key_env_var;  // secrets come from the environment, never config
    std::optional<std::string> system_prompt;
    double temperature = 0.0;
    double rps_limit = 0.0;
    int timeout_ms = 60000;
    std::string rules_path;  // mock only
};

/// Deterministic rule table emulating a safety-trained chat model: refuse
/// when a canonical harmful phrase is visible, answer canned math prompts by
/// digest, comply otherwise.
struct MockTargetRules {
    std::vector<std::string> harmful_terms;  // matched case-insensitively
    std::string refusal_template;
    std::string compliance_template;
    std::map<std::string, std::string> answer_map;  // prompt digest -> canned answer

    static MockTargetRules from_file(const std::filesystem::path& path);
    static MockTargetRules from_json(const nlohmann::json& doc);
};

/// SHA-256 of the NFC-normalized, trimmed prompt; the answer_map key.
std::string prompt_digest(const std::string& prompt);

/// Pure: refusal_template iff a harmful term occurs (ASCII case-insensitive),
/// else the answer_map entry for the prompt digest, else compliance_template.
std::string mock_respond(const MockTargetRules& rules, const std::string& prompt);

class Target {
public:
    virtual ~Target() = default;
    virtual std::string id() const = 0;
    /// One request, no retries; retries are layered on by complete().
    virtual std::string complete_once(const std::string& prompt) = 0;
};

struct TargetOptions {
    RetryPolicy retry{};
    std::shared_ptr<RateLimiter> limiter;
};

/// Throttled, retry-wrapped completion (the shared retry policy; nothing
/// vendor-specific).
std::string complete(Target& target, const std::string& prompt,
                     const TargetOptions& options = {});

class MockTarget : public Target {
public:
    explicit MockTarget(MockTargetRules rules, std::string id = "mock")
        : rules_(std::move(rules)), id_(std::move(id)) {}

    std::string id() const override { return id_; }
    std::string complete_once(const std::string& prompt) override;

    int call_count() const { return calls_.load(); }
    const MockTargetRules& rules() const { return rules_; }

private:
    MockTargetRules rules_;
    std::string id_;
    std::atomic<int> calls_{0};
};

/// Generic chat-completion client: POST {model, messages, temperature} and
/// read the response text. Missing credentials raise AuthFailure before any
/// network traffic.
class HttpChatTarget : public Target {
public:
    explicit HttpChatTarget(TargetSpec spec);

    std::string id() const override { return spec_.id; }
    std::string complete_once(const std::string& prompt) override;

    const TargetSpec& spec() const { return spec_; }

private:
    TargetSpec spec_;
};

/// Target construction from a config section:
///   {"id":"mock","rules":path} or
///   {"id":...,"endpoint":...,"model_name":...,"key_env_var":...,...}
std::shared_ptr<Target> make_target(const nlohmann::json& section,
                                    const std::filesystem::path& base_dir);

}  // namespace rtt
