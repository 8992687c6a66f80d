#include "rtt/targets.hpp"

#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "rtt/digest.hpp"
#include "rtt/unicode.hpp"

namespace rtt {

MockTargetRules MockTargetRules::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open mock target rules: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed mock target rules " + path.string() + ": " + e.what());
    }
    return from_json(doc);
}

MockTargetRules MockTargetRules::from_json(const nlohmann::json& doc) {
    MockTargetRules rules;
    if (!doc.is_object()) throw ConfigError("mock target rules must be a JSON object");
    for (const auto& term : doc.value("harmful_terms", nlohmann::json::array())) {
        rules.harmful_terms.push_back(term.get<std::string>());
    }
    rules.refusal_template = doc.value("refusal_template", std::string{});
    rules.compliance_template = doc.value("compliance_template", std::string{});
    if (rules.refusal_template.empty() || rules.compliance_template.empty()) {
        throw ConfigError("mock target rules require refusal_template and compliance_template");
    }
    if (doc.contains("answer_map")) {
        for (const auto& [key, value] : doc.at("answer_map").items()) {
            rules.answer_map.emplace(key, value.get<std::string>());
        }
    }
    return rules;
}

std::string prompt_digest(const std::string& prompt) {
    return sha256_hex(uni::normalize_for_key(prompt));
}

std::string mock_respond(const MockTargetRules& rules, const std::string& prompt) {
    for (const std::string& term : rules.harmful_terms) {
        if (uni::contains_ci(prompt, term)) return rules.refusal_template;
    }
    const auto it = rules.answer_map.find(prompt_digest(prompt));
    if (it != rules.answer_map.end()) return it->second;
    return rules.compliance_template;
}

std::string complete(Target& target, const std::string& prompt, const TargetOptions& options) {
    return with_retries(options.retry, [&] {
        if (options.limiter) options.limiter->acquire();
        return target.complete_once(prompt);
    });
}

std::string MockTarget::complete_once(const std::string& prompt) {
    calls_.fetch_add(1);
    return mock_respond(rules_, prompt);
}

HttpChatTarget::HttpChatTarget(TargetSpec spec) : spec_(std::move(spec)) {
    if (spec_.endpoint.empty()) {
        throw ConfigError("remote target '" + spec_.id + "' requires an endpoint");
    }
    if (spec_.temperature < 0) {
        throw ConfigError("target '" + spec_.id + "' temperature must be >= 0");
    }
}

std::string HttpChatTarget::complete_once(const std::string& prompt) {
    const char* key = nullptr;
    if (!spec_.key_env_var.empty()) {
        key = std::getenv(spec_.key_env_var.c_str());
        if (key == nullptr || *key == '\0') {
            throw ProviderError(ProviderFault::AuthFailure,
                                "missing credentials: environment variable '" +
                                    spec_.key_env_var + "' is not set");
        }
    }

    const auto scheme_end = spec_.endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("target endpoint must include a scheme: " + spec_.endpoint);
    }
    const auto path_start = spec_.endpoint.find('/', scheme_end + 3);
    const std::string base =
        path_start == std::string::npos ? spec_.endpoint : spec_.endpoint.substr(0, path_start);
    const std::string path =
        path_start == std::string::npos ? "/" : spec_.endpoint.substr(path_start);

    httplib::Client client(base);
    client.set_connection_timeout(0, spec_.timeout_ms * 1000LL);
    client.set_read_timeout(0, spec_.timeout_ms * 1000LL);
    client.set_write_timeout(0, spec_.timeout_ms * 1000LL);

    httplib::Headers headers;
    if (key != nullptr) headers.emplace("Authorization", std::string("Bearer ") + key);

    nlohmann::json body;
    body["model"] = spec_.model_name;
    nlohmann::json messages = nlohmann::json::array();
    if (spec_.system_prompt) {
        messages.push_back({{"role", "system"}, {"content", *spec_.system_prompt}});
    }
    messages.push_back({{"role", "user"}, {"content", prompt}});
    body["messages"] = std::move(messages);
    body["temperature"] = spec_.temperature;

    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) {
        throw ProviderError(ProviderFault::Unavailable,
                            "connection to " + spec_.endpoint + " failed: " +
                                httplib::to_string(res.error()));
    }
    switch (res->status) {
        case 200:
            break;
        case 401:
        case 403:
            throw ProviderError(ProviderFault::AuthFailure,
                                "target " + spec_.id + " rejected credentials (status " +
                                    std::to_string(res->status) + ")");
        case 429:
            throw ProviderError(ProviderFault::RateLimited,
                                "target " + spec_.id + " rate limit");
        default:
            throw ProviderError(ProviderFault::Unavailable,
                                "unexpected status " + std::to_string(res->status) +
                                    " from target " + spec_.id);
    }
    try {
        const auto doc = nlohmann::json::parse(res->body);
        if (doc.contains("content") && doc.at("content").is_string()) {
            return doc.at("content").get<std::string>();
        }
        // OpenAI-style envelope.
        return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
        throw ProviderError(ProviderFault::Unavailable,
                            "malformed response body from target " + spec_.id);
    }
}

std::shared_ptr<Target> make_target(const nlohmann::json& section,
                                    const std::filesystem::path& base_dir) {
    if (!section.is_object() || !section.contains("id")) {
        throw ConfigError("target config must be an object with an id");
    }
    const auto id = section.at("id").get<std::string>();
    if (id == "mock") {
        if (!section.contains("rules")) throw ConfigError("mock target requires a 'rules' path");
        std::filesystem::path rules_path = section.at("rules").get<std::string>();
        if (rules_path.is_relative()) rules_path = base_dir / rules_path;
        return std::make_shared<MockTarget>(MockTargetRules::from_file(rules_path));
    }
    TargetSpec spec;
    spec.id = id;
    spec.endpoint = section.value("endpoint", std::string{});
    spec.model_name = section.value("model_name", std::string{});
    spec.key_env_var = section.value("key_env_var", std::string{});
    if (section.contains("system_prompt")) {
        spec.system_prompt = section.at("system_prompt").get<std::string>();
    }
    spec.temperature = section.value("temperature", 0.0);
    spec.rps_limit = section.value("rps_limit", 0.0);
    spec.timeout_ms = section.value("timeout_ms", 60000);
    return std::make_shared<HttpChatTarget>(std::move(spec));
}

}  // namespace rtt
