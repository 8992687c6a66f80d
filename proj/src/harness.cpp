#include "rtt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "rtt/digest.hpp"
#include "rtt/unicode.hpp"

namespace rtt {

std::string to_string(PromptKind kind) {
    return kind == PromptKind::Adversarial ? "adversarial" : "benign";
}

PromptKind prompt_kind_from_string(const std::string& s) {
    if (s == "adversarial") return PromptKind::Adversarial;
    if (s == "benign") return PromptKind::Benign;
    throw ConfigError("unknown prompt kind: '" + s + "'");
}

std::vector<PromptRecord> load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open dataset: " + path.string());
    std::vector<PromptRecord> records;
    std::unordered_map<std::string, std::size_t> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (uni::trim(line).empty()) continue;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": invalid JSON: " + e.what());
        }
        PromptRecord record;
        try {
            record.id = doc.at("id").get<std::string>();
            record.text = doc.at("text").get<std::string>();
            record.kind = prompt_kind_from_string(doc.at("kind").get<std::string>());
            record.category = doc.value("category", std::string{});
            if (doc.contains("reference_answer")) {
                const auto& ref = doc.at("reference_answer");
                record.reference_answer =
                    ref.is_string() ? std::stod(ref.get<std::string>()) : ref.get<double>();
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": invalid record: " + e.what());
        }
        if (record.id.empty() || uni::trim(record.text).empty()) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": id and text must be non-empty");
        }
        if (record.kind == PromptKind::Benign && !record.reference_answer) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": benign record '" + record.id + "' lacks reference_answer");
        }
        auto [it, inserted] = seen.emplace(record.id, line_no);
        if (!inserted) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": duplicate id '" + record.id + "' (first seen on line " +
                              std::to_string(it->second) + ")");
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::string to_string(DefenseVariant variant) {
    switch (variant) {
        case DefenseVariant::Identity: return "identity";
        case DefenseVariant::Rtt: return "rtt";
        case DefenseVariant::LlmParaphrase: return "llm_paraphrase";
    }
    return "identity";
}

DefenseApplication apply_defense(const Defense& defense, const std::string& prompt,
                                 std::uint64_t seed) {
    DefenseApplication application;
    switch (defense.variant) {
        case DefenseVariant::Identity: {
            application.defended_text = prompt;
            return application;
        }
        case DefenseVariant::Rtt: {
            if (!defense.registry || !defense.provider) {
                throw ConfigError("rtt defense requires a registry and a provider");
            }
            ChainSpec spec = defense.chain_spec;
            spec.seed = seed;
            const TranslationChain chain = select_chain(spec, *defense.registry);
            const RoundTripResult result = round_trip(*defense.provider, prompt, chain,
                                                      defense.translate_options, defense.cache);
            application.defended_text = result.final_text;
            application.chain = chain;
            return application;
        }
        case DefenseVariant::LlmParaphrase: {
            if (!defense.paraphraser) {
                throw ConfigError("llm_paraphrase defense requires a paraphrase target");
            }
            const std::string request = defense.instruction + "\n\n" + prompt;
            const std::string response =
                complete(*defense.paraphraser, request, defense.paraphrase_options);
            application.defended_text = response;
            if (uni::trim(response) == uni::trim(prompt)) {
                application.notes = "paraphrase-noop";
            }
            return application;
        }
    }
    throw ConfigError("unknown defense variant");
}

nlohmann::json TrialOutcome::to_json() const {
    nlohmann::json doc;
    doc["prompt_id"] = prompt_id;
    doc["set_index"] = set_index;
    doc["defense_id"] = defense_id;
    doc["target_id"] = target_id;
    if (chain) doc["chain"] = *chain;
    doc["defended_text"] = defended_text;
    doc["response"] = response;
    if (defense_notes) doc["defense_notes"] = *defense_notes;
    if (verdict) {
        nlohmann::json v;
        v["kind"] = to_string(verdict->kind);
        if (verdict->matched_pattern) v["matched_pattern"] = *verdict->matched_pattern;
        if (verdict->notes) v["notes"] = *verdict->notes;
        v["ruleset_id"] = verdict->ruleset_id;
        doc["verdict"] = std::move(v);
    }
    if (math_verdict) doc["math_verdict"] = to_string(*math_verdict);
    if (error) doc["error"] = *error;
    return doc;
}

TrialOutcome TrialOutcome::from_json(const nlohmann::json& doc) {
    TrialOutcome outcome;
    outcome.prompt_id = doc.at("prompt_id").get<std::string>();
    outcome.set_index = doc.at("set_index").get<int>();
    outcome.defense_id = doc.at("defense_id").get<std::string>();
    outcome.target_id = doc.at("target_id").get<std::string>();
    if (doc.contains("chain")) outcome.chain = doc.at("chain").get<std::vector<std::string>>();
    outcome.defended_text = doc.at("defended_text").get<std::string>();
    outcome.response = doc.at("response").get<std::string>();
    if (doc.contains("defense_notes")) {
        outcome.defense_notes = doc.at("defense_notes").get<std::string>();
    }
    if (doc.contains("verdict")) {
        const auto& v = doc.at("verdict");
        Verdict verdict;
        verdict.kind = verdict_kind_from_string(v.at("kind").get<std::string>());
        if (v.contains("matched_pattern")) {
            verdict.matched_pattern = v.at("matched_pattern").get<std::string>();
        }
        if (v.contains("notes")) verdict.notes = v.at("notes").get<std::string>();
        verdict.ruleset_id = v.value("ruleset_id", std::string{});
        outcome.verdict = std::move(verdict);
    }
    if (doc.contains("math_verdict")) {
        outcome.math_verdict = doc.at("math_verdict").get<std::string>() == "correct"
                                   ? MathVerdict::Correct
                                   : MathVerdict::Incorrect;
    }
    if (doc.contains("error")) outcome.error = doc.at("error").get<std::string>();
    return outcome;
}

namespace {

nlohmann::json counts_to_json(const SetCounts& counts, bool benign) {
    nlohmann::json doc;
    doc["set_index"] = counts.set_index;
    doc["n_total"] = counts.n_total;
    if (benign) {
        doc["n_correct"] = counts.n_correct;
        doc["n_incorrect"] = counts.n_incorrect;
    } else {
        doc["n_success"] = counts.n_success;
        doc["n_blocked"] = counts.n_blocked;
    }
    doc["n_error"] = counts.n_error;
    return doc;
}

SetCounts counts_from_json(const nlohmann::json& doc) {
    SetCounts counts;
    counts.set_index = doc.at("set_index").get<int>();
    counts.n_total = doc.at("n_total").get<int>();
    counts.n_success = doc.value("n_success", 0);
    counts.n_blocked = doc.value("n_blocked", 0);
    counts.n_correct = doc.value("n_correct", 0);
    counts.n_incorrect = doc.value("n_incorrect", 0);
    counts.n_error = doc.at("n_error").get<int>();
    return counts;
}

}  // namespace

nlohmann::json ExperimentSummary::to_json() const {
    const bool benign = dataset_kind == "benign";
    nlohmann::json doc;
    doc["config_digest"] = config_digest;
    doc["dataset_digest"] = dataset_digest;
    doc["dataset_kind"] = dataset_kind;
    doc["defense_id"] = defense_id;
    doc["target_id"] = target_id;
    doc["judge_id"] = judge_id;
    doc["n_sets"] = n_sets;
    nlohmann::json sets_json = nlohmann::json::array();
    for (const SetCounts& counts : sets) sets_json.push_back(counts_to_json(counts, benign));
    doc["sets"] = std::move(sets_json);
    if (benign) {
        doc["per_set_accuracy"] = per_set_values;
        doc["accuracy"] = value_mean;
        doc["accuracy_std"] = value_std;
    } else {
        doc["per_set_asr"] = per_set_values;
        doc["asr_mean"] = value_mean;
        doc["asr_std"] = value_std;
    }
    return doc;
}

ExperimentSummary ExperimentSummary::from_json(const nlohmann::json& doc) {
    ExperimentSummary summary;
    summary.config_digest = doc.at("config_digest").get<std::string>();
    summary.dataset_digest = doc.at("dataset_digest").get<std::string>();
    summary.dataset_kind = doc.at("dataset_kind").get<std::string>();
    summary.defense_id = doc.at("defense_id").get<std::string>();
    summary.target_id = doc.at("target_id").get<std::string>();
    summary.judge_id = doc.at("judge_id").get<std::string>();
    summary.n_sets = doc.at("n_sets").get<int>();
    for (const auto& entry : doc.at("sets")) summary.sets.push_back(counts_from_json(entry));
    const bool benign = summary.dataset_kind == "benign";
    summary.per_set_values =
        doc.at(benign ? "per_set_accuracy" : "per_set_asr").get<std::vector<double>>();
    summary.value_mean = doc.at(benign ? "accuracy" : "asr_mean").get<double>();
    summary.value_std = doc.at(benign ? "accuracy_std" : "asr_std").get<double>();
    if (benign) summary.accuracy = summary.value_mean;
    return summary;
}

ExperimentSummary ExperimentSummary::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open summary: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed summary " + path.string() + ": " + e.what());
    }
    try {
        return from_json(doc);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("summary " + path.string() + " missing fields: " + e.what());
    }
}

std::string JudgeSpec::id() const {
    if (kind == "refusal") return ruleset ? ruleset->id() : "refusal";
    std::ostringstream out;
    out << "math(tol=" << tol << ")";
    return out.str();
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed config " + path.string() + ": " + e.what());
    }

    ExperimentConfig config;
    config.base_dir = path.has_parent_path() ? path.parent_path() : ".";
    config.raw = doc;
    try {
        config.dataset_path = doc.at("dataset").get<std::string>();
        config.registry_ref = doc.value("registry", std::string{"builtin"});
        config.defense_section = doc.at("defense");
        config.target_section = doc.at("target");
        config.judge_section = doc.value("judge", nlohmann::json{{"kind", "refusal"}});
        config.n_sets = doc.value("n_sets", 1);
        config.base_seed = doc.value("base_seed", std::uint64_t{0});
        config.parallelism = doc.value("parallelism", 1);
        config.out_dir = doc.value("out_dir", std::string{"out"});
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path.string() + " missing fields: " + e.what());
    }
    if (config.n_sets < 1) throw ConfigError("n_sets must be >= 1");
    if (config.parallelism < 1) throw ConfigError("parallelism must be >= 1");
    if (config.dataset_path.is_relative()) {
        config.dataset_path = config.base_dir / config.dataset_path;
    }
    if (config.out_dir.is_relative()) config.out_dir = config.base_dir / config.out_dir;
    return config;
}

std::string ExperimentConfig::digest() const {
    nlohmann::json doc = raw;
    doc.erase("parallelism");
    doc.erase("out_dir");
    return sha256_hex(doc.dump());
}

namespace {

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file for digest: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return sha256_hex(buffer.str());
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& path) {
    return path.is_relative() ? base / path : path;
}

Defense build_defense(const nlohmann::json& section, const std::filesystem::path& base_dir,
                      std::shared_ptr<const LanguageRegistry> registry) {
    if (!section.is_object() || !section.contains("variant")) {
        throw ConfigError("defense config must be an object with a variant");
    }
    const auto variant = section.at("variant").get<std::string>();
    Defense defense;
    if (variant == "identity") {
        defense.variant = DefenseVariant::Identity;
        defense.id = section.value("id", std::string{"identity"});
        return defense;
    }
    if (variant == "rtt") {
        defense.variant = DefenseVariant::Rtt;
        const auto chain_code = section.value("chain", std::string{"3d"});
        const ChainSpec parsed = parse_chain_code(chain_code);
        defense.chain_spec.length = parsed.length;
        defense.chain_spec.mode = parsed.mode;
        defense.chain_spec.source = section.value("source", std::string{"en"});
        defense.id = section.value("id", chain_name(defense.chain_spec));
        defense.registry = std::move(registry);
        if (!section.contains("provider")) {
            throw ConfigError("rtt defense requires a provider section");
        }
        defense.provider = make_provider(section.at("provider"), base_dir);
        const double rps = section.at("provider").value("rps_limit", 0.0);
        if (rps > 0) defense.translate_options.limiter = std::make_shared<RateLimiter>(rps);
        if (section.contains("cache")) {
            defense.cache = TranslationCache::open(
                resolve(base_dir, section.at("cache").get<std::string>()));
        }
        return defense;
    }
    if (variant == "llm_paraphrase") {
        defense.variant = DefenseVariant::LlmParaphrase;
        defense.id = section.value("id", std::string{"llm_paraphrase"});
        if (!section.contains("target")) {
            throw ConfigError("llm_paraphrase defense requires a target section");
        }
        defense.paraphraser = make_target(section.at("target"), base_dir);
        defense.instruction = section.value(
            "instruction",
            std::string{"Paraphrase the following text, changing words to their synonyms."});
        const double rps = section.at("target").value("rps_limit", 0.0);
        if (rps > 0) defense.paraphrase_options.limiter = std::make_shared<RateLimiter>(rps);
        return defense;
    }
    throw ConfigError("unknown defense variant: '" + variant + "'");
}

JudgeSpec build_judge(const nlohmann::json& section, const std::filesystem::path& base_dir) {
    JudgeSpec judge;
    judge.kind = section.value("kind", std::string{"refusal"});
    if (judge.kind == "refusal") {
        if (!section.contains("rules")) {
            throw ConfigError("refusal judge requires a 'rules' path");
        }
        judge.ruleset =
            RefusalRuleset::from_file(resolve(base_dir, section.at("rules").get<std::string>()));
        return judge;
    }
    if (judge.kind == "math") {
        judge.tol = section.value("tol", 1e-6);
        if (judge.tol < 0) throw ConfigError("math judge tolerance must be >= 0");
        return judge;
    }
    throw ConfigError("unknown judge kind: '" + judge.kind + "'");
}

}  // namespace

Experiment build_experiment(const ExperimentConfig& config) {
    Experiment experiment;
    experiment.config = config;
    experiment.dataset = load_dataset(config.dataset_path);
    if (experiment.dataset.empty()) {
        throw ConfigError("dataset is empty: " + config.dataset_path.string());
    }
    experiment.dataset_digest = file_digest(config.dataset_path);

    const PromptKind kind = experiment.dataset.front().kind;
    for (const PromptRecord& record : experiment.dataset) {
        if (record.kind != kind) {
            throw ConfigError("dataset mixes adversarial and benign records; run them separately");
        }
    }

    if (config.registry_ref == "builtin") {
        experiment.registry = std::make_shared<LanguageRegistry>(LanguageRegistry::builtin());
    } else {
        experiment.registry = std::make_shared<LanguageRegistry>(
            LanguageRegistry::load(resolve(config.base_dir, config.registry_ref).string()));
    }

    experiment.defense =
        build_defense(config.defense_section, config.base_dir, experiment.registry);
    experiment.target = make_target(config.target_section, config.base_dir);
    const double rps = config.target_section.value("rps_limit", 0.0);
    if (rps > 0) experiment.target_options.limiter = std::make_shared<RateLimiter>(rps);
    experiment.judge = build_judge(config.judge_section, config.base_dir);

    if (kind == PromptKind::Benign && experiment.judge.kind != "math") {
        throw ConfigError("benign dataset requires the math judge");
    }
    if (kind == PromptKind::Adversarial && experiment.judge.kind != "refusal") {
        throw ConfigError("adversarial dataset requires the refusal judge");
    }
    return experiment;
}

ExperimentResult run_experiment(const Experiment& experiment) {
    const int n_sets = experiment.config.n_sets;
    const std::size_t n_prompts = experiment.dataset.size();
    const std::size_t n_trials = static_cast<std::size_t>(n_sets) * n_prompts;
    const bool benign = experiment.dataset.front().kind == PromptKind::Benign;

    std::vector<TrialOutcome> outcomes(n_trials);

    auto run_trial = [&](std::size_t flat_index) {
        const int set_index = static_cast<int>(flat_index / n_prompts);
        const PromptRecord& record = experiment.dataset[flat_index % n_prompts];
        const std::uint64_t seed = set_seed(experiment.config.base_seed, set_index);

        TrialOutcome outcome;
        outcome.prompt_id = record.id;
        outcome.set_index = set_index;
        outcome.defense_id = experiment.defense.id;
        outcome.target_id = experiment.target->id();
        try {
            DefenseApplication application =
                apply_defense(experiment.defense, record.text, seed);
            outcome.defended_text = application.defended_text;
            if (application.chain) outcome.chain = application.chain->intermediate_codes();
            outcome.defense_notes = application.notes;
            outcome.response = complete(*experiment.target, outcome.defended_text,
                                        experiment.target_options);
            if (benign) {
                outcome.math_verdict = judge_math(outcome.response, *record.reference_answer,
                                                  experiment.judge.tol);
            } else {
                outcome.verdict = judge_refusal(outcome.response, *experiment.judge.ruleset);
            }
        } catch (const std::exception& e) {
            outcome.verdict.reset();
            outcome.math_verdict.reset();
            outcome.error = e.what();
        }
        outcomes[flat_index] = std::move(outcome);
    };

    const int parallelism = std::max(1, experiment.config.parallelism);
    if (parallelism == 1) {
        for (std::size_t i = 0; i < n_trials; ++i) run_trial(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        const int n_workers = std::min<std::size_t>(parallelism, n_trials);
        workers.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n_trials; i = next.fetch_add(1)) {
                    run_trial(i);
                }
            });
        }
        for (std::thread& worker : workers) worker.join();
    }

    ExperimentSummary summary;
    summary.config_digest = experiment.config.digest();
    summary.dataset_digest = experiment.dataset_digest;
    summary.dataset_kind = benign ? "benign" : "adversarial";
    summary.defense_id = experiment.defense.id;
    summary.target_id = experiment.target->id();
    summary.judge_id = experiment.judge.id();
    summary.n_sets = n_sets;

    for (int s = 0; s < n_sets; ++s) {
        SetCounts counts;
        counts.set_index = s;
        for (std::size_t p = 0; p < n_prompts; ++p) {
            const TrialOutcome& outcome = outcomes[static_cast<std::size_t>(s) * n_prompts + p];
            ++counts.n_total;
            if (outcome.error) {
                ++counts.n_error;
            } else if (benign) {
                (*outcome.math_verdict == MathVerdict::Correct) ? ++counts.n_correct
                                                                : ++counts.n_incorrect;
            } else {
                (outcome.verdict->kind == VerdictKind::AttackSuccess) ? ++counts.n_success
                                                                      : ++counts.n_blocked;
            }
        }
        const int judged = counts.n_total - counts.n_error;
        if (judged == 0) {
            throw ConfigError("all trials errored in set " + std::to_string(s));
        }
        const double value = benign ? static_cast<double>(counts.n_correct) / judged
                                    : asr(counts.n_success, counts.n_blocked);
        summary.sets.push_back(counts);
        summary.per_set_values.push_back(value);
    }
    const auto [mean, std_dev] = mean_std(summary.per_set_values);
    summary.value_mean = mean;
    summary.value_std = std_dev;
    if (benign) summary.accuracy = mean;

    return {std::move(summary), std::move(outcomes)};
}

double asr(int n_success, int n_blocked) {
    if (n_success < 0 || n_blocked < 0) throw ConfigError("negative outcome counts");
    const int judged = n_success + n_blocked;
    if (judged == 0) throw ConfigError("no non-error outcomes to compute ASR over");
    return static_cast<double>(n_success) / judged;
}

double asr(const std::vector<TrialOutcome>& outcomes) {
    int n_success = 0;
    int n_blocked = 0;
    for (const TrialOutcome& outcome : outcomes) {
        if (outcome.error) continue;
        if (!outcome.verdict) {
            throw ConfigError("outcome for prompt '" + outcome.prompt_id +
                              "' carries no attack verdict");
        }
        (outcome.verdict->kind == VerdictKind::AttackSuccess) ? ++n_success : ++n_blocked;
    }
    return asr(n_success, n_blocked);
}

Mitigation mitigation(double asr_baseline, double asr_defended) {
    Mitigation result;
    result.asr_drop = asr_baseline - asr_defended;
    if (asr_baseline > 0) {
        result.mitigation_ratio = (asr_baseline - asr_defended) / asr_baseline;
    }
    return result;
}

Mitigation mitigation(const ExperimentSummary& baseline, const ExperimentSummary& defended) {
    if (baseline.dataset_digest != defended.dataset_digest) {
        throw ConfigError("summaries come from different datasets");
    }
    if (baseline.target_id != defended.target_id) {
        throw ConfigError("summaries come from different targets");
    }
    if (baseline.dataset_kind != "adversarial" || defended.dataset_kind != "adversarial") {
        throw ConfigError("mitigation applies to adversarial summaries");
    }
    return mitigation(baseline.value_mean, defended.value_mean);
}

std::pair<double, double> mean_std(const std::vector<double>& values) {
    if (values.empty()) throw ConfigError("mean_std requires at least one value");
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    if (values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

BenignReport benign_accuracy(int correct_baseline, int total_baseline, int correct_defended,
                             int total_defended) {
    if (total_baseline <= 0 || total_defended <= 0) {
        throw ConfigError("benign accuracy requires positive totals");
    }
    BenignReport report;
    report.accuracy_baseline = static_cast<double>(correct_baseline) / total_baseline;
    report.accuracy_defended = static_cast<double>(correct_defended) / total_defended;
    if (report.accuracy_baseline <= 0) {
        throw ConfigError("baseline accuracy is zero; preservation undefined");
    }
    report.preservation_ratio = report.accuracy_defended / report.accuracy_baseline;
    return report;
}

double benign_accuracy(const std::vector<TrialOutcome>& outcomes) {
    int n_correct = 0;
    int n_judged = 0;
    for (const TrialOutcome& outcome : outcomes) {
        if (outcome.error) continue;
        if (outcome.verdict) {
            throw ConfigError("outcome for prompt '" + outcome.prompt_id +
                              "' is adversarial, not benign math");
        }
        if (!outcome.math_verdict) {
            throw ConfigError("outcome for prompt '" + outcome.prompt_id +
                              "' carries no math verdict");
        }
        ++n_judged;
        if (*outcome.math_verdict == MathVerdict::Correct) ++n_correct;
    }
    if (n_judged == 0) throw ConfigError("no non-error outcomes to compute accuracy over");
    return static_cast<double>(n_correct) / n_judged;
}

std::vector<SweepRow> sweep_chain_length(const ExperimentConfig& base,
                                         const std::vector<int>& x_values,
                                         const std::vector<ChainMode>& modes,
                                         const WordList& wordlist) {
    if (x_values.empty()) throw ConfigError("sweep requires at least one x value");
    if (modes.empty()) throw ConfigError("sweep requires at least one mode");

    std::vector<SweepRow> rows;
    for (int x : x_values) {
        for (ChainMode mode : modes) {
            SweepRow row;
            row.x = x;
            row.mode = mode;
            try {
                if (x < 1) throw ConfigError("chain length must be >= 1");
                ExperimentConfig config = base;
                nlohmann::json defense = base.defense_section;
                defense["chain"] =
                    std::to_string(x) + (mode == ChainMode::Random ? "r" : "d");
                defense.erase("id");  // derive RTTxm names per row
                config.defense_section = defense;
                config.raw["defense"] = defense;

                Experiment experiment = build_experiment(config);
                if (experiment.defense.variant != DefenseVariant::Rtt) {
                    throw ConfigError("sweep requires an rtt defense");
                }
                ExperimentResult result = run_experiment(experiment);
                row.asr_mean = result.summary.value_mean;
                row.asr_std = result.summary.value_std;

                std::vector<std::string> before;
                std::vector<std::string> after;
                for (std::size_t p = 0; p < experiment.dataset.size(); ++p) {
                    const TrialOutcome& outcome = result.outcomes[p];  // set 0
                    if (outcome.error) continue;
                    before.push_back(experiment.dataset[p].text);
                    after.push_back(outcome.defended_text);
                }
                const GeneralizationReport report =
                    generalization_report(before, after, wordlist);
                row.len_ratio = report.len_ratio;
                row.uncommon_ratio = report.uncommon_ratio;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

const char* const kSweepCsvHeader = "x,mode,asr_mean,asr_std,len_ratio,uncommon_ratio,error";

namespace {

std::string csv_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write sweep CSV: " + path.string());
    out << kSweepCsvHeader << '\n';
    for (const SweepRow& row : rows) {
        out << row.x << ',' << (row.mode == ChainMode::Random ? 'r' : 'd') << ',';
        if (row.error.empty()) {
            out << csv_number(row.asr_mean) << ',' << csv_number(row.asr_std) << ','
                << csv_number(row.len_ratio) << ',' << csv_number(row.uncommon_ratio) << ',';
        } else {
            out << ",,,," << csv_quote(row.error);
        }
        out << '\n';
    }
    if (!out) throw ConfigError("failed writing sweep CSV: " + path.string());
}

void emit_reports(const ExperimentSummary& summary, const std::vector<TrialOutcome>& outcomes,
                  const std::filesystem::path& out_dir) {
    if (outcomes.empty()) throw ConfigError("refusing to emit reports for an empty experiment");
    std::filesystem::create_directories(out_dir);

    {
        std::ofstream out(out_dir / "outcomes.jsonl");
        if (!out) throw ConfigError("cannot write " + (out_dir / "outcomes.jsonl").string());
        for (const TrialOutcome& outcome : outcomes) out << outcome.to_json().dump() << '\n';
    }
    {
        std::ofstream out(out_dir / "summary.json");
        if (!out) throw ConfigError("cannot write " + (out_dir / "summary.json").string());
        out << summary.to_json().dump(2) << '\n';
    }
    {
        std::ofstream out(out_dir / "plot.csv");
        if (!out) throw ConfigError("cannot write " + (out_dir / "plot.csv").string());
        out << "x_or_config,asr_mean,asr_std\n";
        out << csv_quote(summary.defense_id) << ',' << csv_number(summary.value_mean) << ','
            << csv_number(summary.value_std) << '\n';
    }
}

std::vector<TrialOutcome> load_outcomes_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open outcomes: " + path.string());
    std::vector<TrialOutcome> outcomes;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (uni::trim(line).empty()) continue;
        try {
            outcomes.push_back(TrialOutcome::from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": invalid outcome: " + e.what());
        }
    }
    return outcomes;
}

}  // namespace rtt
