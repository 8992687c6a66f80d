#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rtt/errors.hpp"
#include "rtt/judging.hpp"
#include "rtt/prng.hpp"
#include "rtt/targets.hpp"
#include "rtt/taxonomy.hpp"
#include "rtt/textmetrics.hpp"
#include "rtt/translation.hpp"

namespace rtt {

enum class PromptKind { Adversarial, Benign };

std::string to_string(PromptKind kind);
PromptKind prompt_kind_from_string(const std::string& s);

struct PromptRecord {
    std::string id;
    std::string text;
    PromptKind kind = PromptKind::Adversarial;
    std::string category;  // e.g. "pair", "gcg", "gsm8k"; empty when absent
    std::optional<double> reference_answer;  // required for benign records
};

/// JSONL, one record per line: {"id","text","kind","category"?,"reference_answer"?}.
/// Errors carry the offending line number; duplicate ids and benign records
/// without a reference answer are rejected.
std::vector<PromptRecord> load_dataset(const std::filesystem::path& path);

enum class DefenseVariant { Identity, Rtt, LlmParaphrase };

std::string to_string(DefenseVariant variant);

struct Defense {
    DefenseVariant variant = DefenseVariant::Identity;
    std::string id = "identity";

    // Rtt only.
    ChainSpec chain_spec;
    std::shared_ptr<const LanguageRegistry> registry;
    std::shared_ptr<TranslationProvider> provider;
    std::shared_ptr<TranslationCache> cache;  // optional
    TranslateOptions translate_options;

    // LlmParaphrase only.
    std::shared_ptr<Target> paraphraser;
    std::string instruction;
    TargetOptions paraphrase_options;
};

struct DefenseApplication {
    std::string defended_text;
    std::optional<TranslationChain> chain;  // present iff the defense is Rtt
    std::optional<std::string> notes;       // e.g. "paraphrase-noop"
};

/// Identity echoes the prompt. Rtt selects the set's chain from
/// (chain_spec, set_seed) and round-trips the prompt. LlmParaphrase asks the
/// paraphrase target and flags output identical to its input.
DefenseApplication apply_defense(const Defense& defense, const std::string& prompt,
                                 std::uint64_t set_seed);

/// Seed for set s. Mixing (rather than adding) keeps neighbouring sets'
/// streams unrelated; the +1 keeps set 0 distinct from the base seed itself.
inline std::uint64_t set_seed(std::uint64_t base_seed, int set_index) {
    return base_seed ^ mix64(static_cast<std::uint64_t>(set_index) + 1);
}

struct TrialOutcome {
    std::string prompt_id;
    int set_index = 0;
    std::string defense_id;
    std::string target_id;
    std::optional<std::vector<std::string>> chain;  // intermediate codes, Rtt only
    std::string defended_text;
    std::string response;
    std::optional<std::string> defense_notes;
    std::optional<Verdict> verdict;            // adversarial, absent on error
    std::optional<MathVerdict> math_verdict;   // benign, absent on error
    std::optional<std::string> error;

    nlohmann::json to_json() const;
    static TrialOutcome from_json(const nlohmann::json& doc);
};

struct SetCounts {
    int set_index = 0;
    int n_total = 0;
    int n_success = 0;    // adversarial
    int n_blocked = 0;    // adversarial
    int n_correct = 0;    // benign
    int n_incorrect = 0;  // benign
    int n_error = 0;
};

struct ExperimentSummary {
    std::string config_digest;   // excludes parallelism and out_dir
    std::string dataset_digest;  // SHA-256 of the dataset file bytes
    std::string dataset_kind;    // "adversarial" | "benign"
    std::string defense_id;
    std::string target_id;
    std::string judge_id;
    int n_sets = 0;
    std::vector<SetCounts> sets;
    std::vector<double> per_set_values;  // ASR (adversarial) or accuracy (benign)
    double value_mean = 0.0;
    double value_std = 0.0;
    std::optional<double> accuracy;  // benign runs: alias of value_mean

    nlohmann::json to_json() const;
    static ExperimentSummary from_json(const nlohmann::json& doc);
    static ExperimentSummary load(const std::filesystem::path& path);
};

struct JudgeSpec {
    std::string kind = "refusal";  // "refusal" | "math"
    std::optional<RefusalRuleset> ruleset;  // refusal only
    double tol = 1e-6;                      // math only
    std::string id() const;
};

/// Parsed, path-resolved experiment configuration. All relative paths are
/// resolved against the config file's directory.
struct ExperimentConfig {
    std::filesystem::path base_dir;
    nlohmann::json raw;  // effective config (after CLI overrides)
    std::filesystem::path dataset_path;
    std::string registry_ref = "builtin";  // "builtin" or a path
    nlohmann::json defense_section;
    nlohmann::json target_section;
    nlohmann::json judge_section;
    int n_sets = 1;
    std::uint64_t base_seed = 0;
    int parallelism = 1;
    std::filesystem::path out_dir;

    static ExperimentConfig load(const std::filesystem::path& path);
    /// SHA-256 of the effective config with parallelism and out_dir removed,
    /// so execution-shape knobs never change result identity.
    std::string digest() const;
};

/// Fully constructed experiment: dataset, defense stack, target and judge.
struct Experiment {
    ExperimentConfig config;
    std::vector<PromptRecord> dataset;
    std::string dataset_digest;
    std::shared_ptr<const LanguageRegistry> registry;
    Defense defense;
    std::shared_ptr<Target> target;
    TargetOptions target_options;
    JudgeSpec judge;
};

Experiment build_experiment(const ExperimentConfig& config);

struct ExperimentResult {
    ExperimentSummary summary;
    std::vector<TrialOutcome> outcomes;
};

/// Runs n_sets passes over the dataset. Per set: derive set_seed, defend each
/// prompt, query the target, judge the response. Trial errors are recorded on
/// the outcome, never fatal. Outcomes land in preallocated slots so any
/// parallelism level yields identical bytes.
ExperimentResult run_experiment(const Experiment& experiment);

/// Attack success rate with errors excluded from both sides.
double asr(int n_success, int n_blocked);
double asr(const std::vector<TrialOutcome>& outcomes);

struct Mitigation {
    std::optional<double> mitigation_ratio;  // absent when the baseline ASR is 0
    double asr_drop = 0.0;
};

/// Both readings of a defense's effect: the relative ratio (b - a) / b and
/// the absolute drop b - a.
Mitigation mitigation(double asr_baseline, double asr_defended);
/// Summary form; rejects summaries from different datasets or targets.
Mitigation mitigation(const ExperimentSummary& baseline, const ExperimentSummary& defended);

/// Arithmetic mean and sample (n-1) standard deviation; a single value has
/// std 0. ConfigError on empty input.
std::pair<double, double> mean_std(const std::vector<double>& values);

/// Reference results reported for this defense at scale, against hosted chat
/// models with a commercial translation service behind the round trip. They
/// need paid attack corpora and APIs, so nothing here recomputes them; they
/// are shipped as documented constants for comparison and for the formula
/// tests.
namespace reference {
/// ASR of a social-engineered attack corpus with no defense (49/50).
inline constexpr double kAsrUndefended = 0.98;
/// Same corpus behind a single-intermediate round trip (26/50).
inline constexpr double kAsrRtt1 = 0.52;
/// Same corpus behind three distinct-family intermediates (13/50).
inline constexpr double kAsrRtt3d = 0.26;
/// Benign-task accuracy retained under the defense: 435/500 baseline
/// correct, 357/500 defended, 357/435 = 0.8207 to four decimals.
inline constexpr double kBenignPreservation = 0.8207;
}  // namespace reference

struct BenignReport {
    double accuracy_baseline = 0.0;
    double accuracy_defended = 0.0;
    double preservation_ratio = 0.0;
};

BenignReport benign_accuracy(int correct_baseline, int total_baseline, int correct_defended,
                             int total_defended);
/// Accuracy over math-judged outcomes, errors excluded; rejects outcome lists
/// that mix adversarial verdicts in.
double benign_accuracy(const std::vector<TrialOutcome>& outcomes);

struct SweepRow {
    int x = 0;
    ChainMode mode = ChainMode::DistinctFamily;
    double asr_mean = 0.0;
    double asr_std = 0.0;
    double len_ratio = 0.0;
    double uncommon_ratio = 0.0;
    std::string error;  // non-empty when this row failed
};

/// One run_experiment per (x, mode) against the base config's stack, with
/// generalization metrics computed over set 0's defended texts. A failing
/// row records its error and the sweep continues.
std::vector<SweepRow> sweep_chain_length(const ExperimentConfig& base,
                                         const std::vector<int>& x_values,
                                         const std::vector<ChainMode>& modes,
                                         const WordList& wordlist);

extern const char* const kSweepCsvHeader;  // "x,mode,asr_mean,asr_std,len_ratio,uncommon_ratio,error"

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

/// Writes outcomes.jsonl, summary.json and plot.csv into out_dir. Output is
/// byte-deterministic; wall-clock timing goes to timing.log, which is the
/// only non-deterministic artifact.
void emit_reports(const ExperimentSummary& summary, const std::vector<TrialOutcome>& outcomes,
                  const std::filesystem::path& out_dir);

std::vector<TrialOutcome> load_outcomes_jsonl(const std::filesystem::path& path);

}  // namespace rtt
