#include "rtt/harness.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "rtt/errors.hpp"
#include "rtt/prng.hpp"

using namespace rtt;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = fs::path(RTT_SOURCE_DIR) / "fixtures";

fs::path tmp_dir(const std::string& name) {
    const fs::path dir = fs::path(RTT_BINARY_DIR) / "test_tmp" / "harness" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_tmp(const std::string& name, const std::string& content) {
    const fs::path dir = fs::path(RTT_BINARY_DIR) / "test_tmp" / "harness";
    fs::create_directories(dir);
    const fs::path path = dir / name;
    std::ofstream(path) << content;
    return path;
}

std::string dump_outcomes(const std::vector<TrialOutcome>& outcomes) {
    std::string bytes;
    for (const TrialOutcome& outcome : outcomes) {
        bytes += outcome.to_json().dump();
        bytes += '\n';
    }
    return bytes;
}

}  // namespace

TEST_CASE("datasets load with kinds, categories and references") {
    const auto adversarial = load_dataset(kFixtures / "adversarial_prompts.jsonl");
    REQUIRE(adversarial.size() == 24);
    CHECK(adversarial.front().id == "a01");
    CHECK(adversarial.front().kind == PromptKind::Adversarial);
    CHECK_FALSE(adversarial.front().category.empty());
    CHECK_FALSE(adversarial.front().reference_answer.has_value());

    const auto benign = load_dataset(kFixtures / "benign_math.jsonl");
    REQUIRE(benign.size() == 10);
    for (const PromptRecord& record : benign) {
        CHECK(record.kind == PromptKind::Benign);
        REQUIRE(record.reference_answer.has_value());
    }
    CHECK(*benign.front().reference_answer == doctest::Approx(12));
}

TEST_CASE("dataset errors carry the offending line") {
    const fs::path bad_json = write_tmp("bad_json.jsonl",
        R"({"id":"p1","text":"ok","kind":"adversarial"})" "\n"
        "{oops\n");
    CHECK_THROWS_WITH_AS(load_dataset(bad_json), doctest::Contains(":2:"), ConfigError);

    const fs::path dup = write_tmp("dup.jsonl",
        R"({"id":"p1","text":"one","kind":"adversarial"})" "\n"
        R"({"id":"p2","text":"two","kind":"adversarial"})" "\n"
        R"({"id":"p1","text":"three","kind":"adversarial"})" "\n");
    CHECK_THROWS_WITH_AS(load_dataset(dup),
                         doctest::Contains("first seen on line 1"), ConfigError);

    const fs::path no_ref = write_tmp("no_ref.jsonl",
        R"({"id":"b1","text":"2+2?","kind":"benign"})" "\n");
    CHECK_THROWS_WITH_AS(load_dataset(no_ref),
                         doctest::Contains("reference_answer"), ConfigError);

    const fs::path empty_id = write_tmp("empty_id.jsonl",
        R"({"id":"","text":"x","kind":"adversarial"})" "\n");
    CHECK_THROWS_AS(load_dataset(empty_id), ConfigError);

    const fs::path bad_kind = write_tmp("bad_kind.jsonl",
        R"({"id":"p1","text":"x","kind":"spicy"})" "\n");
    CHECK_THROWS_AS(load_dataset(bad_kind), ConfigError);

    CHECK_THROWS_AS(load_dataset(kFixtures / "absent.jsonl"), ConfigError);

    SUBCASE("numeric strings are accepted as reference answers") {
        const fs::path str_ref = write_tmp("str_ref.jsonl",
            R"({"id":"b1","text":"2+2?","kind":"benign","reference_answer":"4"})" "\n");
        const auto records = load_dataset(str_ref);
        REQUIRE(records.size() == 1);
        CHECK(*records[0].reference_answer == doctest::Approx(4));
    }
}

TEST_CASE("set seeds are derived by mixing, not adding") {
    CHECK(set_seed(42, 0) == (42ULL ^ 0x5692161D100B05E5ULL));  // 42 ^ mix64(1)
    CHECK(set_seed(42, 0) != set_seed(42, 1));
    CHECK(set_seed(42, 0) != 42);
    std::set<std::uint64_t> seeds;
    for (int s = 0; s < 100; ++s) seeds.insert(set_seed(7, s));
    CHECK(seeds.size() == 100);
}

TEST_CASE("apply_defense covers all three variants") {
    Defense identity;
    const auto echoed = apply_defense(identity, "leave me alone", 1);
    CHECK(echoed.defended_text == "leave me alone");
    CHECK_FALSE(echoed.chain.has_value());

    SUBCASE("rtt defends with a seeded chain over the mock provider") {
        Defense rtt;
        rtt.variant = DefenseVariant::Rtt;
        rtt.chain_spec = {3, ChainMode::DistinctFamily, "en", 0};
        rtt.registry = std::make_shared<LanguageRegistry>(
            LanguageRegistry::load((kFixtures / "registry_rtt_mock.json").string()));
        rtt.provider = std::make_shared<MockTranslationProvider>(
            MockLexicon::from_file(kFixtures / "mock_lexicon.json"));

        const auto defended =
            apply_defense(rtt, "the spontaneous disassembly package", 123);
        REQUIRE(defended.chain.has_value());
        CHECK(defended.chain->length() == 3);
        CHECK(defended.defended_text == "the bomb");  // sw always visited at x=3

        // The set seed, not chain_spec's stored seed, drives selection.
        const auto again = apply_defense(rtt, "plain text", 123);
        const auto expected =
            select_chain({3, ChainMode::DistinctFamily, "en", 123}, *rtt.registry);
        CHECK(again.chain->intermediate_codes() == expected.intermediate_codes());

        rtt.provider = nullptr;
        CHECK_THROWS_AS(apply_defense(rtt, "x", 1), ConfigError);
    }

    SUBCASE("llm paraphrase flags no-op rewrites") {
        MockTargetRules rules;
        rules.refusal_template = "no";
        rules.compliance_template = "rewritten text";
        const std::string instruction = "Rewrite this.";
        const std::string prompt = "keep me";
        rules.answer_map[prompt_digest(instruction + "\n\n" + prompt)] = prompt;

        Defense paraphrase;
        paraphrase.variant = DefenseVariant::LlmParaphrase;
        paraphrase.instruction = instruction;
        paraphrase.paraphraser = std::make_shared<MockTarget>(rules);

        const auto noop = apply_defense(paraphrase, prompt, 0);
        CHECK(noop.defended_text == prompt);
        CHECK(noop.notes == std::string("paraphrase-noop"));

        const auto changed = apply_defense(paraphrase, "something else", 0);
        CHECK(changed.defended_text == "rewritten text");
        CHECK_FALSE(changed.notes.has_value());

        paraphrase.paraphraser = nullptr;
        CHECK_THROWS_AS(apply_defense(paraphrase, "x", 0), ConfigError);
    }
}

TEST_CASE("asr excludes errors and rejects empty denominators") {
    CHECK(asr(49, 1) == 0.98);   // 49 successes of 50 judged
    CHECK(asr(13, 37) == 0.26);  // 13 successes of 50 judged
    CHECK(asr(0, 5) == 0.0);
    CHECK(asr(5, 0) == 1.0);
    CHECK_THROWS_AS(asr(0, 0), ConfigError);
    CHECK_THROWS_AS(asr(-1, 2), ConfigError);

    SUBCASE("the outcome overload recounts identically") {
        std::vector<TrialOutcome> outcomes;
        auto push = [&](VerdictKind kind) {
            TrialOutcome outcome;
            outcome.prompt_id = "p" + std::to_string(outcomes.size());
            Verdict verdict;
            verdict.kind = kind;
            outcome.verdict = verdict;
            outcomes.push_back(outcome);
        };
        push(VerdictKind::AttackSuccess);
        push(VerdictKind::AttackSuccess);
        push(VerdictKind::Blocked);
        TrialOutcome errored;
        errored.prompt_id = "err";
        errored.error = "boom";
        outcomes.push_back(errored);

        CHECK(asr(outcomes) == doctest::Approx(2.0 / 3));

        TrialOutcome verdictless;
        verdictless.prompt_id = "bad";
        outcomes.push_back(verdictless);
        CHECK_THROWS_AS(asr(outcomes), ConfigError);
    }
}

TEST_CASE("mitigation reports both the ratio and the drop") {
    const Mitigation strong = mitigation(0.98, 0.26);
    CHECK(strong.asr_drop == doctest::Approx(0.72).epsilon(1e-12));
    REQUIRE(strong.mitigation_ratio.has_value());
    CHECK(*strong.mitigation_ratio == doctest::Approx(0.72 / 0.98).epsilon(1e-9));

    const Mitigation zero_base = mitigation(0.0, 0.0);
    CHECK_FALSE(zero_base.mitigation_ratio.has_value());
    CHECK(zero_base.asr_drop == 0.0);

    const Mitigation worse = mitigation(0.5, 0.9);
    CHECK(worse.asr_drop == doctest::Approx(-0.4));
    CHECK(*worse.mitigation_ratio == doctest::Approx(-0.8));

    SUBCASE("the ratio is scale-invariant, the drop is not") {
        SplitMix64 rng(404);
        for (int i = 0; i < 200; ++i) {
            const double b = 0.05 + static_cast<double>(rng.below(1000)) / 1100.0;
            const double a = b * (static_cast<double>(rng.below(1000)) / 1000.0);
            const double k = 0.1 + static_cast<double>(rng.below(900)) / 1000.0;
            const Mitigation plain = mitigation(b, a);
            const Mitigation scaled = mitigation(k * b, k * a);
            CHECK(*plain.mitigation_ratio ==
                  doctest::Approx(*scaled.mitigation_ratio).epsilon(1e-9));
            CHECK(scaled.asr_drop == doctest::Approx(k * plain.asr_drop).epsilon(1e-9));
        }
    }
}

TEST_CASE("mean_std uses the sample (n-1) denominator") {
    const auto [m1, s1] = mean_std({0.0, 1.0});
    CHECK(m1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s1 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    const auto [m2, s2] = mean_std({3.25});
    CHECK(m2 == 3.25);
    CHECK(s2 == 0.0);

    const auto [m3, s3] = mean_std({1.0, 2.0, 3.0, 4.0});
    CHECK(m3 == doctest::Approx(2.5));
    CHECK(s3 == doctest::Approx(std::sqrt(5.0 / 3.0)));

    CHECK_THROWS_AS(mean_std({}), ConfigError);
}

TEST_CASE("benign accuracy and preservation arithmetic") {
    const BenignReport report = benign_accuracy(435, 500, 357, 500);
    CHECK(report.accuracy_baseline == doctest::Approx(0.87).epsilon(1e-12));
    CHECK(report.accuracy_defended == doctest::Approx(0.714).epsilon(1e-12));
    CHECK(report.preservation_ratio == doctest::Approx(357.0 / 435.0).epsilon(1e-12));

    CHECK_THROWS_AS(benign_accuracy(0, 500, 357, 500), ConfigError);  // zero baseline
    CHECK_THROWS_AS(benign_accuracy(435, 0, 357, 500), ConfigError);

    SUBCASE("the outcome overload excludes errors and rejects adversarial rows") {
        std::vector<TrialOutcome> outcomes;
        for (int i = 0; i < 4; ++i) {
            TrialOutcome outcome;
            outcome.prompt_id = "b" + std::to_string(i);
            outcome.math_verdict = i < 3 ? MathVerdict::Correct : MathVerdict::Incorrect;
            outcomes.push_back(outcome);
        }
        TrialOutcome errored;
        errored.prompt_id = "be";
        errored.error = "boom";
        outcomes.push_back(errored);
        CHECK(benign_accuracy(outcomes) == doctest::Approx(0.75));

        TrialOutcome adversarial;
        adversarial.prompt_id = "a";
        Verdict verdict;
        verdict.kind = VerdictKind::Blocked;
        adversarial.verdict = verdict;
        outcomes.push_back(adversarial);
        CHECK_THROWS_AS(benign_accuracy(outcomes), ConfigError);
    }
}

TEST_CASE("trial outcomes round-trip through json") {
    TrialOutcome outcome;
    outcome.prompt_id = "a01";
    outcome.set_index = 2;
    outcome.defense_id = "rtt3d";
    outcome.target_id = "mock";
    outcome.chain = std::vector<std::string>{"ja", "ar", "sw"};
    outcome.defended_text = "text";
    outcome.response = "resp";
    outcome.defense_notes = "note";
    Verdict verdict;
    verdict.kind = VerdictKind::Blocked;
    verdict.matched_pattern = "i'm sorry";
    verdict.ruleset_id = "gcg-refusals-v1";
    outcome.verdict = verdict;

    const TrialOutcome back = TrialOutcome::from_json(outcome.to_json());
    CHECK(back.to_json() == outcome.to_json());
    CHECK(back.chain == outcome.chain);
    CHECK(back.verdict->matched_pattern == verdict.matched_pattern);

    SUBCASE("optional fields stay absent") {
        TrialOutcome bare;
        bare.prompt_id = "x";
        bare.defense_id = "identity";
        bare.target_id = "mock";
        const nlohmann::json doc = bare.to_json();
        CHECK_FALSE(doc.contains("chain"));
        CHECK_FALSE(doc.contains("verdict"));
        CHECK_FALSE(doc.contains("math_verdict"));
        CHECK_FALSE(doc.contains("error"));
        CHECK(TrialOutcome::from_json(doc).to_json() == doc);
    }
}

TEST_CASE("experiment config load, resolution and digest") {
    const ExperimentConfig config = ExperimentConfig::load(kFixtures / "config_rtt3d.json");
    CHECK(config.n_sets == 3);
    CHECK(config.base_seed == 42);
    CHECK(config.parallelism == 1);
    CHECK(fs::exists(config.dataset_path));  // resolved against the config dir

    SUBCASE("digest ignores execution-shape knobs") {
        ExperimentConfig a = config;
        ExperimentConfig b = config;
        b.raw["parallelism"] = 32;
        b.raw["out_dir"] = "elsewhere";
        CHECK(a.digest() == b.digest());
        b.raw["base_seed"] = 43;
        CHECK(a.digest() != b.digest());
    }

    SUBCASE("bad configs are rejected with context") {
        const fs::path missing = write_tmp("missing_dataset_key.json", R"({
            "defense": {"variant": "identity"},
            "target": {"id": "mock", "rules": "x.json"}})");
        CHECK_THROWS_WITH_AS(ExperimentConfig::load(missing),
                             doctest::Contains("missing fields"), ConfigError);

        const fs::path bad_sets = write_tmp("bad_sets.json", R"({
            "dataset": "d.jsonl",
            "defense": {"variant": "identity"},
            "target": {"id": "mock", "rules": "x.json"},
            "n_sets": 0})");
        CHECK_THROWS_WITH_AS(ExperimentConfig::load(bad_sets),
                             doctest::Contains("n_sets"), ConfigError);

        CHECK_THROWS_AS(ExperimentConfig::load(kFixtures / "absent.json"), ConfigError);
    }
}

TEST_CASE("build_experiment validates the dataset/judge pairing") {
    ExperimentConfig config = ExperimentConfig::load(kFixtures / "config_benign_identity.json");
    config.judge_section = nlohmann::json{
        {"kind", "refusal"},
        {"rules", (fs::path(RTT_SOURCE_DIR) / "data" / "refusal_patterns.txt").string()}};
    CHECK_THROWS_WITH_AS(build_experiment(config),
                         doctest::Contains("math judge"), ConfigError);

    ExperimentConfig adv = ExperimentConfig::load(kFixtures / "config_identity.json");
    adv.judge_section = nlohmann::json{{"kind", "math"}};
    CHECK_THROWS_WITH_AS(build_experiment(adv),
                         doctest::Contains("refusal judge"), ConfigError);

    SUBCASE("mixed datasets are rejected") {
        const fs::path mixed = write_tmp("mixed.jsonl",
            R"({"id":"p1","text":"x","kind":"adversarial"})" "\n"
            R"({"id":"b1","text":"y","kind":"benign","reference_answer":1})" "\n");
        ExperimentConfig cfg = ExperimentConfig::load(kFixtures / "config_identity.json");
        cfg.dataset_path = mixed;
        CHECK_THROWS_WITH_AS(build_experiment(cfg), doctest::Contains("mixes"),
                             ConfigError);
    }
}

TEST_CASE("identity experiment on the fixture corpus has ASR 1.0") {
    const auto config = ExperimentConfig::load(kFixtures / "config_identity.json");
    const ExperimentResult result = run_experiment(build_experiment(config));

    CHECK(result.outcomes.size() == 72);  // 3 sets x 24 prompts
    CHECK(result.summary.dataset_kind == "adversarial");
    CHECK(result.summary.defense_id == "identity");
    CHECK(result.summary.judge_id == "gcg-refusals-v1");
    CHECK(result.summary.value_mean == 1.0);
    CHECK(result.summary.value_std == 0.0);
    REQUIRE(result.summary.sets.size() == 3);
    for (const SetCounts& counts : result.summary.sets) {
        CHECK(counts.n_total == 24);
        CHECK(counts.n_success == 24);
        CHECK(counts.n_blocked == 0);
        CHECK(counts.n_error == 0);
        CHECK(counts.n_success + counts.n_blocked + counts.n_error == counts.n_total);
    }
    std::unordered_map<std::string, std::string> texts;
    for (const PromptRecord& record : load_dataset(config.dataset_path)) {
        texts[record.id] = record.text;
    }
    for (const TrialOutcome& outcome : result.outcomes) {
        REQUIRE(outcome.verdict.has_value());
        CHECK(outcome.verdict->kind == VerdictKind::AttackSuccess);
        CHECK(outcome.defended_text == texts.at(outcome.prompt_id));  // identity echoes
        CHECK_FALSE(outcome.response.empty());
    }
}

TEST_CASE("rtt3d experiment blocks the whole fixture corpus") {
    const auto config = ExperimentConfig::load(kFixtures / "config_rtt3d.json");
    const auto experiment = build_experiment(config);
    const ExperimentResult result = run_experiment(experiment);

    CHECK(result.summary.value_mean == 0.0);
    CHECK(result.summary.value_std == 0.0);
    CHECK(result.summary.defense_id == "rtt3d");

    for (const TrialOutcome& outcome : result.outcomes) {
        REQUIRE(outcome.verdict.has_value());
        CHECK(outcome.verdict->kind == VerdictKind::Blocked);
        REQUIRE(outcome.chain.has_value());
        CHECK(outcome.chain->size() == 3);
    }

    SUBCASE("each set's chain comes from the mixed set seed") {
        for (const TrialOutcome& outcome : result.outcomes) {
            const auto expected = select_chain(
                {3, ChainMode::DistinctFamily, "en",
                 set_seed(config.base_seed, outcome.set_index)},
                *experiment.registry);
            CHECK(*outcome.chain == expected.intermediate_codes());
        }
    }
}

TEST_CASE("benign experiments preserve all but the canary prompt") {
    const auto identity =
        run_experiment(build_experiment(
            ExperimentConfig::load(kFixtures / "config_benign_identity.json")));
    CHECK(identity.summary.dataset_kind == "benign");
    CHECK(identity.summary.value_mean == 1.0);
    REQUIRE(identity.summary.accuracy.has_value());
    CHECK(*identity.summary.accuracy == 1.0);

    const auto defended =
        run_experiment(build_experiment(
            ExperimentConfig::load(kFixtures / "config_benign_rtt3d.json")));
    CHECK(defended.summary.value_mean == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(defended.summary.value_std == 0.0);
    for (const TrialOutcome& outcome : defended.outcomes) {
        REQUIRE(outcome.math_verdict.has_value());
        if (outcome.prompt_id == "b07") {
            CHECK(*outcome.math_verdict == MathVerdict::Incorrect);
            CHECK(outcome.defended_text == "What is ninety plus four?");
        } else {
            CHECK(*outcome.math_verdict == MathVerdict::Correct);
        }
    }
    CHECK(benign_accuracy(defended.outcomes) == doctest::Approx(0.9));

    SUBCASE("the preservation ratio follows") {
        const BenignReport report = benign_accuracy(
            20, 20, 18, 20);  // counts recovered from the two runs above
        CHECK(report.preservation_ratio == doctest::Approx(0.9));
    }
}

TEST_CASE("parallel execution is outcome-identical to serial") {
    ExperimentConfig config = ExperimentConfig::load(kFixtures / "config_rtt3d.json");
    config.parallelism = 1;
    const ExperimentResult serial = run_experiment(build_experiment(config));
    config.parallelism = 8;
    const ExperimentResult parallel = run_experiment(build_experiment(config));

    CHECK(dump_outcomes(serial.outcomes) == dump_outcomes(parallel.outcomes));
    CHECK(serial.summary.to_json() == parallel.summary.to_json());
    CHECK(serial.summary.config_digest == parallel.summary.config_digest);
}

TEST_CASE("per-trial failures are recorded, not fatal") {
    const auto config = ExperimentConfig::load(kFixtures / "config_rtt3d.json");
    Experiment experiment = build_experiment(config);
    auto failing = std::make_shared<MockTranslationProvider>(
        MockLexicon::from_file(kFixtures / "mock_lexicon.json"));
    failing->fail_next(1, ProviderFault::TextTooLong);  // non-retryable, no sleeps
    experiment.defense.provider = failing;

    const ExperimentResult result = run_experiment(experiment);
    int errored = 0;
    for (const TrialOutcome& outcome : result.outcomes) {
        if (outcome.error) {
            ++errored;
            CHECK_FALSE(outcome.verdict.has_value());
            CHECK(outcome.error->find("hop 0") != std::string::npos);
        }
    }
    CHECK(errored == 1);
    CHECK(result.summary.sets[0].n_error == 1);
    // The errored trial is excluded from the set's ASR denominator.
    CHECK(result.summary.per_set_values[0] == 0.0);
    CHECK(result.summary.sets[0].n_blocked == 23);

    SUBCASE("a fully failing set aborts with a config error") {
        ExperimentConfig broken = config;
        broken.defense_section["chain"] = "4d";  // only 3 non-source languages exist
        CHECK_THROWS_WITH_AS(run_experiment(build_experiment(broken)),
                             doctest::Contains("all trials errored in set 0"),
                             ConfigError);
    }
}

TEST_CASE("summary-level mitigation guards dataset and target identity") {
    const auto baseline = run_experiment(
        build_experiment(ExperimentConfig::load(kFixtures / "config_identity.json")));
    const auto defended = run_experiment(
        build_experiment(ExperimentConfig::load(kFixtures / "config_rtt3d.json")));

    const Mitigation m = mitigation(baseline.summary, defended.summary);
    CHECK(m.asr_drop == doctest::Approx(1.0));
    REQUIRE(m.mitigation_ratio.has_value());
    CHECK(*m.mitigation_ratio == doctest::Approx(1.0));

    SUBCASE("different datasets are rejected") {
        ExperimentSummary other = defended.summary;
        other.dataset_digest = "0000";
        CHECK_THROWS_AS(mitigation(baseline.summary, other), ConfigError);
    }
    SUBCASE("benign summaries are rejected") {
        const auto benign = run_experiment(build_experiment(
            ExperimentConfig::load(kFixtures / "config_benign_identity.json")));
        CHECK_THROWS_AS(mitigation(benign.summary, benign.summary), ConfigError);
    }
}

TEST_CASE("reports are emitted deterministically and reload cleanly") {
    const auto config = ExperimentConfig::load(kFixtures / "config_rtt3d.json");
    const ExperimentResult result = run_experiment(build_experiment(config));

    const fs::path out = tmp_dir("emit");
    emit_reports(result.summary, result.outcomes, out);
    REQUIRE(fs::exists(out / "outcomes.jsonl"));
    REQUIRE(fs::exists(out / "summary.json"));
    REQUIRE(fs::exists(out / "plot.csv"));

    const auto reloaded = load_outcomes_jsonl(out / "outcomes.jsonl");
    CHECK(dump_outcomes(reloaded) == dump_outcomes(result.outcomes));

    const ExperimentSummary summary = ExperimentSummary::load(out / "summary.json");
    CHECK(summary.to_json() == result.summary.to_json());

    std::ifstream csv(out / "plot.csv");
    std::string header, row;
    REQUIRE(std::getline(csv, header));
    REQUIRE(std::getline(csv, row));
    CHECK(header == "x_or_config,asr_mean,asr_std");
    CHECK(row == "rtt3d,0.000000,0.000000");

    SUBCASE("emitting an empty experiment is refused") {
        ExperimentSummary empty;
        CHECK_THROWS_WITH_AS(emit_reports(empty, {}, tmp_dir("emit_empty")),
                             doctest::Contains("empty experiment"), ConfigError);
    }
}

TEST_CASE("chain-length sweep reports monotone ASR on the fixture corpus") {
    const auto base = ExperimentConfig::load(kFixtures / "config_sweep.json");
    const WordList wordlist =
        WordList::from_file(fs::path(RTT_SOURCE_DIR) / "data" / "common3000.txt");

    const auto rows = sweep_chain_length(base, {1, 2, 3, 4},
                                         {ChainMode::DistinctFamily}, wordlist);
    REQUIRE(rows.size() == 4);

    CHECK(rows[0].asr_mean == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(rows[1].asr_mean == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(rows[2].asr_mean == 0.0);
    for (int i = 0; i < 3; ++i) {
        CHECK(rows[i].error.empty());
        CHECK(rows[i].asr_std == 0.0);
        CHECK(rows[i].len_ratio < 1.0);
        CHECK(rows[i].len_ratio > 0.0);
        CHECK(rows[i].uncommon_ratio < 1.0);
        if (i) {
            CHECK(rows[i].asr_mean <= rows[i - 1].asr_mean);
            CHECK(rows[i].len_ratio < rows[i - 1].len_ratio);
            CHECK(rows[i].uncommon_ratio < rows[i - 1].uncommon_ratio);
        }
    }
    CHECK_FALSE(rows[3].error.empty());  // x=4 is infeasible in the fixture registry

    SUBCASE("the csv writer emits the documented header and one line per row") {
        const fs::path out = tmp_dir("sweep_csv") / "sweep.csv";
        write_sweep_csv(rows, out);
        std::ifstream in(out);
        std::string line;
        REQUIRE(std::getline(in, line));
        CHECK(line == kSweepCsvHeader);
        CHECK(line == "x,mode,asr_mean,asr_std,len_ratio,uncommon_ratio,error");
        int data_rows = 0;
        while (std::getline(in, line)) {
            if (!line.empty()) ++data_rows;
        }
        CHECK(data_rows == 4);
    }
}
