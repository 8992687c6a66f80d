// rtt: round-trip-translation defense toolkit.
//
// Subcommands: translate, defend, evaluate, sweep, analyze, compare.
// Exit codes: 0 success, 1 partial failure, 2 configuration/usage error,
// 3 upstream service error. Machine-readable results go to files; stdout
// carries the human summary.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rtt/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;
constexpr int kExitUpstream = 3;

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ',')) {
        if (!part.empty()) parts.push_back(part);
    }
    return parts;
}

std::string format3(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", value);
    return buf;
}

struct TranslateArgs {
    std::string text;
    std::string file;
    std::string chain_code;
    std::string langs;
    std::string provider = "mock";
    std::string lexicon;
    std::string endpoint;
    std::string key_env;
    std::string registry_ref = "builtin";
    std::string source = "en";
    std::string cache_path;
    std::uint64_t seed = 0;
    bool trace = false;
};

rtt::TranslationChain resolve_chain(const TranslateArgs& args,
                                    const rtt::LanguageRegistry& registry) {
    if (!args.chain_code.empty() && !args.langs.empty()) {
        throw rtt::ConfigError("--chain and --langs are mutually exclusive");
    }
    if (args.chain_code.empty() && args.langs.empty()) {
        throw rtt::ConfigError("one of --chain or --langs is required");
    }
    if (!args.langs.empty()) {
        return rtt::make_chain(registry, args.source, split_csv(args.langs));
    }
    rtt::ChainSpec spec = rtt::parse_chain_code(args.chain_code);
    spec.source = args.source;
    spec.seed = args.seed;
    return rtt::select_chain(spec, registry);
}

std::shared_ptr<rtt::TranslationProvider> resolve_provider(const TranslateArgs& args) {
    nlohmann::json section;
    section["provider_id"] = args.provider;
    if (args.provider == "mock") {
        if (args.lexicon.empty()) throw rtt::ConfigError("mock provider requires --lexicon");
        section["lexicon"] = args.lexicon;
    } else {
        if (args.endpoint.empty()) throw rtt::ConfigError("http provider requires --endpoint");
        section["endpoint"] = args.endpoint;
        if (!args.key_env.empty()) section["key_env_var"] = args.key_env;
    }
    return rtt::make_provider(section, std::filesystem::current_path());
}

std::string read_prompt(const TranslateArgs& args) {
    if (!args.text.empty() && !args.file.empty()) {
        throw rtt::ConfigError("--text and --file are mutually exclusive");
    }
    if (!args.text.empty()) return args.text;
    if (args.file.empty()) throw rtt::ConfigError("one of --text or --file is required");
    std::ifstream in(args.file);
    if (!in) throw rtt::ConfigError("cannot open input file: " + args.file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

int cmd_translate(const TranslateArgs& args) {
    const rtt::LanguageRegistry registry = rtt::LanguageRegistry::load(args.registry_ref);
    const rtt::TranslationChain chain = resolve_chain(args, registry);
    const auto provider = resolve_provider(args);
    std::shared_ptr<rtt::TranslationCache> cache;
    if (!args.cache_path.empty()) cache = rtt::TranslationCache::open(args.cache_path);

    const std::string prompt = read_prompt(args);
    const rtt::RoundTripResult result =
        rtt::round_trip(*provider, prompt, chain, rtt::TranslateOptions{}, cache);
    if (args.trace) {
        std::cout << "original: " << result.original << "\n";
        for (const rtt::TranslatedHop& hop : result.hops) {
            std::cout << hop.from << "->" << hop.to << ": " << hop.output << "\n";
        }
    } else {
        std::cout << result.final_text << "\n";
    }
    return kExitOk;
}

int cmd_defend(const std::string& config_path, const std::string& text, int set_index) {
    const rtt::ExperimentConfig config = rtt::ExperimentConfig::load(config_path);
    const rtt::Experiment experiment = rtt::build_experiment(config);
    const std::uint64_t seed = rtt::set_seed(config.base_seed, set_index);
    const rtt::DefenseApplication application =
        rtt::apply_defense(experiment.defense, text, seed);
    std::cout << application.defended_text << "\n";
    return kExitOk;
}

struct Overrides {
    std::optional<int> n_sets;
    std::optional<std::uint64_t> seed;
    std::optional<int> parallelism;
    std::optional<std::string> out_dir;
};

rtt::ExperimentConfig load_config_with_overrides(const std::string& path,
                                                 const Overrides& overrides) {
    rtt::ExperimentConfig config = rtt::ExperimentConfig::load(path);
    if (overrides.n_sets) {
        config.n_sets = *overrides.n_sets;
        config.raw["n_sets"] = *overrides.n_sets;
        if (config.n_sets < 1) throw rtt::ConfigError("n_sets must be >= 1");
    }
    if (overrides.seed) {
        config.base_seed = *overrides.seed;
        config.raw["base_seed"] = *overrides.seed;
    }
    if (overrides.parallelism) {
        config.parallelism = *overrides.parallelism;
        config.raw["parallelism"] = *overrides.parallelism;
        if (config.parallelism < 1) throw rtt::ConfigError("parallelism must be >= 1");
    }
    if (overrides.out_dir) {
        config.out_dir = *overrides.out_dir;
        if (config.out_dir.is_relative()) {
            config.out_dir = std::filesystem::current_path() / config.out_dir;
        }
        config.raw["out_dir"] = *overrides.out_dir;
    }
    return config;
}

int cmd_evaluate(const std::string& config_path, const Overrides& overrides) {
    const rtt::ExperimentConfig config = load_config_with_overrides(config_path, overrides);
    const rtt::Experiment experiment = rtt::build_experiment(config);

    const auto started = std::chrono::steady_clock::now();
    const rtt::ExperimentResult result = rtt::run_experiment(experiment);
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);

    rtt::emit_reports(result.summary, result.outcomes, config.out_dir);
    {
        // Wall-clock data stays out of the deterministic artifacts.
        std::ofstream timing(config.out_dir / "timing.log", std::ios::app);
        timing << "run_ms=" << elapsed.count() << "\n";
    }

    int n_total = 0;
    int n_error = 0;
    for (const rtt::SetCounts& counts : result.summary.sets) {
        n_total += counts.n_total;
        n_error += counts.n_error;
    }
    const char* metric = result.summary.dataset_kind == "benign" ? "ACC" : "ASR";
    std::cout << result.summary.defense_id << " " << result.summary.target_id << " " << metric
              << "=" << format3(result.summary.value_mean) << "±"
              << format3(result.summary.value_std) << " n=" << n_total << " err=" << n_error
              << "\n";
    std::cout << "reports: " << (config.out_dir / "summary.json").string() << "\n";
    return n_error > 0 ? kExitPartial : kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& x_csv,
              const std::string& modes_csv, const std::string& wordlist_path,
              const Overrides& overrides) {
    const rtt::ExperimentConfig config = load_config_with_overrides(config_path, overrides);

    std::vector<int> x_values;
    for (const std::string& token : split_csv(x_csv)) {
        try {
            x_values.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw rtt::ConfigError("invalid --x value: '" + token + "'");
        }
    }
    std::vector<rtt::ChainMode> modes;
    for (const std::string& token : split_csv(modes_csv)) {
        modes.push_back(rtt::chain_mode_from_string(token));
    }

    std::string wl = wordlist_path;
    if (wl.empty()) {
        if (!config.raw.contains("wordlist")) {
            throw rtt::ConfigError("sweep requires --wordlist or a config wordlist entry");
        }
        wl = config.raw.at("wordlist").get<std::string>();
        std::filesystem::path p = wl;
        if (p.is_relative()) wl = (config.base_dir / p).string();
    }
    const rtt::WordList wordlist = rtt::WordList::from_file(wl);

    const std::vector<rtt::SweepRow> rows =
        rtt::sweep_chain_length(config, x_values, modes, wordlist);
    std::filesystem::create_directories(config.out_dir);
    const std::filesystem::path csv_path = config.out_dir / "sweep.csv";
    rtt::write_sweep_csv(rows, csv_path);

    bool partial = false;
    for (const rtt::SweepRow& row : rows) {
        std::cout << "x=" << row.x << " mode=" << (row.mode == rtt::ChainMode::Random ? "r" : "d");
        if (row.error.empty()) {
            std::cout << " ASR=" << format3(row.asr_mean) << "±" << format3(row.asr_std)
                      << " len_ratio=" << format3(row.len_ratio)
                      << " uncommon_ratio=" << format3(row.uncommon_ratio) << "\n";
        } else {
            std::cout << " error: " << row.error << "\n";
            partial = true;
        }
    }
    std::cout << "reports: " << csv_path.string() << "\n";
    return partial ? kExitPartial : kExitOk;
}

int cmd_analyze(const std::string& before_path, const std::string& after_path,
                const std::string& wordlist_path) {
    const std::vector<std::string> before = rtt::read_text_lines(before_path);
    const std::vector<std::string> after = rtt::read_text_lines(after_path);
    const rtt::WordList wordlist = rtt::WordList::from_file(wordlist_path);
    const rtt::GeneralizationReport report = rtt::generalization_report(before, after, wordlist);
    std::cout << report.to_json().dump(2) << "\n";
    return kExitOk;
}

int cmd_compare(const std::string& baseline_path, const std::string& defended_path) {
    const rtt::ExperimentSummary baseline = rtt::ExperimentSummary::load(baseline_path);
    const rtt::ExperimentSummary defended = rtt::ExperimentSummary::load(defended_path);

    nlohmann::json doc;
    if (baseline.dataset_kind == "benign" && defended.dataset_kind == "benign") {
        if (baseline.dataset_digest != defended.dataset_digest) {
            throw rtt::ConfigError("summaries come from different datasets");
        }
        if (baseline.target_id != defended.target_id) {
            throw rtt::ConfigError("summaries come from different targets");
        }
        if (baseline.value_mean <= 0) {
            throw rtt::ConfigError("baseline accuracy is zero; preservation undefined");
        }
        doc["accuracy_baseline"] = baseline.value_mean;
        doc["accuracy_defended"] = defended.value_mean;
        doc["preservation_ratio"] = defended.value_mean / baseline.value_mean;
    } else {
        const rtt::Mitigation result = rtt::mitigation(baseline, defended);
        doc["asr_baseline"] = baseline.value_mean;
        doc["asr_defended"] = defended.value_mean;
        doc["asr_drop"] = result.asr_drop;
        if (result.mitigation_ratio) doc["mitigation_ratio"] = *result.mitigation_ratio;
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Round-trip translation defense toolkit"};
    app.require_subcommand(1);

    TranslateArgs targs;
    CLI::App* translate = app.add_subcommand("translate", "Round-trip translate a text");
    translate->add_option("--text", targs.text, "Text to translate");
    translate->add_option("--file", targs.file, "Read the text from a file");
    translate->add_option("--chain", targs.chain_code, "Chain code, e.g. 3d or 2r");
    translate->add_option("--langs", targs.langs, "Explicit intermediate codes, e.g. ja,ar,sw");
    translate->add_option("--provider", targs.provider, "Provider id: mock or http");
    translate->add_option("--lexicon", targs.lexicon, "Mock lexicon JSON path");
    translate->add_option("--endpoint", targs.endpoint, "HTTP provider endpoint");
    translate->add_option("--key-env", targs.key_env, "Env var holding the provider API key");
    translate->add_option("--registry", targs.registry_ref, "Language registry path or 'builtin'");
    translate->add_option("--source", targs.source, "Source language code");
    translate->add_option("--seed", targs.seed, "Chain selection seed");
    translate->add_option("--cache", targs.cache_path, "Translation cache JSONL path");
    translate->add_flag("--trace", targs.trace, "Print every hop");

    std::string defend_config;
    std::string defend_text;
    int defend_set = 0;
    CLI::App* defend = app.add_subcommand("defend", "Apply the configured defense to a text");
    defend->add_option("--config", defend_config, "Experiment config JSON")->required();
    defend->add_option("--text", defend_text, "Prompt to defend")->required();
    defend->add_option("--set", defend_set, "Set index used for chain selection");

    std::string eval_config;
    Overrides overrides;
    int override_n_sets = 0;
    std::uint64_t override_seed = 0;
    int override_parallelism = 0;
    std::string override_out;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Run a configured experiment");
    evaluate->add_option("--config", eval_config, "Experiment config JSON")->required();
    CLI::Option* opt_sets = evaluate->add_option("--n-sets", override_n_sets, "Override n_sets");
    CLI::Option* opt_seed = evaluate->add_option("--seed", override_seed, "Override base_seed");
    CLI::Option* opt_par =
        evaluate->add_option("--parallelism", override_parallelism, "Override parallelism");
    CLI::Option* opt_out = evaluate->add_option("--out", override_out, "Override out_dir");

    std::string sweep_config;
    std::string sweep_x = "1,2,3";
    std::string sweep_modes = "d";
    std::string sweep_wordlist;
    CLI::App* sweep = app.add_subcommand("sweep", "Sweep chain length and mode");
    sweep->add_option("--config", sweep_config, "Experiment config JSON")->required();
    sweep->add_option("--x", sweep_x, "Comma-separated chain lengths");
    sweep->add_option("--modes", sweep_modes, "Comma-separated modes: r,d");
    sweep->add_option("--wordlist", sweep_wordlist, "Word list path (overrides config)");
    CLI::Option* opt_sweep_seed = sweep->add_option("--seed", override_seed, "Override base_seed");
    CLI::Option* opt_sweep_out = sweep->add_option("--out", override_out, "Override out_dir");

    std::string analyze_before;
    std::string analyze_after;
    std::string analyze_wordlist;
    CLI::App* analyze = app.add_subcommand("analyze", "Before/after generalization metrics");
    analyze->add_option("--before", analyze_before, "Original texts, one per line")->required();
    analyze->add_option("--after", analyze_after, "Defended texts, one per line")->required();
    analyze->add_option("--wordlist", analyze_wordlist, "Word list path")->required();

    std::string compare_baseline;
    std::string compare_defended;
    CLI::App* compare = app.add_subcommand("compare", "Mitigation between two summaries");
    compare->add_option("--baseline", compare_baseline, "Baseline summary.json")->required();
    compare->add_option("--defended", compare_defended, "Defended summary.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (translate->parsed()) return cmd_translate(targs);
        if (defend->parsed()) return cmd_defend(defend_config, defend_text, defend_set);
        if (evaluate->parsed()) {
            if (opt_sets->count()) overrides.n_sets = override_n_sets;
            if (opt_seed->count()) overrides.seed = override_seed;
            if (opt_par->count()) overrides.parallelism = override_parallelism;
            if (opt_out->count()) overrides.out_dir = override_out;
            return cmd_evaluate(eval_config, overrides);
        }
        if (sweep->parsed()) {
            if (opt_sweep_seed->count()) overrides.seed = override_seed;
            if (opt_sweep_out->count()) overrides.out_dir = override_out;
            return cmd_sweep(sweep_config, sweep_x, sweep_modes, sweep_wordlist, overrides);
        }
        if (analyze->parsed()) return cmd_analyze(analyze_before, analyze_after, analyze_wordlist);
        if (compare->parsed()) return cmd_compare(compare_baseline, compare_defended);
        std::cerr << "error: no subcommand selected\n";
        return kExitConfig;
    } catch (const rtt::ProviderError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUpstream;
    } catch (const rtt::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
