// End-to-end checks of the rtt binary: exit codes, stdout contract and the
// files each subcommand leaves behind. Runs the real executable via popen.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

struct RunResult {
    int status = -1;
    std::string output;  // stdout and stderr interleaved
};

RunResult run(const std::string& cmd) {
    RunResult result;
    const std::string full = cmd + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) {
        ++g_failures;
        std::cerr << "FAIL: popen(" << cmd << ")\n";
        return result;
    }
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, n);
    const int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::string q(const fs::path& path) { return "'" + path.string() + "'"; }

int count_lines(const fs::path& path) {
    std::ifstream in(path);
    int lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    return lines;
}

std::string first_line(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    return line;
}

const std::string kBin = RTT_CLI_BIN;
const fs::path kSource = RTT_SOURCE_DIR;
const fs::path kFixtures = kSource / "fixtures";

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path(RTT_BINARY_DIR) / "test_tmp" / "cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void test_usage_and_exit_codes() {
    expect(run(kBin).status == 2, "bare invocation exits 2");
    expect(run(kBin + " --help").status == 0, "--help exits 0");
    expect(run(kBin + " evaluate --help").status == 0, "subcommand --help exits 0");
    expect(run(kBin + " --no-such-flag").status == 2, "unknown flag exits 2");
    expect(run(kBin + " frobnicate").status == 2, "unknown subcommand exits 2");

    const RunResult missing =
        run(kBin + " evaluate --config " + q(kFixtures / "no_such_config.json"));
    expect(missing.status == 2, "missing config exits 2");
    expect(contains(missing.output, "error:"), "missing config reports an error");
}

void test_evaluate_identity_and_out_override() {
    const fs::path out = fresh_dir("eval_identity");
    const RunResult r = run(kBin + " evaluate --config " + q(kFixtures / "config_identity.json") +
                            " --out " + q(out));
    expect(r.status == 0, "identity evaluate exits 0");
    expect(contains(r.output, "identity mock ASR=1.000±0.000 n=72 err=0"),
           "identity evaluate summary line");
    expect(contains(r.output, "reports: "), "evaluate names its report path");
    expect(fs::exists(out / "summary.json"), "evaluate writes summary.json");
    expect(fs::exists(out / "outcomes.jsonl"), "evaluate writes outcomes.jsonl");
    expect(fs::exists(out / "plot.csv"), "evaluate writes plot.csv");
    expect(fs::exists(out / "timing.log"), "evaluate writes timing.log");
    expect(count_lines(out / "outcomes.jsonl") == 72, "one outcome per trial");
    expect(first_line(out / "plot.csv") == "x_or_config,asr_mean,asr_std",
           "plot.csv header");

    const std::ifstream summary_in(out / "summary.json");
    std::stringstream buffer;
    buffer << summary_in.rdbuf();
    const nlohmann::json summary = nlohmann::json::parse(buffer.str());
    expect(summary.at("asr_mean").get<double>() == 1.0, "summary asr_mean is 1.0");
    expect(summary.at("dataset_kind").get<std::string>() == "adversarial",
           "summary dataset kind");
}

void test_evaluate_rtt3d_and_benign() {
    const fs::path out = fresh_dir("eval_rtt3d");
    const RunResult r = run(kBin + " evaluate --config " + q(kFixtures / "config_rtt3d.json") +
                            " --out " + q(out));
    expect(r.status == 0, "rtt3d evaluate exits 0");
    expect(contains(r.output, "rtt3d mock ASR=0.000±0.000 n=72 err=0"),
           "rtt3d evaluate summary line");

    const fs::path out_benign = fresh_dir("eval_benign");
    const RunResult b =
        run(kBin + " evaluate --config " + q(kFixtures / "config_benign_rtt3d.json") +
            " --out " + q(out_benign));
    expect(b.status == 0, "benign rtt3d evaluate exits 0");
    expect(contains(b.output, "rtt3d mock ACC=0.900±0.000 n=20 err=0"),
           "benign evaluate reports accuracy");
}

void test_compare_summaries() {
    const fs::path base_out = fresh_dir("cmp_base");
    const fs::path def_out = fresh_dir("cmp_def");
    run(kBin + " evaluate --config " + q(kFixtures / "config_identity.json") + " --out " +
        q(base_out));
    run(kBin + " evaluate --config " + q(kFixtures / "config_rtt3d.json") + " --out " +
        q(def_out));

    const RunResult r = run(kBin + " compare --baseline " + q(base_out / "summary.json") +
                            " --defended " + q(def_out / "summary.json"));
    expect(r.status == 0, "compare exits 0");
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    expect(doc.at("asr_baseline").get<double>() == 1.0, "compare baseline ASR");
    expect(doc.at("asr_defended").get<double>() == 0.0, "compare defended ASR");
    expect(doc.at("asr_drop").get<double>() == 1.0, "compare asr_drop");
    expect(doc.at("mitigation_ratio").get<double>() == 1.0, "compare mitigation_ratio");

    const RunResult mixed = run(kBin + " compare --baseline " + q(base_out / "summary.json") +
                                " --defended " + q(base_out / "plot.csv"));
    expect(mixed.status == 2, "comparing a non-summary file exits 2");
}

void test_sweep_partial_failure() {
    const fs::path out = fresh_dir("sweep");
    const RunResult r = run(kBin + " sweep --config " + q(kFixtures / "config_sweep.json") +
                            " --x 1,2,3,4,5 --modes r,d --out " + q(out));
    expect(r.status == 1, "sweep with infeasible rows exits 1");
    expect(contains(r.output, "x=1 mode=r"), "sweep prints the first row");
    expect(contains(r.output, "x=3 mode=d ASR=0.000"), "sweep prints the 3d row");
    expect(contains(r.output, " error: "), "sweep prints row errors");

    const fs::path csv = out / "sweep.csv";
    expect(fs::exists(csv), "sweep writes sweep.csv");
    expect(count_lines(csv) == 11, "sweep.csv has a header plus ten rows");
    expect(first_line(csv) == "x,mode,asr_mean,asr_std,len_ratio,uncommon_ratio,error",
           "sweep.csv header");

    const fs::path out_ok = fresh_dir("sweep_ok");
    const RunResult ok = run(kBin + " sweep --config " + q(kFixtures / "config_sweep.json") +
                             " --out " + q(out_ok));  // defaults: --x 1,2,3 --modes d
    expect(ok.status == 0, "feasible sweep exits 0");
    expect(count_lines(out_ok / "sweep.csv") == 4, "default sweep has three rows");
}

void test_translate() {
    const std::string base = kBin + " translate --registry " +
                             q(kFixtures / "registry_rtt_mock.json") + " --lexicon " +
                             q(kFixtures / "mock_lexicon.json");

    const RunResult reveal =
        run(base + " --text 'the herbal quiet tea' --langs sw");
    expect(reveal.status == 0, "translate exits 0");
    expect(reveal.output == "the poison\n", "lexicon round trip reveals the term");

    const RunResult trace = run(base + " --text 'the herbal quiet tea' --langs sw --trace");
    expect(contains(trace.output, "original: the herbal quiet tea"), "trace echoes input");
    expect(contains(trace.output, "en->sw: "), "trace prints the outbound hop");
    expect(contains(trace.output, "sw->en: the poison"), "trace prints the return hop");

    const RunResult once = run(base + " --text 'plain words' --chain 2r --seed 5");
    const RunResult twice = run(base + " --text 'plain words' --chain 2r --seed 5");
    expect(once.status == 0 && once.output == twice.output,
           "seeded translation is reproducible");

    expect(run(base + " --text x --file y --langs sw").status == 2,
           "--text with --file exits 2");
    expect(run(base + " --langs sw").status == 2, "translate without input exits 2");
    expect(run(base + " --text x").status == 2, "translate without a chain exits 2");
    expect(run(base + " --text x --chain 2d --langs sw").status == 2,
           "--chain with --langs exits 2");
    expect(run(kBin + " translate --text x --langs sw --registry " +
               q(kFixtures / "registry_rtt_mock.json"))
                   .status == 2,
           "mock provider without --lexicon exits 2");

    unsetenv("RTT_CLI_KEY_UNSET");
    const RunResult upstream =
        run(kBin + " translate --text x --chain 1r --provider http"
                   " --endpoint http://127.0.0.1:9/translate --key-env RTT_CLI_KEY_UNSET");
    expect(upstream.status == 3, "missing provider credentials exit 3");
    expect(contains(upstream.output, "RTT_CLI_KEY_UNSET"), "the error names the env var");
}

void test_defend() {
    const RunResult r = run(kBin + " defend --config " +
                            q(kFixtures / "config_benign_rtt3d.json") +
                            " --text 'What is nineteen plus four?' --set 1");
    expect(r.status == 0, "defend exits 0");
    expect(r.output == "What is ninety plus four?\n", "defend shows the defended text");

    const RunResult identity = run(kBin + " defend --config " +
                                   q(kFixtures / "config_identity.json") +
                                   " --text 'hello there'");
    expect(identity.output == "hello there\n", "identity defend echoes");

    expect(run(kBin + " defend --config " + q(kFixtures / "config_identity.json")).status == 2,
           "defend without --text exits 2");
}

void test_analyze() {
    const RunResult r = run(kBin + " analyze --before " + q(kFixtures / "analyze_before.txt") +
                            " --after " + q(kFixtures / "analyze_before.txt") +
                            " --wordlist " + q(kFixtures / "wordlist_small.txt"));
    expect(r.status == 0, "analyze exits 0");
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    expect(doc.at("len_ratio").get<double>() == 1.0, "self-comparison len_ratio is 1");
    expect(doc.at("uncommon_ratio").get<double>() == 1.0,
           "self-comparison uncommon_ratio is 1");
    expect(doc.at("n_pairs").get<int>() == 3, "analyze counts the pairs");

    const RunResult real = run(kBin + " analyze --before " +
                               q(kFixtures / "analyze_before.txt") + " --after " +
                               q(kFixtures / "analyze_after.txt") + " --wordlist " +
                               q(kFixtures / "wordlist_small.txt"));
    const nlohmann::json shrunk = nlohmann::json::parse(real.output);
    expect(shrunk.at("len_ratio").get<double>() < 1.0, "defended texts are shorter");

    expect(run(kBin + " analyze --before " + q(kFixtures / "analyze_before.txt") +
               " --wordlist " + q(kFixtures / "wordlist_small.txt"))
                   .status == 2,
           "analyze without --after exits 2");
}

}  // namespace

int main() {
    test_usage_and_exit_codes();
    test_evaluate_identity_and_out_override();
    test_evaluate_rtt3d_and_benign();
    test_compare_summaries();
    test_sweep_partial_failure();
    test_translate();
    test_defend();
    test_analyze();

    if (g_failures != 0) {
        std::cerr << g_failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
