// hypflow: run the flow or the static verification suites.
//
// Exit codes: 0 all verdicts/suites pass, 1 some verdict or suite failed,
// 2 usage, configuration or precondition error, 3 flow breakdown.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hypflow/hypflow.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kBreakdown = 3 };

struct Owned {
    char* p = nullptr;
    ~Owned() { hf_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

int report_error(hf_status st, const char* context) {
    std::cerr << "hypflow " << context << ": " << hf_status_name(st) << ": " << hf_last_error() << '\n';
    return st == HF_ERR_FLOW_BREAKDOWN ? kBreakdown : kUsage;
}

struct RunArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "all";
    std::optional<int> n;
    std::optional<std::string> shape;
    std::optional<std::uint64_t> seed;
    std::string resume_path;
};

int cmd_run(const RunArgs& a) {
    json config = json::object();
    if (!a.config_path.empty()) {
        const auto text = read_file(a.config_path);
        if (!text) {
            std::cerr << "hypflow run: cannot read " << a.config_path << '\n';
            return kUsage;
        }
        try {
            config = json::parse(*text);
        } catch (const json::exception& e) {
            std::cerr << "hypflow run: " << a.config_path << ": " << e.what() << '\n';
            return kUsage;
        }
        if (!config.is_object()) {
            std::cerr << "hypflow run: config must be a JSON object\n";
            return kUsage;
        }
    }
    if (a.n) config["n"] = *a.n;
    if (a.shape || a.seed) {
        json shape = config.contains("shape") ? config["shape"] : json{{"kind", "cosine_bump"}};
        if (a.shape) shape["kind"] = *a.shape;
        if (a.seed) shape["rng_seed"] = *a.seed;
        config["shape"] = shape;
    }
    const std::string config_text = config.dump();

    Owned hash;
    if (hf_status st = hf_config_hash(config_text.c_str(), &hash.p); st != HF_OK) {
        return report_error(st, "run: invalid config");
    }

    std::optional<std::string> checkpoint;
    if (!a.resume_path.empty()) {
        checkpoint = read_file(a.resume_path);
        if (!checkpoint) {
            std::cerr << "hypflow run: cannot read " << a.resume_path << '\n';
            return kUsage;
        }
    }

    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec) {
        std::cerr << "hypflow run: cannot create " << a.out_dir << ": " << ec.message() << '\n';
        return kUsage;
    }
    const fs::path out(a.out_dir);
    const std::string tag = hash.str();

    hf_series* series = nullptr;
    hf_state* state = nullptr;
    const hf_status st =
        hf_flow_run(config_text.c_str(), checkpoint ? checkpoint->c_str() : nullptr, &series, &state);
    if (st != HF_OK && st != HF_ERR_FLOW_BREAKDOWN) {
        return report_error(st, "run");
    }
    if (st == HF_ERR_FLOW_BREAKDOWN) {
        const int code = report_error(st, "run");
        Owned dump;
        if (state && hf_state_to_json(state, &dump.p) == HF_OK) {
            const auto path = out / ("breakdown-" + tag + ".json");
            write_file(path, dump.str());
            std::cerr << "last good state written to " << path.string() << '\n';
        }
        Owned partial;
        if (series && hf_series_emit(series, "json", &partial.p) == HF_OK) {
            write_file(out / ("series-" + tag + ".json"), partial.str());
        }
        hf_series_free(series);
        hf_state_free(state);
        return code;
    }

    const std::vector<std::string> formats =
        a.format == "all" ? std::vector<std::string>{"csv", "json", "svg"} : std::vector<std::string>{a.format};
    int code = kPass;
    for (const auto& f : formats) {
        Owned text;
        if (hf_status es = hf_series_emit(series, f.c_str(), &text.p); es != HF_OK) {
            code = report_error(es, "run: emit");
            break;
        }
        const auto path = out / ("series-" + tag + "." + f);
        if (!write_file(path, text.str())) {
            std::cerr << "hypflow run: cannot write " << path.string() << '\n';
            code = kUsage;
            break;
        }
    }
    if (code == kPass) {
        Owned snapshot;
        if (hf_state_to_json(state, &snapshot.p) == HF_OK) write_file(out / ("state-" + tag + ".json"), snapshot.str());

        int all_pass = 0;
        Owned report_json, report_text;
        if (hf_status vs = hf_series_verdicts(series, nullptr, &all_pass, &report_json.p, &report_text.p);
            vs != HF_OK) {
            code = report_error(vs, "run: verdicts");
        } else {
            write_file(out / ("verdicts-" + tag + ".json"), report_json.str());
            std::cout << "run " << tag << '\n' << report_text.str();
            code = all_pass ? kPass : kFail;
        }
    }
    hf_series_free(series);
    hf_state_free(state);
    return code;
}

struct CheckArgs {
    std::string only;
    std::optional<int> n;
    std::optional<std::string> shape;
    std::optional<std::uint64_t> seed;
};

int cmd_check(const CheckArgs& a) {
    json options = json::object();
    if (!a.only.empty()) options["only"] = a.only;
    if (a.n) options["n"] = *a.n;
    if (a.shape) options["shape"] = *a.shape;
    if (a.seed) options["seed"] = *a.seed;
    int all_pass = 0;
    Owned text, report;
    const std::string opts = options.dump();
    if (hf_status st = hf_check_run(opts.c_str(), &all_pass, &text.p, &report.p); st != HF_OK) {
        return report_error(st, "check");
    }
    std::cout << text.str();
    return all_pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inverse curvature flow of star-shaped hypersurfaces in hyperbolic space"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hf_version()));

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Integrate the flow and write series, plots and verdicts");
    run->add_option("--config", run_args.config_path, "Run configuration (JSON)")->check(CLI::ExistingFile);
    run->add_option("--out", run_args.out_dir, "Output directory")->capture_default_str();
    run->add_option("--format", run_args.format, "Series format")
        ->check(CLI::IsMember({"csv", "json", "svg", "all"}))
        ->capture_default_str();
    run->add_option("--n", run_args.n, "Ambient dimension (overrides the config)")->check(CLI::Range(3, 8));
    run->add_option("--shape", run_args.shape, "Initial shape kind (overrides the config)")
        ->check(CLI::IsMember({"sphere", "cosine_bump", "random_bandlimited"}));
    run->add_option("--seed", run_args.seed, "Seed for random_bandlimited shapes");
    run->add_option("--resume", run_args.resume_path, "Continue from a state checkpoint")
        ->check(CLI::ExistingFile);

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "Run the static verification suites");
    check->add_option("--only", check_args.only, "Run a single suite")
        ->check(CLI::IsMember({"trace-identities", "newton-maclaurin", "beckner", "inequalities", "gauss-bonnet"}));
    check->add_option("--n", check_args.n, "Restrict to one ambient dimension")->check(CLI::Range(3, 8));
    check->add_option("--shape", check_args.shape, "Shape family for the geometric suites")
        ->check(CLI::IsMember({"sphere", "cosine_bump", "random_bandlimited"}));
    check->add_option("--seed", check_args.seed, "Base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }
    if (run->parsed()) return cmd_run(run_args);
    return cmd_check(check_args);
}
