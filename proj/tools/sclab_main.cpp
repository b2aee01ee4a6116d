// sclab: batch checker for supercyclicity, transitivity, criterion and
// semigroup/group scenarios described by JSON configs.
//
// Exit codes: 0 PASS, 1 FAIL, 2 config error, 3 numerical error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <sclab/sclab.hpp>

namespace {

struct CliOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    std::optional<double> eps;
    std::string format = "json";
    std::string out_path;
};

void add_common_flags(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--config", opts.config_path, "scenario config file (JSON)")
        ->required();
    cmd->add_option("--seed", opts.seed, "override the scenario seed");
    cmd->add_option("--budget", opts.budget, "override the enumeration budget");
    cmd->add_option("--eps", opts.eps, "override eps_density");
    cmd->add_option("--format", opts.format, "report format")
        ->check(CLI::IsMember({"json", "csv-plot"}));
    cmd->add_option("--out", opts.out_path, "write the report here instead of stdout");
}

int run_check(const std::string& check, const CliOptions& opts) {
    std::ifstream in(opts.config_path);
    if (!in)
        throw sclab::ConfigError("cannot open config file: " + opts.config_path);
    nlohmann::json cfg;
    try {
        in >> cfg;
    } catch (const nlohmann::json::parse_error& e) {
        throw sclab::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object())
        throw sclab::ConfigError("config root must be a JSON object");

    cfg["check"] = check;
    if (opts.seed)
        cfg["seed"] = *opts.seed;
    if (opts.budget)
        cfg["tolerances"]["budget"] = *opts.budget;
    if (opts.eps)
        cfg["tolerances"]["eps_density"] = *opts.eps;

    const sclab::VerdictReport report = sclab::run_scenario(cfg);
    const std::string payload = sclab::emit_report(
        report, opts.format == "json" ? sclab::ReportFormat::Json : sclab::ReportFormat::CsvPlot);

    if (opts.out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(opts.out_path);
        if (!out)
            throw sclab::ConfigError("cannot write report to " + opts.out_path);
        out << payload;
    }
    return report.verdict == sclab::Verdict::Pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for supercyclic sets of operators"};
    app.require_subcommand(1);

    CLI::App* check = app.add_subcommand("check", "run one scenario check");
    check->require_subcommand(1);

    static const char* kChecks[] = {"sc",       "transitive", "strict",
                                    "supertransitive", "gdelta",     "criterion",
                                    "semigroup", "group",      "tail"};
    CliOptions opts;
    std::string selected;
    for (const char* name : kChecks) {
        CLI::App* sub = check->add_subcommand(name);
        add_common_flags(sub, opts);
        sub->callback([&selected, name]() { selected = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // bad invocation is a config error
    }

    try {
        return run_check(selected, opts);
    } catch (const sclab::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const sclab::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
