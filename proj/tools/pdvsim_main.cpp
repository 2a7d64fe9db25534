#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdvsim/network.hpp"
#include "pdvsim/report.hpp"
#include "pdvsim/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitComparison = 3;

pdvsim::ScenarioSpec resolve_scenario(const std::string& ref) {
    if (pdvsim::is_builtin_scenario(ref)) return pdvsim::builtin_scenario(ref);
    return pdvsim::load_scenario(ref);
}

std::string default_out_dir(const std::string& scenario) {
    if (const char* env = std::getenv("PDVSIM_OUT_DIR"))
        return (std::filesystem::path(env) / scenario).string();
    return (std::filesystem::path("pdvsim_out") / scenario).string();
}

int cmd_run(const std::string& scenario_ref, std::optional<std::uint64_t> seed,
            std::optional<double> duration, std::string out_dir, const std::string& mode_name,
            const std::string& format) {
    auto mode = pdvsim::pdv_mode_from_name(mode_name);
    if (!mode) {
        std::cerr << "unknown --pdv-mode '" << mode_name << "'\n";
        return kExitValidation;
    }
    pdvsim::ScenarioSpec spec = resolve_scenario(scenario_ref);
    pdvsim::RunOptions opts;
    opts.seed = seed;
    opts.duration_s = duration;
    pdvsim::RunReport report = pdvsim::run_scenario(spec, opts);

    if (out_dir.empty()) out_dir = default_out_dir(spec.name);
    if (format == "csv" || format == "both") {
        auto paths = pdvsim::emit_report(report, out_dir, *mode);
        std::cerr << "wrote " << paths.size() << " files to " << out_dir << "\n";
    }
    if (format == "table" || format == "both")
        std::cout << pdvsim::render_table(report, *mode);
    return kExitOk;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b,
                const std::string& relation_name, double ratio,
                const std::vector<std::string>& class_names) {
    auto relation = pdvsim::compare_relation_from_name(relation_name);
    if (!relation) {
        std::cerr << "unknown --relation '" << relation_name << "'\n";
        return kExitValidation;
    }
    std::vector<pdvsim::Dscp> classes;
    for (const auto& c : class_names) {
        auto d = pdvsim::dscp_from_name(c);
        if (!d) {
            std::cerr << "unknown class '" << c << "'\n";
            return kExitValidation;
        }
        classes.push_back(*d);
    }
    auto a = pdvsim::load_summary_csv(
        (std::filesystem::path(dir_a) / "summary.csv").string());
    auto b = pdvsim::load_summary_csv(
        (std::filesystem::path(dir_b) / "summary.csv").string());
    auto verdicts = pdvsim::compare_summaries(a, b, *relation, ratio, classes);
    bool all_pass = true;
    for (const auto& v : verdicts) {
        std::printf("%-6s %-4s avg_a=%.6e avg_b=%.6e ratio=%.6e\n",
                    pdvsim::dscp_name(v.dscp).c_str(), v.pass ? "PASS" : "FAIL", v.avg_a,
                    v.avg_b, v.ratio);
        all_pass = all_pass && v.pass;
    }
    return all_pass ? kExitOk : kExitComparison;
}

int cmd_list() {
    for (const auto& name : pdvsim::builtin_scenario_names())
        std::cout << name << "  " << pdvsim::builtin_scenario_summary(name) << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    pdvsim::ScenarioSpec spec = pdvsim::load_scenario(path);
    std::cout << spec.name << ": OK (" << qos_mode_name(spec.qos_mode) << ", IPv"
              << spec.ip_version << ", " << spec.topology.nodes.size() << " nodes, "
              << spec.topology.links.size() << " links)\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"packet-level DES for DiffServ / MPLS-TE delay-variation studies"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a scenario and emit its report");
    std::string scenario_ref;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration;
    std::string out_dir;
    std::string mode_name = "consecutive-absolute";
    std::string format = "both";
    run->add_option("--scenario", scenario_ref, "built-in name or scenario file path")
        ->required();
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--duration", duration, "override the horizon, seconds");
    run->add_option("--out", out_dir, "output directory (default $PDVSIM_OUT_DIR/<name>)");
    run->add_option("--pdv-mode", mode_name,
                    "consecutive-absolute | consecutive-signed | variance");
    run->add_option("--format", format, "csv | table | both")
        ->check(CLI::IsMember({"csv", "table", "both"}));

    auto* compare = app.add_subcommand("compare", "compare two report directories");
    std::string dir_a, dir_b, relation_name;
    double ratio = 1.0;
    std::vector<std::string> class_names;
    compare->add_option("--a", dir_a, "first report directory")->required();
    compare->add_option("--b", dir_b, "second report directory")->required();
    compare->add_option("--relation", relation_name,
                        "leq-avg-pdv | geq-avg-pdv | ratio-bound")
        ->required();
    compare->add_option("--ratio", ratio, "bound for ratio-bound");
    compare->add_option("--classes", class_names, "restrict to these classes");

    auto* list = app.add_subcommand("list-scenarios", "list the built-in scenarios");

    auto* validate = app.add_subcommand("validate", "parse and validate a scenario file");
    std::string validate_path;
    validate->add_option("--scenario", validate_path, "scenario file path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(scenario_ref, seed, duration, out_dir, mode_name, format);
        if (compare->parsed())
            return cmd_compare(dir_a, dir_b, relation_name, ratio, class_names);
        if (list->parsed()) return cmd_list();
        if (validate->parsed()) return cmd_validate(validate_path);
    } catch (const pdvsim::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const pdvsim::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const pdvsim::ClassMismatchError& e) {
        std::cerr << "comparison error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const pdvsim::SimError& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
