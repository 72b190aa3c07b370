#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "addbench/pipeline.hpp"

namespace {

using addbench::Manifest;
using addbench::RunConfig;
using addbench::StageOptions;

struct CommonArgs {
    std::string config_path;
    std::string run_dir_override;
    bool force = false;

    // optional overrides of config fields
    std::optional<std::uint64_t> master_seed;
    std::optional<int> d_min, d_max, per_length, max_in_flight;
    std::optional<int> window, modulus, n_target;
};

RunConfig load(const CommonArgs& args) {
    RunConfig config = addbench::load_config(args.config_path);
    if (!args.run_dir_override.empty()) config.output_dir = args.run_dir_override;
    if (args.master_seed) config.master_seed = *args.master_seed;
    if (args.d_min) config.d_min = *args.d_min;
    if (args.d_max) config.d_max = *args.d_max;
    if (args.per_length) config.per_length = *args.per_length;
    if (args.max_in_flight) config.max_in_flight = *args.max_in_flight;
    if (args.window) config.analysis.window = *args.window;
    if (args.modulus) config.analysis.modulus = *args.modulus;
    if (args.n_target) config.analysis.n_target = *args.n_target;
    config.validate();
    return config;
}

Manifest open_run(const RunConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output dir " + config.output_dir + ": " + ec.message());
    return Manifest::load_or_create(config.output_dir, config);
}

StageOptions options(const CommonArgs& args) {
    StageOptions opt;
    opt.force = args.force;
    opt.log = [](const std::string& msg) { std::cerr << msg << "\n"; };
    return opt;
}

std::vector<std::string> model_names(const RunConfig& config, const std::string& selected) {
    if (!selected.empty()) {
        config.model(selected);  // existence check
        return {selected};
    }
    std::vector<std::string> names;
    for (const auto& m : config.models) names.push_back(m.name);
    if (names.empty()) throw std::runtime_error("config declares no models");
    return names;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"addition benchmark pipeline: generate problems, query models, grade, classify, analyze"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string model;

    auto add_common = [&](CLI::App* cmd, bool with_model) {
        cmd->add_option("-c,--config", args.config_path, "run config (JSON)")->required();
        cmd->add_option("-r,--run", args.run_dir_override, "run directory (defaults to config output_dir)");
        cmd->add_flag("-f,--force", args.force, "recompute even when outputs are up to date");
        cmd->add_option("--master-seed", args.master_seed, "override suite master seed");
        cmd->add_option("--d-min", args.d_min, "override smallest operand length");
        cmd->add_option("--d-max", args.d_max, "override largest operand length");
        cmd->add_option("--per-length", args.per_length, "override problems per length");
        cmd->add_option("--max-in-flight", args.max_in_flight, "override live request concurrency");
        cmd->add_option("--window", args.window, "override moving-average window");
        cmd->add_option("--modulus", args.modulus, "override length-class modulus");
        cmd->add_option("--n-target", args.n_target, "override close-carry count filter");
        if (with_model) cmd->add_option("-m,--model", model, "restrict to one configured model");
        return cmd;
    };

    auto* cmd_generate = add_common(app.add_subcommand("generate", "write the problem suite"), false);
    auto* cmd_query = add_common(app.add_subcommand("query", "collect model responses"), true);
    auto* cmd_grade = add_common(app.add_subcommand("grade", "extract and grade answers"), true);
    auto* cmd_classify = add_common(app.add_subcommand("classify", "assign error classes"), true);
    auto* cmd_analyze = add_common(app.add_subcommand("analyze", "emit per-figure CSV tables"), false);
    auto* cmd_chart = add_common(app.add_subcommand("chart", "render figure CSVs to SVG"), false);
    auto* cmd_run_all = add_common(app.add_subcommand("run-all", "run every stage in order"), false);

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig config = load(args);
        const StageOptions opt = options(args);

        if (cmd_run_all->parsed()) {
            addbench::run_all(config, opt);
            return 0;
        }

        Manifest manifest = open_run(config);
        if (cmd_generate->parsed()) {
            std::cout << addbench::stage_generate(config, manifest, opt) << "\n";
        } else if (cmd_query->parsed()) {
            for (const auto& name : model_names(config, model))
                std::cout << addbench::stage_query(config, name, manifest, opt) << "\n";
        } else if (cmd_grade->parsed()) {
            for (const auto& name : model_names(config, model))
                std::cout << addbench::stage_grade(config, name, manifest, opt) << "\n";
        } else if (cmd_classify->parsed()) {
            for (const auto& name : model_names(config, model))
                std::cout << addbench::stage_classify(config, name, manifest, opt) << "\n";
        } else if (cmd_analyze->parsed()) {
            for (const auto& path : addbench::stage_analyze(config, manifest, opt)) std::cout << path << "\n";
        } else if (cmd_chart->parsed()) {
            for (const auto& path : addbench::stage_chart(config, manifest, opt)) std::cout << path << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
