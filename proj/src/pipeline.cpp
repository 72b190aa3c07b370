#include "addbench/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "addbench/classifier.hpp"
#include "addbench/grader.hpp"
#include "addbench/sha256.hpp"
#include "addbench/stats.hpp"
#include "addbench/svg.hpp"
#include "addbench/table.hpp"

namespace fs = std::filesystem;

namespace addbench {

namespace {

std::string now_iso8601() {
    const auto t = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void log_line(const StageOptions& opt, const std::string& msg) {
    if (opt.log) opt.log(msg);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

Manifest Manifest::load_or_create(const std::string& run_dir, const RunConfig& config) {
    Manifest m;
    m.run_dir_ = run_dir;
    const std::string path = (fs::path(run_dir) / "manifest.json").string();
    if (fs::exists(path)) {
        std::ifstream in(path);
        m.doc_ = nlohmann::json::parse(in, nullptr, false);
        if (m.doc_.is_discarded()) throw std::runtime_error("corrupt manifest: " + path);
    } else {
        m.doc_ = {{"version", 1},
                  {"created_at", now_iso8601()},
                  {"config", config_to_json(config)},
                  {"stages", nlohmann::json::object()}};
    }
    return m;
}

std::string Manifest::path(const std::string& name) const {
    return (fs::path(run_dir_) / name).string();
}

void Manifest::record_stage(const std::string& stage,
                            const std::vector<std::string>& inputs,
                            const std::vector<std::string>& outputs,
                            const nlohmann::json& params) {
    nlohmann::json entry;
    entry["recorded_at"] = now_iso8601();
    entry["params"] = params;
    entry["inputs"] = nlohmann::json::object();
    entry["outputs"] = nlohmann::json::object();
    for (const std::string& f : inputs) entry["inputs"][f] = sha256_file_hex(path(f));
    for (const std::string& f : outputs) entry["outputs"][f] = sha256_file_hex(path(f));
    doc_["stages"][stage] = entry;
    doc_["updated_at"] = now_iso8601();
}

bool Manifest::stage_up_to_date(const std::string& stage) const {
    const auto& stages = doc_.at("stages");
    if (!stages.contains(stage)) return false;
    const auto& entry = stages.at(stage);
    for (const auto& section : {"inputs", "outputs"}) {
        for (auto it = entry.at(section).begin(); it != entry.at(section).end(); ++it) {
            const std::string file = path(it.key());
            if (!fs::exists(file)) return false;
            if (sha256_file_hex(file) != it.value().get<std::string>()) return false;
        }
    }
    return true;
}

void Manifest::require_inputs(const std::string& stage, const std::vector<std::string>& inputs) const {
    const auto& stages = doc_.at("stages");
    for (const std::string& f : inputs) {
        const std::string file = path(f);
        if (!fs::exists(file))
            throw std::runtime_error(stage + ": missing input " + f + " (run the upstream stage first)");
        std::string recorded;
        for (auto it = stages.begin(); it != stages.end(); ++it) {
            const auto& outputs = it.value().at("outputs");
            if (outputs.contains(f)) recorded = outputs.at(f).get<std::string>();
        }
        if (recorded.empty())
            throw std::runtime_error(stage + ": input " + f + " is not recorded in the manifest " +
                                     "(run the upstream stage first)");
        if (sha256_file_hex(file) != recorded)
            throw std::runtime_error(stage + ": stale pipeline, " + f +
                                     " no longer matches the manifest digest; re-run upstream stages");
    }
}

void Manifest::save() const {
    write_text(path("manifest.json"), doc_.dump(2) + "\n");
}

std::string stage_generate(const RunConfig& config, Manifest& manifest, const StageOptions& opt) {
    const std::string name = "problems.jsonl";
    if (!opt.force && manifest.stage_up_to_date("generate")) {
        log_line(opt, "generate: up to date");
        return manifest.path(name);
    }
    const auto suite = gen_suite(config.master_seed, config.d_min, config.d_max, config.per_length);
    std::vector<nlohmann::json> lines;
    lines.reserve(suite.size());
    for (const Problem& p : suite) lines.push_back(problem_to_json(p));
    write_jsonl(manifest.path(name), lines);
    manifest.record_stage("generate", {}, {name},
                          {{"master_seed", config.master_seed},
                           {"d_min", config.d_min},
                           {"d_max", config.d_max},
                           {"per_length", config.per_length}});
    manifest.save();
    log_line(opt, "generate: wrote " + std::to_string(suite.size()) + " problems");
    return manifest.path(name);
}

std::string stage_query(const RunConfig& config, const std::string& model_name, Manifest& manifest,
                        const StageOptions& opt) {
    const ModelSpec& spec = config.model(model_name);
    const std::string stage = "query:" + model_name;
    const std::string out_name = "responses-" + model_name + ".jsonl";
    if (!opt.force && manifest.stage_up_to_date(stage)) {
        log_line(opt, stage + ": up to date");
        return manifest.path(out_name);
    }
    manifest.require_inputs(stage, {"problems.jsonl"});
    const auto problems = read_problems_jsonl(manifest.path("problems.jsonl"));
    const auto responses = query_suite(spec, problems, config.max_in_flight, config.retry,
                                       manifest.path(out_name), [&](std::size_t done, std::size_t total) {
                                           if (opt.log && (done % 500 == 0 || done == total))
                                               opt.log(stage + ": " + std::to_string(done) + "/" +
                                                       std::to_string(total));
                                       });
    // Rewrite in problem order so the stage output is deterministic.
    std::vector<nlohmann::json> lines;
    lines.reserve(responses.size());
    for (const RawResponse& r : responses) lines.push_back(response_to_json(r));
    write_jsonl(manifest.path(out_name), lines);
    manifest.record_stage(stage, {"problems.jsonl"}, {out_name},
                          {{"max_in_flight", config.max_in_flight},
                           {"request_params", spec.kind == ModelKind::live ? spec.request_params
                                                                           : nlohmann::json::object()}});
    manifest.save();
    log_line(opt, stage + ": " + std::to_string(responses.size()) + " responses");
    return manifest.path(out_name);
}

std::string stage_grade(const RunConfig& config, const std::string& model_name, Manifest& manifest,
                        const StageOptions& opt) {
    (void)config;
    const std::string stage = "grade:" + model_name;
    const std::string in_name = "responses-" + model_name + ".jsonl";
    const std::string out_name = "graded-" + model_name + ".jsonl";
    if (!opt.force && manifest.stage_up_to_date(stage)) {
        log_line(opt, stage + ": up to date");
        return manifest.path(out_name);
    }
    manifest.require_inputs(stage, {"problems.jsonl", in_name});
    const auto problems = read_problems_jsonl(manifest.path("problems.jsonl"));
    auto responses = read_responses_jsonl(manifest.path(in_name));

    std::unordered_map<std::string, const Problem*> by_id;
    for (const Problem& p : problems) by_id.emplace(p.id, &p);

    std::vector<nlohmann::json> lines;
    lines.reserve(responses.size());
    for (const RawResponse& r : responses) {
        auto it = by_id.find(r.problem_id);
        if (it == by_id.end()) throw std::runtime_error("response references unknown problem " + r.problem_id);
        lines.push_back(graded_to_json(extract_and_grade(r, *it->second)));
    }
    write_jsonl(manifest.path(out_name), lines);
    manifest.record_stage(stage, {"problems.jsonl", in_name}, {out_name});
    manifest.save();
    log_line(opt, stage + ": " + std::to_string(lines.size()) + " graded");
    return manifest.path(out_name);
}

std::string stage_classify(const RunConfig& config, const std::string& model_name, Manifest& manifest,
                           const StageOptions& opt) {
    (void)config;
    const std::string stage = "classify:" + model_name;
    const std::string in_name = "graded-" + model_name + ".jsonl";
    const std::string out_name = "classified-" + model_name + ".jsonl";
    if (!opt.force && manifest.stage_up_to_date(stage)) {
        log_line(opt, stage + ": up to date");
        return manifest.path(out_name);
    }
    manifest.require_inputs(stage, {"problems.jsonl", in_name});
    const auto problems = read_problems_jsonl(manifest.path("problems.jsonl"));
    const auto graded = read_graded_jsonl(manifest.path(in_name));

    std::unordered_map<std::string, const Problem*> by_id;
    for (const Problem& p : problems) by_id.emplace(p.id, &p);

    std::vector<nlohmann::json> lines;
    lines.reserve(graded.size());
    for (const Graded& g : graded) {
        auto it = by_id.find(g.problem_id);
        if (it == by_id.end())
            throw std::runtime_error("graded record references unknown problem " + g.problem_id);
        lines.push_back(error_class_to_json(classify(g, *it->second)));
    }
    write_jsonl(manifest.path(out_name), lines);
    manifest.record_stage(stage, {"problems.jsonl", in_name}, {out_name});
    manifest.save();
    log_line(opt, stage + ": " + std::to_string(lines.size()) + " classified");
    return manifest.path(out_name);
}

std::vector<Row> load_rows(const Manifest& manifest, const std::string& model_name) {
    return join_records(read_problems_jsonl(manifest.path("problems.jsonl")),
                        read_responses_jsonl(manifest.path("responses-" + model_name + ".jsonl")),
                        read_graded_jsonl(manifest.path("graded-" + model_name + ".jsonl")),
                        read_error_classes_jsonl(manifest.path("classified-" + model_name + ".jsonl")));
}

namespace {

void write_meta(const std::string& csv_path, const nlohmann::json& meta) {
    const std::string path = csv_path.substr(0, csv_path.size() - 4) + ".meta.json";
    write_text(path, meta.dump(2) + "\n");
}

}  // namespace

std::vector<std::string> stage_analyze(const RunConfig& config, Manifest& manifest, const StageOptions& opt) {
    const std::string stage = "analyze";
    const std::vector<std::string> figure_names = {
        "figures/figure1_accuracy.csv",  "figures/figure2_error_types.csv",
        "figures/figure4_edit_hist.csv", "figures/figure5_heatmap.csv",
        "figures/figure6_offsets.csv",   "figures/figure7_mod3.csv",
        "figures/figure8_spectra.csv",   "figures/figure9_geometric.csv"};

    std::vector<std::string> inputs = {"problems.jsonl"};
    for (const ModelSpec& m : config.models) {
        inputs.push_back("responses-" + m.name + ".jsonl");
        inputs.push_back("graded-" + m.name + ".jsonl");
        inputs.push_back("classified-" + m.name + ".jsonl");
    }
    if (!opt.force && manifest.stage_up_to_date(stage)) {
        log_line(opt, "analyze: up to date");
        std::vector<std::string> paths;
        for (const auto& f : figure_names) paths.push_back(manifest.path(f));
        return paths;
    }
    manifest.require_inputs(stage, inputs);
    fs::create_directories(fs::path(manifest.run_dir()) / "figures");

    Table fig1{{"model", "d", "n", "correct", "accuracy", "std_err", "moving_avg"}, {}};
    Table fig2{{"model", "d", "kind", "count"}, {}};
    Table fig4{{"model", "edit_distance", "kind", "count"}, {}};
    Table fig5{{"model", "delta", "next_column_sum", "count"}, {}};
    Table fig6{{"model", "offset", "count"}, {}};
    Table fig7{{"model", "mod_class", "d", "n", "accuracy", "std_err"}, {}};
    Table fig8{{"model", "frequency", "magnitude"}, {}};
    Table fig9{{"model", "i", "observed_count", "observed_rate", "predicted", "ci_lo", "ci_hi"}, {}};
    nlohmann::json fit_meta = nlohmann::json::object();
    nlohmann::json spectra_meta = nlohmann::json::object();

    for (const ModelSpec& m : config.models) {
        const auto rows = load_rows(manifest, m.name);

        const auto acc = accuracy_by_length(rows);
        std::vector<double> acc_series;
        acc_series.reserve(acc.size());
        for (const auto& la : acc) acc_series.push_back(la.accuracy);
        const auto ma = moving_average(acc_series, config.analysis.window);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            fig1.rows.push_back({m.name, std::to_string(acc[i].d), std::to_string(acc[i].n),
                                 std::to_string(acc[i].correct), format_double(acc[i].accuracy),
                                 format_double(acc[i].std_err), format_double(ma[i])});
        }

        for (const auto& kc : error_type_by_length(rows))
            fig2.rows.push_back({m.name, std::to_string(kc.key), to_string(kc.kind), std::to_string(kc.count)});

        for (const auto& kc :
             edit_distance_histogram(rows, config.analysis.edit_hist_d_lo, config.analysis.edit_hist_d_hi))
            fig4.rows.push_back({m.name, std::to_string(kc.key), to_string(kc.kind), std::to_string(kc.count)});

        for (const auto& cell : first_error_heatmap(rows))
            fig5.rows.push_back({m.name, std::to_string(cell.delta), std::to_string(cell.next_column_sum),
                                 std::to_string(cell.count)});

        for (const auto& oc : offset_histogram(rows))
            fig6.rows.push_back({m.name, std::to_string(oc.offset), std::to_string(oc.count)});

        const auto classes = mod_split(acc, config.analysis.modulus);
        for (int cls = 0; cls < config.analysis.modulus; ++cls) {
            for (const auto& la : classes[static_cast<std::size_t>(cls)]) {
                fig7.rows.push_back({m.name, std::to_string(cls), std::to_string(la.d), std::to_string(la.n),
                                     format_double(la.accuracy), format_double(la.std_err)});
            }
        }

        const auto signal = misalignment_rate_signal(rows, config.d_min, config.d_max);
        if (signal.size() >= 8) {
            const Spectrum spec = dft_spectrum(signal);
            spectra_meta[m.name] = {{"degenerate", spec.degenerate}, {"signal_len", signal.size()}};
            for (std::size_t k = 0; k < spec.frequencies.size(); ++k)
                fig8.rows.push_back(
                    {m.name, format_double(spec.frequencies[k]), format_double(spec.magnitudes[k])});
        } else {
            spectra_meta[m.name] = {{"skipped", "signal shorter than 8 samples"}};
        }

        const GeomFit fit = fit_geometric(rows, config.analysis.n_target);
        fit_meta[m.name] = {{"p", fit.p}, {"sample_size", fit.sample_size}};
        for (int i = 0; i < fit.n_target && fit.sample_size > 0; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            fig9.rows.push_back({m.name, std::to_string(i), std::to_string(fit.observed_counts[idx]),
                                 format_double(fit.observed_rate[idx]), format_double(fit.predicted[idx]),
                                 format_double(fit.ci_lo[idx]), format_double(fit.ci_hi[idx])});
        }
    }

    fig1.write_csv(manifest.path(figure_names[0]));
    write_meta(manifest.path(figure_names[0]), {{"window", config.analysis.window}});
    fig2.write_csv(manifest.path(figure_names[1]));
    write_meta(manifest.path(figure_names[1]), {{"kinds", "error kinds only; correct and no_answer excluded"}});
    fig4.write_csv(manifest.path(figure_names[2]));
    write_meta(manifest.path(figure_names[2]),
               {{"d_lo", config.analysis.edit_hist_d_lo}, {"d_hi", config.analysis.edit_hist_d_hi}});
    fig5.write_csv(manifest.path(figure_names[3]));
    write_meta(manifest.path(figure_names[3]),
               {{"includes", "all incorrect ok responses with a computable first error"}});
    fig6.write_csv(manifest.path(figure_names[4]));
    write_meta(manifest.path(figure_names[4]), {{"source", "misalignment-classified responses"}});
    fig7.write_csv(manifest.path(figure_names[5]));
    write_meta(manifest.path(figure_names[5]), {{"modulus", config.analysis.modulus}});
    fig8.write_csv(manifest.path(figure_names[6]));
    write_meta(manifest.path(figure_names[6]),
               {{"signal", "misalignment rate per length"}, {"mean_removed", true}, {"models", spectra_meta}});
    fig9.write_csv(manifest.path(figure_names[7]));
    write_meta(manifest.path(figure_names[7]),
               {{"n_target", config.analysis.n_target},
                {"ci_method", "binomial normal approximation around the predicted pmf, 95%"},
                {"models", fit_meta}});

    std::vector<std::string> meta_names;
    for (const auto& f : figure_names) meta_names.push_back(f.substr(0, f.size() - 4) + ".meta.json");
    std::vector<std::string> outputs = figure_names;
    outputs.insert(outputs.end(), meta_names.begin(), meta_names.end());
    manifest.record_stage(stage, inputs, outputs,
                          {{"window", config.analysis.window},
                           {"modulus", config.analysis.modulus},
                           {"n_target", config.analysis.n_target}});
    manifest.save();
    log_line(opt, "analyze: wrote figure tables");

    std::vector<std::string> paths;
    for (const auto& f : figure_names) paths.push_back(manifest.path(f));
    return paths;
}

std::vector<std::string> stage_chart(const RunConfig& config, Manifest& manifest, const StageOptions& opt) {
    const std::string stage = "chart";
    std::vector<std::string> outputs;

    const std::vector<std::string> figure_inputs = {
        "figures/figure1_accuracy.csv",  "figures/figure2_error_types.csv",
        "figures/figure4_edit_hist.csv", "figures/figure5_heatmap.csv",
        "figures/figure6_offsets.csv",   "figures/figure7_mod3.csv",
        "figures/figure8_spectra.csv",   "figures/figure9_geometric.csv"};
    if (!opt.force && manifest.stage_up_to_date(stage)) {
        log_line(opt, "chart: up to date");
        return outputs;
    }
    manifest.require_inputs(stage, figure_inputs);

    auto emit = [&](const std::string& name, const Table& plot, ChartKind kind, const std::string& title) {
        const std::string rel = "figures/" + name;
        write_text(manifest.path(rel), emit_svg_chart(plot, kind, title));
        outputs.push_back(rel);
    };

    {  // accuracy curves: raw points and moving average per model
        const Table t = Table::read_csv(manifest.path(figure_inputs[0]));
        Table plot{{"series", "d", "accuracy"}, {}};
        const auto cm = t.column("model"), cd = t.column("d"), ca = t.column("accuracy"),
                   cma = t.column("moving_avg");
        for (const auto& r : t.rows) {
            plot.rows.push_back({r[cm], r[cd], r[ca]});
            plot.rows.push_back({r[cm] + " (avg)", r[cd], r[cma]});
        }
        emit("figure1_accuracy.svg", plot, ChartKind::line, "accuracy by operand length");
    }
    {  // stacked error kinds per model
        const Table t = Table::read_csv(manifest.path(figure_inputs[1]));
        const auto cm = t.column("model"), cd = t.column("d"), ck = t.column("kind"), cc = t.column("count");
        for (const ModelSpec& m : config.models) {
            Table plot{{"kind", "d", "count"}, {}};
            for (const auto& r : t.rows)
                if (r[cm] == m.name) plot.rows.push_back({r[ck], r[cd], r[cc]});
            emit("figure2_error_types-" + m.name + ".svg", plot, ChartKind::bar,
                 "error kinds by length: " + m.name);
        }
    }
    {
        const Table t = Table::read_csv(manifest.path(figure_inputs[2]));
        const auto cm = t.column("model"), ce = t.column("edit_distance"), ck = t.column("kind"),
                   cc = t.column("count");
        for (const ModelSpec& m : config.models) {
            Table plot{{"kind", "edit_distance", "count"}, {}};
            for (const auto& r : t.rows)
                if (r[cm] == m.name) plot.rows.push_back({r[ck], r[ce], r[cc]});
            emit("figure4_edit_hist-" + m.name + ".svg", plot, ChartKind::bar,
                 "edit distance of mistakes: " + m.name);
        }
    }
    {
        const Table t = Table::read_csv(manifest.path(figure_inputs[3]));
        const auto cm = t.column("model"), cd = t.column("delta"), cs = t.column("next_column_sum"),
                   cc = t.column("count");
        for (const ModelSpec& m : config.models) {
            Table plot{{"delta", "next_column_sum", "count"}, {}};
            for (const auto& r : t.rows)
                if (r[cm] == m.name) plot.rows.push_back({r[cd], r[cs], r[cc]});
            emit("figure5_heatmap-" + m.name + ".svg", plot, ChartKind::heatmap,
                 "first error delta vs next column sum: " + m.name);
        }
    }
    {
        const Table t = Table::read_csv(manifest.path(figure_inputs[4]));
        Table plot{{"model", "offset", "count"}, {}};
        const auto cm = t.column("model"), co = t.column("offset"), cc = t.column("count");
        for (const auto& r : t.rows) plot.rows.push_back({r[cm], r[co], r[cc]});
        emit("figure6_offsets.svg", plot, ChartKind::bar, "misalignment offsets");
    }
    {
        const Table t = Table::read_csv(manifest.path(figure_inputs[5]));
        const auto cm = t.column("model"), cls = t.column("mod_class"), cd = t.column("d"),
                   ca = t.column("accuracy"), cse = t.column("std_err");
        for (const ModelSpec& m : config.models) {
            Table plot{{"class", "d", "accuracy", "lo", "hi"}, {}};
            for (const auto& r : t.rows) {
                if (r[cm] != m.name) continue;
                const double a = std::stod(r[ca]), se = std::stod(r[cse]);
                plot.rows.push_back({"d mod 3 = " + r[cls], r[cd], r[ca], format_double(a - se),
                                     format_double(a + se)});
            }
            emit("figure7_mod3-" + m.name + ".svg", plot, ChartKind::line,
                 "accuracy split by length mod 3: " + m.name);
        }
    }
    {
        const Table t = Table::read_csv(manifest.path(figure_inputs[6]));
        Table plot{{"model", "frequency", "magnitude"}, {}};
        const auto cm = t.column("model"), cf = t.column("frequency"), cg = t.column("magnitude");
        for (const auto& r : t.rows) plot.rows.push_back({r[cm], r[cf], r[cg]});
        emit("figure8_spectra.svg", plot, ChartKind::line, "misalignment rate spectra");
    }
    {
        const Table t = Table::read_csv(manifest.path(figure_inputs[7]));
        const auto cm = t.column("model"), ci = t.column("i"), co = t.column("observed_rate"),
                   cp = t.column("predicted"), clo = t.column("ci_lo"), chi = t.column("ci_hi");
        for (const ModelSpec& m : config.models) {
            Table plot{{"series", "i", "rate", "lo", "hi"}, {}};
            for (const auto& r : t.rows) {
                if (r[cm] != m.name) continue;
                plot.rows.push_back({"observed", r[ci], r[co], r[co], r[co]});
                plot.rows.push_back({"geometric model", r[ci], r[cp], r[clo], r[chi]});
            }
            emit("figure9_geometric-" + m.name + ".svg", plot, ChartKind::line,
                 "correct close carries before first error: " + m.name);
        }
    }

    manifest.record_stage(stage, figure_inputs, outputs);
    manifest.save();
    log_line(opt, "chart: wrote " + std::to_string(outputs.size()) + " SVG files");
    return outputs;
}

void run_all(const RunConfig& config, const StageOptions& opt) {
    config.validate();
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw std::runtime_error("cannot create output dir " + config.output_dir + ": " + ec.message());
    Manifest manifest = Manifest::load_or_create(config.output_dir, config);
    stage_generate(config, manifest, opt);
    for (const ModelSpec& m : config.models) {
        stage_query(config, m.name, manifest, opt);
        stage_grade(config, m.name, manifest, opt);
        stage_classify(config, m.name, manifest, opt);
    }
    stage_analyze(config, manifest, opt);
    stage_chart(config, manifest, opt);
}

}  // namespace addbench
