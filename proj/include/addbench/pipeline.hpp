#pragma once

#include <functional>
#include <string>
#include <vector>

#include "addbench/config.hpp"
#include "addbench/records.hpp"

#include "json.hpp"

namespace addbench {

// Per-run manifest: a config snapshot plus the digest of every stage file.
// Stages refuse to run when their inputs no longer match the recorded
// digests, and become no-ops when their outputs already do.
class Manifest {
public:
    static Manifest load_or_create(const std::string& run_dir, const RunConfig& config);

    void record_stage(const std::string& stage,
                      const std::vector<std::string>& inputs,
                      const std::vector<std::string>& outputs,
                      const nlohmann::json& params = nlohmann::json::object());

    // True when the stage exists and all of its recorded files still match.
    bool stage_up_to_date(const std::string& stage) const;

    // Throws when a required input file is missing or differs from the
    // digest recorded by the upstream stage.
    void require_inputs(const std::string& stage, const std::vector<std::string>& inputs) const;

    void save() const;

    const std::string& run_dir() const { return run_dir_; }
    std::string path(const std::string& name) const;

private:
    std::string run_dir_;
    nlohmann::json doc_;
};

struct StageOptions {
    bool force = false;  // recompute even when up to date
    std::function<void(const std::string&)> log;
};

// Stage drivers used by the CLI; each writes its files under the run dir
// and registers them in the manifest.
std::string stage_generate(const RunConfig& config, Manifest& manifest, const StageOptions& opt = {});
std::string stage_query(const RunConfig& config, const std::string& model_name, Manifest& manifest,
                        const StageOptions& opt = {});
std::string stage_grade(const RunConfig& config, const std::string& model_name, Manifest& manifest,
                        const StageOptions& opt = {});
std::string stage_classify(const RunConfig& config, const std::string& model_name, Manifest& manifest,
                           const StageOptions& opt = {});
std::vector<std::string> stage_analyze(const RunConfig& config, Manifest& manifest,
                                       const StageOptions& opt = {});
std::vector<std::string> stage_chart(const RunConfig& config, Manifest& manifest,
                                     const StageOptions& opt = {});

// generate -> query/grade/classify per model -> analyze -> chart
void run_all(const RunConfig& config, const StageOptions& opt = {});

// Loads and joins the four stage files for one model.
std::vector<Row> load_rows(const Manifest& manifest, const std::string& model_name);

}  // namespace addbench
