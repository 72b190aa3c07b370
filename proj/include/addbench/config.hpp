#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "addbench/model_client.hpp"

#include "json.hpp"

namespace addbench {

struct AnalysisParams {
    int window = 10;       // moving-average width
    int modulus = 3;       // length-class split
    int n_target = 15;     // close-carry count filter for the geometric fit
    int edit_hist_d_lo = 40;
    int edit_hist_d_hi = 80;
};

struct RunConfig {
    std::uint64_t master_seed = 1;
    int d_min = 1;
    int d_max = 100;
    int per_length = 100;
    std::string output_dir = "runs/default";
    std::vector<ModelSpec> models;
    int max_in_flight = 4;
    RetryPolicy retry;
    AnalysisParams analysis;

    const ModelSpec& model(const std::string& name) const;  // throws if unknown

    // Checks ranges and, for live models, that credentials resolve.
    void validate() const;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
RunConfig load_config(const std::string& path);

FaultProfile fault_profile_from_json(const nlohmann::json& j);
nlohmann::json fault_profile_to_json(const FaultProfile& p);

}  // namespace addbench
