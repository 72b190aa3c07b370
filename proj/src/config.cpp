#include "addbench/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace addbench {

FaultProfile fault_profile_from_json(const nlohmann::json& j) {
    FaultProfile p;
    p.p_close = j.value("p_close", 0.0);
    p.p_runaway = j.value("p_runaway", 0.0);
    p.p_garbage = j.value("p_garbage", 0.0);
    if (j.contains("misalign_rate")) {
        const auto& r = j.at("misalign_rate");
        if (r.is_number()) {
            p.misalign_rate = {r.get<double>(), r.get<double>(), r.get<double>()};
        } else {
            if (!r.is_array() || r.size() != 3)
                throw std::invalid_argument("fault_profile: misalign_rate must be a number or 3 rates");
            for (std::size_t i = 0; i < 3; ++i) p.misalign_rate[i] = r[i].get<double>();
        }
    }
    if (j.contains("offset_dist")) {
        // keys are offsets as strings ("-2", "1", ...), values are weights
        for (auto it = j.at("offset_dist").begin(); it != j.at("offset_dist").end(); ++it) {
            const int offset = std::stoi(it.key());
            p.offset_weights[offset_to_index(offset)] = it.value().get<double>();
        }
    }
    p.decoration = decoration_from_string(j.value("decoration", "bare"));
    p.validate();
    return p;
}

nlohmann::json fault_profile_to_json(const FaultProfile& p) {
    nlohmann::json j;
    j["p_close"] = p.p_close;
    j["p_runaway"] = p.p_runaway;
    j["p_garbage"] = p.p_garbage;
    j["misalign_rate"] = {p.misalign_rate[0], p.misalign_rate[1], p.misalign_rate[2]};
    nlohmann::json dist = nlohmann::json::object();
    for (std::size_t i = 0; i < kOffsetCount; ++i) {
        if (p.offset_weights[i] != 0.0) dist[std::to_string(offset_from_index(i))] = p.offset_weights[i];
    }
    j["offset_dist"] = dist;
    j["decoration"] = to_string(p.decoration);
    return j;
}

namespace {

ModelSpec model_spec_from_json(const nlohmann::json& j) {
    ModelSpec spec;
    const std::string kind = j.at("kind").get<std::string>();
    spec.name = j.at("name").get<std::string>();
    if (kind == "simulated") {
        spec.kind = ModelKind::simulated;
        spec.fault_profile = fault_profile_from_json(j.value("fault_profile", nlohmann::json::object()));
        spec.sim_seed = j.value("sim_seed", std::uint64_t{0});
        if (j.contains("endpoint"))
            throw std::invalid_argument("model " + spec.name + ": simulated entries take no endpoint");
    } else if (kind == "live") {
        spec.kind = ModelKind::live;
        spec.endpoint = j.at("endpoint").get<std::string>();
        spec.api = j.at("api").get<std::string>();
        spec.model = j.value("model", spec.name);
        spec.auth_env = j.value("auth_env", std::string{});
        spec.request_params = j.value("request_params", nlohmann::json::object());
        if (j.contains("fault_profile"))
            throw std::invalid_argument("model " + spec.name + ": live entries take no fault_profile");
    } else {
        throw std::invalid_argument("model kind must be live or simulated: " + kind);
    }
    return spec;
}

nlohmann::json model_spec_to_json(const ModelSpec& spec) {
    nlohmann::json j;
    j["name"] = spec.name;
    if (spec.kind == ModelKind::simulated) {
        j["kind"] = "simulated";
        j["sim_seed"] = spec.sim_seed;
        j["fault_profile"] = fault_profile_to_json(spec.fault_profile);
    } else {
        j["kind"] = "live";
        j["endpoint"] = spec.endpoint;
        j["api"] = spec.api;
        j["model"] = spec.model;
        j["auth_env"] = spec.auth_env;
        j["request_params"] = spec.request_params;
    }
    return j;
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig c;
    c.master_seed = j.value("master_seed", std::uint64_t{1});
    if (j.contains("lengths")) {
        c.d_min = j.at("lengths").value("min", 1);
        c.d_max = j.at("lengths").value("max", 100);
    }
    c.per_length = j.value("per_length", 100);
    c.output_dir = j.value("output_dir", std::string("runs/default"));
    for (const auto& m : j.value("models", nlohmann::json::array())) c.models.push_back(model_spec_from_json(m));
    if (j.contains("concurrency")) {
        const auto& cc = j.at("concurrency");
        c.max_in_flight = cc.value("max_in_flight", 4);
        if (cc.contains("retry")) {
            const auto& r = cc.at("retry");
            c.retry.max_attempts = r.value("max_attempts", c.retry.max_attempts);
            c.retry.initial_backoff_ms = r.value("initial_backoff_ms", c.retry.initial_backoff_ms);
            c.retry.max_backoff_ms = r.value("max_backoff_ms", c.retry.max_backoff_ms);
            c.retry.timeout_ms = r.value("timeout_ms", c.retry.timeout_ms);
        }
    }
    if (j.contains("analysis")) {
        const auto& a = j.at("analysis");
        c.analysis.window = a.value("window", c.analysis.window);
        c.analysis.modulus = a.value("modulus", c.analysis.modulus);
        c.analysis.n_target = a.value("n_target", c.analysis.n_target);
        c.analysis.edit_hist_d_lo = a.value("edit_hist_d_lo", c.analysis.edit_hist_d_lo);
        c.analysis.edit_hist_d_hi = a.value("edit_hist_d_hi", c.analysis.edit_hist_d_hi);
    }
    return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json j;
    j["master_seed"] = c.master_seed;
    j["lengths"] = {{"min", c.d_min}, {"max", c.d_max}};
    j["per_length"] = c.per_length;
    j["output_dir"] = c.output_dir;
    j["models"] = nlohmann::json::array();
    for (const auto& m : c.models) j["models"].push_back(model_spec_to_json(m));
    j["concurrency"] = {{"max_in_flight", c.max_in_flight},
                        {"retry",
                         {{"max_attempts", c.retry.max_attempts},
                          {"initial_backoff_ms", c.retry.initial_backoff_ms},
                          {"max_backoff_ms", c.retry.max_backoff_ms},
                          {"timeout_ms", c.retry.timeout_ms}}}};
    j["analysis"] = {{"window", c.analysis.window},
                     {"modulus", c.analysis.modulus},
                     {"n_target", c.analysis.n_target},
                     {"edit_hist_d_lo", c.analysis.edit_hist_d_lo},
                     {"edit_hist_d_hi", c.analysis.edit_hist_d_hi}};
    return j;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error("config is not valid JSON: " + path);
    RunConfig c = config_from_json(j);
    c.validate();
    return c;
}

const ModelSpec& RunConfig::model(const std::string& name) const {
    for (const ModelSpec& m : models)
        if (m.name == name) return m;
    throw std::runtime_error("no such model in config: " + name);
}

void RunConfig::validate() const {
    if (d_min < 1 || d_max < d_min) throw std::invalid_argument("config: invalid length range");
    if (per_length < 1) throw std::invalid_argument("config: per_length must be >= 1");
    if (max_in_flight < 1) throw std::invalid_argument("config: max_in_flight must be >= 1");
    if (retry.max_attempts < 1) throw std::invalid_argument("config: max_attempts must be >= 1");
    if (output_dir.empty()) throw std::invalid_argument("config: output_dir is empty");
    for (const ModelSpec& m : models) {
        if (m.name.empty()) throw std::invalid_argument("config: model with empty name");
        if (m.kind == ModelKind::simulated) {
            m.fault_profile.validate();
        } else {
            if (m.endpoint.empty()) throw std::invalid_argument("model " + m.name + ": endpoint missing");
            if (m.api != "openai" && m.api != "anthropic" && m.api != "gemini")
                throw std::invalid_argument("model " + m.name + ": unknown api " + m.api);
            // Credentials only ever come from the environment.
            if (!m.auth_env.empty() && std::getenv(m.auth_env.c_str()) == nullptr)
                throw std::invalid_argument("model " + m.name + ": credential env var " + m.auth_env +
                                            " is not set");
        }
    }
}

}  // namespace addbench
