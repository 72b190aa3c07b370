#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "addbench/faulty_adder.hpp"
#include "addbench/probgen.hpp"

#include "json.hpp"

namespace addbench {

enum class ModelKind { live, simulated };

enum class ResponseStatus { ok, transport_error, timeout, refused };

std::string to_string(ResponseStatus s);
ResponseStatus response_status_from_string(const std::string& s);

struct RetryPolicy {
    int max_attempts = 3;
    int initial_backoff_ms = 500;
    int max_backoff_ms = 8000;
    int timeout_ms = 120000;
};

// One model entry from the run config. Live entries point at a
// chat-completion endpoint; simulated entries carry a fault profile.
struct ModelSpec {
    ModelKind kind = ModelKind::simulated;
    std::string name;

    // live
    std::string endpoint;
    std::string api;       // adapter id: "openai" | "anthropic" | "gemini"
    std::string model;     // provider-side model identifier
    std::string auth_env;  // environment variable holding the credential
    nlohmann::json request_params = nlohmann::json::object();

    // simulated
    FaultProfile fault_profile;
    std::uint64_t sim_seed = 0;
};

struct RawResponse {
    std::string problem_id;
    std::string text;
    ResponseStatus status = ResponseStatus::transport_error;
    double latency_ms = 0.0;
    int attempt_count = 1;
};

// Single query. Simulated specs are answered in-process and never fail;
// live specs go through the provider adapter with retry/backoff.
RawResponse query(const ModelSpec& spec, const Problem& problem, const RetryPolicy& retry = {});

// Queries every problem with at most max_in_flight live requests
// outstanding. Each finished response is appended to storage_path
// (JSON Lines) immediately; problems already present there are skipped,
// so an interrupted run resumes where it stopped. Returns one response
// per problem, aligned with the input order.
std::vector<RawResponse> query_suite(const ModelSpec& spec,
                                     const std::vector<Problem>& problems,
                                     int max_in_flight,
                                     const RetryPolicy& retry,
                                     const std::string& storage_path,
                                     const std::function<void(std::size_t, std::size_t)>& progress = {});

// Wire-format assembly for live providers, exposed for tests: returns the
// request body for the spec's adapter and extracts the assistant text from
// a provider response body.
nlohmann::json build_request_body(const ModelSpec& spec, const std::string& prompt);
std::optional<std::string> extract_response_text(const ModelSpec& spec, const nlohmann::json& body);

}  // namespace addbench
