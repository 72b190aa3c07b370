#include "addbench/model_client.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "addbench/records.hpp"

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
// plain http builds still work; https endpoints then fail with a clear error
#endif
#include "httplib.h"

namespace addbench {

std::string to_string(ResponseStatus s) {
    switch (s) {
        case ResponseStatus::ok: return "ok";
        case ResponseStatus::transport_error: return "transport_error";
        case ResponseStatus::timeout: return "timeout";
        case ResponseStatus::refused: return "refused";
    }
    throw std::logic_error("unknown response status");
}

ResponseStatus response_status_from_string(const std::string& s) {
    if (s == "ok") return ResponseStatus::ok;
    if (s == "transport_error") return ResponseStatus::transport_error;
    if (s == "timeout") return ResponseStatus::timeout;
    if (s == "refused") return ResponseStatus::refused;
    throw std::invalid_argument("unknown response status: " + s);
}

namespace {

struct SplitUrl {
    std::string base;  // scheme://host[:port]
    std::string path;  // /path...
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw std::invalid_argument("endpoint is not a URL: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string credential(const ModelSpec& spec) {
    if (spec.auth_env.empty()) return {};
    const char* v = std::getenv(spec.auth_env.c_str());
    if (!v) throw std::runtime_error("credential env var not set: " + spec.auth_env);
    return v;
}

// Concatenated text parts at a JSON path like candidates[0].content.parts[*].text.
std::optional<std::string> join_text_parts(const nlohmann::json& parts, const char* key) {
    std::string text;
    bool found = false;
    for (const auto& part : parts) {
        if (part.contains(key) && part[key].is_string()) {
            text += part[key].get<std::string>();
            found = true;
        }
    }
    if (!found) return std::nullopt;
    return text;
}

}  // namespace

nlohmann::json build_request_body(const ModelSpec& spec, const std::string& prompt) {
    nlohmann::json body;
    if (spec.api == "openai") {
        body["model"] = spec.model;
        body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", prompt}}});
    } else if (spec.api == "anthropic") {
        body["model"] = spec.model;
        body["max_tokens"] = 8192;  // overridable through request_params
        body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", prompt}}});
    } else if (spec.api == "gemini") {
        body["contents"] = nlohmann::json::array({{{"parts", nlohmann::json::array({{{"text", prompt}}})}}});
    } else {
        throw std::invalid_argument("unknown provider api: " + spec.api);
    }
    for (auto it = spec.request_params.begin(); it != spec.request_params.end(); ++it) {
        body[it.key()] = it.value();
    }
    return body;
}

std::optional<std::string> extract_response_text(const ModelSpec& spec, const nlohmann::json& body) {
    try {
        if (spec.api == "openai") {
            const auto& msg = body.at("choices").at(0).at("message");
            if (msg.contains("content") && msg["content"].is_string()) return msg["content"].get<std::string>();
            return std::nullopt;
        }
        if (spec.api == "anthropic") {
            return join_text_parts(body.at("content"), "text");
        }
        if (spec.api == "gemini") {
            return join_text_parts(body.at("candidates").at(0).at("content").at("parts"), "text");
        }
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    throw std::invalid_argument("unknown provider api: " + spec.api);
}

namespace {

httplib::Headers auth_headers(const ModelSpec& spec, const std::string& key) {
    httplib::Headers headers;
    if (key.empty()) return headers;
    if (spec.api == "openai") {
        headers.emplace("Authorization", "Bearer " + key);
    } else if (spec.api == "anthropic") {
        headers.emplace("x-api-key", key);
        headers.emplace("anthropic-version", "2023-06-01");
    } else if (spec.api == "gemini") {
        headers.emplace("x-goog-api-key", key);
    }
    return headers;
}

RawResponse query_live(const ModelSpec& spec, const Problem& problem, const RetryPolicy& retry) {
    RawResponse out;
    out.problem_id = problem.id;
    out.status = ResponseStatus::transport_error;

    const SplitUrl url = split_url(spec.endpoint);
    const std::string key = credential(spec);
    const httplib::Headers headers = auth_headers(spec, key);
    const std::string body = build_request_body(spec, problem.prompt).dump();

    const auto start = std::chrono::steady_clock::now();
    int backoff_ms = retry.initial_backoff_ms;
    for (int attempt = 1; attempt <= retry.max_attempts; ++attempt) {
        out.attempt_count = attempt;
        httplib::Client client(url.base);
        client.set_connection_timeout(std::chrono::milliseconds(retry.timeout_ms));
        client.set_read_timeout(std::chrono::milliseconds(retry.timeout_ms));
        client.set_write_timeout(std::chrono::milliseconds(retry.timeout_ms));

        httplib::Result res = client.Post(url.path, headers, body, "application/json");
        bool retryable = false;
        if (!res) {
            const auto err = res.error();
            out.status = (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
                          err == httplib::Error::Write)
                             ? ResponseStatus::timeout
                             : ResponseStatus::transport_error;
            retryable = true;
        } else if (res->status == 401 || res->status == 403) {
            out.status = ResponseStatus::refused;
            retryable = false;
        } else if (res->status == 429 || res->status == 408 || res->status >= 500) {
            out.status = res->status == 408 ? ResponseStatus::timeout : ResponseStatus::transport_error;
            retryable = true;  // rate limits and server errors back off and retry
        } else if (res->status != 200) {
            out.status = ResponseStatus::transport_error;
            retryable = false;
        } else {
            nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
            std::optional<std::string> text;
            if (!parsed.is_discarded()) text = extract_response_text(spec, parsed);
            if (text && !text->empty()) {
                out.text = std::move(*text);
                out.status = ResponseStatus::ok;
            } else {
                out.status = ResponseStatus::transport_error;  // malformed or empty completion
                retryable = true;
            }
        }

        if (out.status == ResponseStatus::ok || !retryable || attempt == retry.max_attempts) break;
        std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
        backoff_ms = std::min(backoff_ms * 2, retry.max_backoff_ms);
    }
    out.latency_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (out.status != ResponseStatus::ok) out.text.clear();
    return out;
}

}  // namespace

RawResponse query(const ModelSpec& spec, const Problem& problem, const RetryPolicy& retry) {
    if (spec.kind == ModelKind::simulated) {
        Rng rng(derive_seed(spec.sim_seed,
                            {static_cast<std::uint64_t>(problem.seed_path.length),
                             static_cast<std::uint64_t>(problem.seed_path.replicate)}));
        return simulate_response(problem, spec.fault_profile, rng);
    }
    return query_live(spec, problem, retry);
}

std::vector<RawResponse> query_suite(const ModelSpec& spec,
                                     const std::vector<Problem>& problems,
                                     int max_in_flight,
                                     const RetryPolicy& retry,
                                     const std::string& storage_path,
                                     const std::function<void(std::size_t, std::size_t)>& progress) {
    if (max_in_flight < 1) throw std::invalid_argument("query_suite: max_in_flight must be >= 1");

    // Resume: anything already in run storage is complete.
    std::unordered_map<std::string, RawResponse> done;
    if (std::filesystem::exists(storage_path)) {
        for (RawResponse& r : read_responses_jsonl(storage_path)) done.emplace(r.problem_id, std::move(r));
    }

    std::ofstream store(storage_path, std::ios::app);
    if (!store) throw std::runtime_error("cannot open run storage: " + storage_path);

    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < problems.size(); ++i) {
        if (!done.contains(problems[i].id)) pending.push_back(i);
    }

    std::vector<RawResponse> fresh(pending.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> finished{0};
    std::mutex store_mu;

    const int workers =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(max_in_flight), pending.size()));
    auto run_worker = [&]() {
        for (;;) {
            const std::size_t slot = next.fetch_add(1);
            if (slot >= pending.size()) return;
            RawResponse r = query(spec, problems[pending[slot]], retry);
            {
                // single appender keeps lines whole
                std::lock_guard<std::mutex> lock(store_mu);
                store << response_to_json(r).dump() << '\n';
                store.flush();
            }
            fresh[slot] = std::move(r);
            const std::size_t count = finished.fetch_add(1) + 1;
            if (progress) progress(done.size() + count, problems.size());
        }
    };

    if (workers <= 1) {
        run_worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(run_worker);
        for (auto& t : pool) t.join();
    }
    if (!store) throw std::runtime_error("write to run storage failed: " + storage_path);

    for (std::size_t slot = 0; slot < pending.size(); ++slot)
        done.emplace(fresh[slot].problem_id, std::move(fresh[slot]));

    std::vector<RawResponse> out;
    out.reserve(problems.size());
    for (const Problem& p : problems) {
        auto it = done.find(p.id);
        if (it == done.end()) throw std::logic_error("query_suite: missing response for " + p.id);
        out.push_back(it->second);
    }
    return out;
}

}  // namespace addbench
