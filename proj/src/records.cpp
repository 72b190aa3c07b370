#include "addbench/records.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace addbench {

nlohmann::json problem_to_json(const Problem& p) {
    return {{"id", p.id},
            {"a", p.a.str()},
            {"b", p.b.str()},
            {"d", p.d},
            {"prompt", p.prompt},
            {"seed_path",
             {{"master_seed", p.seed_path.master_seed},
              {"d", p.seed_path.length},
              {"replicate", p.seed_path.replicate}}}};
}

Problem problem_from_json(const nlohmann::json& j) {
    Problem p;
    p.id = j.at("id").get<std::string>();
    p.a = DigitString::parse(j.at("a").get<std::string>());
    p.b = DigitString::parse(j.at("b").get<std::string>());
    p.d = j.at("d").get<int>();
    p.prompt = j.at("prompt").get<std::string>();
    const auto& sp = j.at("seed_path");
    p.seed_path.master_seed = sp.at("master_seed").get<std::uint64_t>();
    p.seed_path.length = sp.at("d").get<int>();
    p.seed_path.replicate = sp.at("replicate").get<int>();
    return p;
}

nlohmann::json response_to_json(const RawResponse& r) {
    return {{"problem_id", r.problem_id},
            {"text", r.text},
            {"status", to_string(r.status)},
            {"latency_ms", r.latency_ms},
            {"attempt_count", r.attempt_count}};
}

RawResponse response_from_json(const nlohmann::json& j) {
    RawResponse r;
    r.problem_id = j.at("problem_id").get<std::string>();
    r.text = j.at("text").get<std::string>();
    r.status = response_status_from_string(j.at("status").get<std::string>());
    r.latency_ms = j.at("latency_ms").get<double>();
    r.attempt_count = j.at("attempt_count").get<int>();
    return r;
}

nlohmann::json graded_to_json(const Graded& g) {
    nlohmann::json j{{"problem_id", g.problem_id}, {"correct", g.correct}, {"truth", g.truth}};
    j["extracted"] = g.extracted ? nlohmann::json(*g.extracted) : nlohmann::json();
    j["edit_distance"] = g.edit_distance ? nlohmann::json(*g.edit_distance) : nlohmann::json();
    return j;
}

Graded graded_from_json(const nlohmann::json& j) {
    Graded g;
    g.problem_id = j.at("problem_id").get<std::string>();
    g.correct = j.at("correct").get<bool>();
    g.truth = j.at("truth").get<std::string>();
    if (!j.at("extracted").is_null()) g.extracted = j.at("extracted").get<std::string>();
    if (!j.at("edit_distance").is_null()) g.edit_distance = j.at("edit_distance").get<int>();
    return g;
}

nlohmann::json error_class_to_json(const ErrorClass& c) {
    nlohmann::json j{{"problem_id", c.problem_id}, {"kind", to_string(c.kind)}};
    j["offset"] = c.offset ? nlohmann::json(*c.offset) : nlohmann::json();
    j["matched_prefix_len"] = c.matched_prefix_len ? nlohmann::json(*c.matched_prefix_len) : nlohmann::json();
    if (c.first_error) {
        nlohmann::json fe{{"position", c.first_error->position}, {"delta", c.first_error->delta}};
        fe["next_column_sum"] =
            c.first_error->next_column_sum ? nlohmann::json(*c.first_error->next_column_sum) : nlohmann::json();
        j["first_error"] = fe;
    } else {
        j["first_error"] = nlohmann::json();
    }
    return j;
}

ErrorClass error_class_from_json(const nlohmann::json& j) {
    ErrorClass c;
    c.problem_id = j.at("problem_id").get<std::string>();
    c.kind = error_kind_from_string(j.at("kind").get<std::string>());
    if (!j.at("offset").is_null()) c.offset = j.at("offset").get<int>();
    if (!j.at("matched_prefix_len").is_null()) c.matched_prefix_len = j.at("matched_prefix_len").get<int>();
    if (!j.at("first_error").is_null()) {
        const auto& fe = j.at("first_error");
        FirstError f;
        f.position = fe.at("position").get<int>();
        f.delta = fe.at("delta").get<int>();
        if (!fe.at("next_column_sum").is_null()) f.next_column_sum = fe.at("next_column_sum").get<int>();
        c.first_error = f;
    }
    return c;
}

std::vector<nlohmann::json> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<nlohmann::json> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed JSON line");
        out.push_back(std::move(j));
    }
    return out;
}

void write_jsonl(const std::string& path, const std::vector<nlohmann::json>& lines) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& j : lines) out << j.dump() << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<Problem> read_problems_jsonl(const std::string& path) {
    std::vector<Problem> out;
    for (const auto& j : read_jsonl(path)) out.push_back(problem_from_json(j));
    return out;
}

std::vector<RawResponse> read_responses_jsonl(const std::string& path) {
    std::vector<RawResponse> out;
    for (const auto& j : read_jsonl(path)) out.push_back(response_from_json(j));
    return out;
}

std::vector<Graded> read_graded_jsonl(const std::string& path) {
    std::vector<Graded> out;
    for (const auto& j : read_jsonl(path)) out.push_back(graded_from_json(j));
    return out;
}

std::vector<ErrorClass> read_error_classes_jsonl(const std::string& path) {
    std::vector<ErrorClass> out;
    for (const auto& j : read_jsonl(path)) out.push_back(error_class_from_json(j));
    return out;
}

std::vector<Row> join_records(std::vector<Problem> problems,
                              std::vector<RawResponse> responses,
                              std::vector<Graded> graded,
                              std::vector<ErrorClass> classes) {
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(problems.size());
    for (std::size_t i = 0; i < problems.size(); ++i) index.emplace(problems[i].id, i);

    std::vector<Row> rows(problems.size());
    for (std::size_t i = 0; i < problems.size(); ++i) rows[i].problem = std::move(problems[i]);

    auto place = [&](const std::string& id, auto&& value, auto member, const char* what) {
        auto it = index.find(id);
        if (it == index.end())
            throw std::runtime_error(std::string(what) + " references unknown problem " + id);
        rows[it->second].*member = std::forward<decltype(value)>(value);
    };
    for (auto& r : responses) place(r.problem_id, std::move(r), &Row::response, "response");
    for (auto& g : graded) place(g.problem_id, std::move(g), &Row::graded, "graded record");
    for (auto& c : classes) place(c.problem_id, std::move(c), &Row::cls, "classified record");

    for (const Row& row : rows) {
        if (row.response.problem_id != row.problem.id)
            throw std::runtime_error("missing response for " + row.problem.id);
        if (row.graded.problem_id != row.problem.id)
            throw std::runtime_error("missing graded record for " + row.problem.id);
        if (row.cls.problem_id != row.problem.id)
            throw std::runtime_error("missing classified record for " + row.problem.id);
    }
    return rows;
}

}  // namespace addbench
