#pragma once

#include <string>
#include <vector>

#include "addbench/classifier.hpp"
#include "addbench/grader.hpp"
#include "addbench/model_client.hpp"
#include "addbench/probgen.hpp"

#include "json.hpp"

namespace addbench {

nlohmann::json problem_to_json(const Problem& p);
Problem problem_from_json(const nlohmann::json& j);

nlohmann::json response_to_json(const RawResponse& r);
RawResponse response_from_json(const nlohmann::json& j);

nlohmann::json graded_to_json(const Graded& g);
Graded graded_from_json(const nlohmann::json& j);

nlohmann::json error_class_to_json(const ErrorClass& c);
ErrorClass error_class_from_json(const nlohmann::json& j);

std::vector<nlohmann::json> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<nlohmann::json>& lines);

std::vector<Problem> read_problems_jsonl(const std::string& path);
std::vector<RawResponse> read_responses_jsonl(const std::string& path);
std::vector<Graded> read_graded_jsonl(const std::string& path);
std::vector<ErrorClass> read_error_classes_jsonl(const std::string& path);

// One fully joined pipeline row. The analysis stage works on these.
struct Row {
    Problem problem;
    RawResponse response;
    Graded graded;
    ErrorClass cls;
};

// Joins the four stage files by problem_id, in problem order. Throws when a
// downstream record is missing or references an unknown problem.
std::vector<Row> join_records(std::vector<Problem> problems,
                              std::vector<RawResponse> responses,
                              std::vector<Graded> graded,
                              std::vector<ErrorClass> classes);

}  // namespace addbench
