#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "addbench/classifier.hpp"
#include "addbench/config.hpp"
#include "addbench/digits.hpp"
#include "addbench/faulty_adder.hpp"
#include "addbench/grader.hpp"
#include "addbench/model_client.hpp"
#include "addbench/probgen.hpp"
#include "addbench/stats.hpp"

namespace py = pybind11;
using namespace addbench;

namespace {

nlohmann::json to_json(const py::handle& obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        nlohmann::json j = nlohmann::json::object();
        for (auto item : obj.cast<py::dict>()) j[py::str(item.first).cast<std::string>()] = to_json(item.second);
        return j;
    }
    if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
        nlohmann::json j = nlohmann::json::array();
        for (auto item : obj.cast<py::sequence>()) j.push_back(to_json(item));
        return j;
    }
    throw py::type_error("unsupported value in fault profile");
}

FaultProfile profile_from_dict(const py::dict& d) { return fault_profile_from_json(to_json(d)); }

Problem make_problem(const std::string& a, const std::string& b) {
    Problem p;
    p.a = DigitString::parse(a);
    p.b = DigitString::parse(b);
    p.d = static_cast<int>(p.a.length());
    p.id = "py";
    p.prompt = render_prompt(p.a, p.b);
    return p;
}

py::dict grade_text(const std::string& text, const std::string& a, const std::string& b) {
    const Problem p = make_problem(a, b);
    RawResponse r;
    r.problem_id = p.id;
    r.text = text;
    r.status = ResponseStatus::ok;
    const Graded g = extract_and_grade(r, p);
    py::dict out;
    out["extracted"] = g.extracted ? py::object(py::str(*g.extracted)) : py::none();
    out["correct"] = g.correct;
    out["edit_distance"] = g.edit_distance ? py::object(py::int_(*g.edit_distance)) : py::none();
    out["truth"] = g.truth;
    return out;
}

py::dict classify_text(const std::string& text, const std::string& a, const std::string& b) {
    const Problem p = make_problem(a, b);
    RawResponse r;
    r.problem_id = p.id;
    r.text = text;
    r.status = ResponseStatus::ok;
    const ErrorClass cls = classify(extract_and_grade(r, p), p);
    py::dict out;
    out["kind"] = to_string(cls.kind);
    out["offset"] = cls.offset ? py::object(py::int_(*cls.offset)) : py::none();
    out["matched_prefix_len"] =
        cls.matched_prefix_len ? py::object(py::int_(*cls.matched_prefix_len)) : py::none();
    if (cls.first_error) {
        py::dict fe;
        fe["position"] = cls.first_error->position;
        fe["delta"] = cls.first_error->delta;
        fe["next_column_sum"] = cls.first_error->next_column_sum
                                    ? py::object(py::int_(*cls.first_error->next_column_sum))
                                    : py::none();
        out["first_error"] = fe;
    } else {
        out["first_error"] = py::none();
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_addbench, m) {
    m.doc() = "Addition benchmark core: exact digit arithmetic, grading, error classification";

    m.def(
        "add", [](const std::string& a, const std::string& b) {
            return add(DigitString::parse(a), DigitString::parse(b)).str();
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "offsetsum",
        [](const std::string& a, const std::string& b, int s) {
            return offsetsum(DigitString::parse(a), DigitString::parse(b), s).str();
        },
        py::arg("a"), py::arg("b"), py::arg("s"));

    m.def(
        "column_sums", [](const std::string& a, const std::string& b) {
            return column_profile(DigitString::parse(a), DigitString::parse(b)).column_sums;
        },
        py::arg("a"), py::arg("b"), "Least significant column first, incoming carries included.");

    m.def(
        "close_carry_positions", [](const std::string& a, const std::string& b) {
            return column_profile(DigitString::parse(a), DigitString::parse(b)).close_carry_positions;
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "count_close_carries", [](const std::string& a, const std::string& b) {
            return count_close_carries(DigitString::parse(a), DigitString::parse(b));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "render_prompt", [](const std::string& a, const std::string& b) {
            return render_prompt(DigitString::parse(a), DigitString::parse(b));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "gen_suite",
        [](std::uint64_t master_seed, int d_min, int d_max, int per_length) {
            py::list out;
            for (const Problem& p : gen_suite(master_seed, d_min, d_max, per_length)) {
                py::dict d;
                d["id"] = p.id;
                d["a"] = p.a.str();
                d["b"] = p.b.str();
                d["d"] = p.d;
                d["prompt"] = p.prompt;
                out.append(d);
            }
            return out;
        },
        py::arg("master_seed"), py::arg("d_min") = 1, py::arg("d_max") = 100, py::arg("per_length") = 100);

    m.def("strip_format", [](const std::string& t) { return strip_format(t); }, py::arg("text"));

    m.def(
        "levenshtein", [](const std::string& x, const std::string& y) { return levenshtein(x, y); },
        py::arg("x"), py::arg("y"));

    m.def("grade", &grade_text, py::arg("text"), py::arg("a"), py::arg("b"));
    m.def("classify", &classify_text, py::arg("text"), py::arg("a"), py::arg("b"));

    m.def(
        "simulate",
        [](const std::string& a, const std::string& b, const py::dict& profile, std::uint64_t seed) {
            const Problem p = make_problem(a, b);
            Rng rng(seed);
            return simulate_response(p, profile_from_dict(profile), rng).text;
        },
        py::arg("a"), py::arg("b"), py::arg("profile"), py::arg("seed") = 0);

    m.def(
        "expected_accuracy",
        [](const std::string& a, const std::string& b, const py::dict& profile) {
            return expected_accuracy(make_problem(a, b), profile_from_dict(profile));
        },
        py::arg("a"), py::arg("b"), py::arg("profile"));

    m.def("token_groups", [](int d) { return token_groups(d); }, py::arg("d"));

    m.def(
        "moving_average",
        [](const std::vector<double>& series, int window) { return moving_average(series, window); },
        py::arg("series"), py::arg("window") = 10);

    m.def(
        "dft_spectrum", [](const std::vector<double>& signal) {
            const Spectrum s = dft_spectrum(signal);
            py::dict out;
            out["frequencies"] = s.frequencies;
            out["magnitudes"] = s.magnitudes;
            out["degenerate"] = s.degenerate;
            return out;
        },
        py::arg("signal"));
}
