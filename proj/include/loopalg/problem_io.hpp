#ifndef LOOPALG_PROBLEM_IO_HPP
#define LOOPALG_PROBLEM_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopalg/dgl.hpp"

namespace loopalg {

struct ProblemFileError : std::runtime_error {
    // message carries the JSON pointer of the offending value
    explicit ProblemFileError(const std::string& pointer, const std::string& what)
        : std::runtime_error(pointer + ": " + what) {}
};

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const std::string& key,
                                     const std::string& ptr) {
    if (!j.is_object()) throw ProblemFileError(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ProblemFileError(ptr + "/" + key, "missing required field");
    return *it;
}

inline int get_int(const nlohmann::json& j, const std::string& ptr, int lo) {
    if (!j.is_number_integer())
        throw ProblemFileError(ptr, "expected an integer");
    int v = j.get<int>();
    if (v < lo) throw ProblemFileError(ptr, "expected an integer >= " + std::to_string(lo));
    return v;
}

inline std::string get_str(const nlohmann::json& j, const std::string& ptr) {
    if (!j.is_string()) throw ProblemFileError(ptr, "expected a string");
    return j.get<std::string>();
}

inline PresentationSpec parse_presentation(const nlohmann::json& j, const std::string& ptr) {
    PresentationSpec p;
    if (!j.is_object()) throw ProblemFileError(ptr, "expected an object");
    const nlohmann::json& gens = require(j, "generators", ptr);
    if (!gens.is_array()) throw ProblemFileError(ptr + "/generators", "expected an array");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string gptr = ptr + "/generators/" + std::to_string(i);
        p.generators.push_back(GenSpec{get_str(require(gens[i], "name", gptr), gptr + "/name"),
                                       get_int(require(gens[i], "dim", gptr), gptr + "/dim", 1)});
    }
    if (j.contains("relations")) {
        const nlohmann::json& rels = j.at("relations");
        if (!rels.is_array()) throw ProblemFileError(ptr + "/relations", "expected an array");
        for (std::size_t i = 0; i < rels.size(); ++i)
            p.relations.push_back(get_str(rels[i], ptr + "/relations/" + std::to_string(i)));
    }
    return p;
}

inline std::vector<CellSpec> parse_cells(const nlohmann::json& j, const std::string& ptr) {
    std::vector<CellSpec> cells;
    if (!j.is_array()) throw ProblemFileError(ptr, "expected an array");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string cptr = ptr + "/" + std::to_string(i);
        CellSpec c;
        c.name = get_str(require(j[i], "name", cptr), cptr + "/name");
        c.cell_dim = get_int(require(j[i], "cellDim", cptr), cptr + "/cellDim", 3);
        c.attach = get_str(require(j[i], "attach", cptr), cptr + "/attach");
        cells.push_back(std::move(c));
    }
    return cells;
}

inline std::vector<std::string> parse_names(const nlohmann::json& j, const std::string& ptr) {
    if (!j.is_array()) throw ProblemFileError(ptr, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_str(j[i], ptr + "/" + std::to_string(i)));
    return out;
}

}  // namespace detail

inline AttachmentProblem parse_problem(const nlohmann::json& j) {
    using namespace detail;
    AttachmentProblem p;
    if (!j.is_object()) throw ProblemFileError("", "expected a JSON object");
    if (j.contains("field")) {
        try {
            p.field = FieldSpec::parse(get_str(j.at("field"), "/field"));
        } catch (const std::invalid_argument& e) {
            throw ProblemFileError("/field", e.what());
        }
    }
    if (j.contains("cutoff")) p.cutoff = get_int(j.at("cutoff"), "/cutoff", 0);
    if (j.contains("primeSamples")) {
        const nlohmann::json& ps = j.at("primeSamples");
        if (!ps.is_array()) throw ProblemFileError("/primeSamples", "expected an array");
        p.prime_samples.clear();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const std::string pptr = "/primeSamples/" + std::to_string(i);
            int v = get_int(ps[i], pptr, 5);
            try {
                FieldSpec::prime_field(static_cast<std::uint64_t>(v));
            } catch (const std::invalid_argument& e) {
                throw ProblemFileError(pptr, e.what());
            }
            p.prime_samples.push_back(static_cast<std::uint64_t>(v));
        }
    }
    p.space = parse_presentation(require(j, "space", ""), "/space");
    if (j.contains("cells")) p.cells = parse_cells(j.at("cells"), "/cells");
    if (j.contains("kNames")) p.k_names = parse_names(j.at("kNames"), "/kNames");
    if (j.contains("stages")) {
        const nlohmann::json& st = j.at("stages");
        if (!st.is_array()) throw ProblemFileError("/stages", "expected an array");
        for (std::size_t i = 0; i < st.size(); ++i) {
            const std::string sptr = "/stages/" + std::to_string(i);
            if (!st[i].is_object()) throw ProblemFileError(sptr, "expected an object");
            StageSpec s;
            if (st[i].contains("spaceAdd"))
                s.space_add = parse_presentation(st[i].at("spaceAdd"), sptr + "/spaceAdd");
            if (st[i].contains("cells")) s.cells = parse_cells(st[i].at("cells"), sptr + "/cells");
            if (st[i].contains("kNames"))
                s.k_names = parse_names(st[i].at("kNames"), sptr + "/kNames");
            if (st[i].contains("cutoff")) s.cutoff = get_int(st[i].at("cutoff"), sptr + "/cutoff", 0);
            p.stages.push_back(std::move(s));
        }
    }
    return p;
}

inline AttachmentProblem parse_problem_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ProblemFileError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_problem(j);
}

inline AttachmentProblem load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProblemFileError("", "cannot open file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_problem_text(text);
}

}  // namespace loopalg

#endif  // LOOPALG_PROBLEM_IO_HPP
