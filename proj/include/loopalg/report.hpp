#ifndef LOOPALG_REPORT_HPP
#define LOOPALG_REPORT_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopalg/attach.hpp"

namespace loopalg {

using json = nlohmann::ordered_json;

struct ComponentReport {
    std::vector<std::string> generators;
    std::vector<std::string> cells;
    std::string freeness;
    std::string env_check;
    bool semi_inert = true;
    GradedDims h0_dims, j_dims, w_dims, k_dims;
    bool l0_stabilized = false;
    bool operator==(const ComponentReport&) const = default;
};

inline bool operator==(const CrossCheck& a, const CrossCheck& b) {
    return a.name == b.name && a.pass == b.pass && a.detail == b.detail;
}

struct ReachableBidegree {
    int dim = 0;
    int ycount = 0;
    long long words = 0;
    bool operator==(const ReachableBidegree&) const = default;
};

// Word counts per (dim, ycount) the cutoff makes reachable, by dimension
// DP over the stage's generators.
inline std::vector<ReachableBidegree> reachable_bidegrees_of(const PresentationSpec& space,
                                                             const std::vector<CellSpec>& cells,
                                                             int cutoff) {
    std::vector<std::pair<int, int>> gens;  // (dim, ycount)
    for (const GenSpec& g : space.generators) gens.emplace_back(g.dim, 0);
    for (const CellSpec& c : cells) gens.emplace_back(c.cell_dim - 1, 1);
    const int kmax = cutoff;
    std::vector<std::vector<long long>> count(
        static_cast<std::size_t>(cutoff) + 1,
        std::vector<long long>(static_cast<std::size_t>(kmax) + 1, 0));
    count[0][0] = 1;
    for (int n = 1; n <= cutoff; ++n)
        for (int k = 0; k <= kmax; ++k)
            for (const auto& [d, y] : gens)
                if (n - d >= 0 && k - y >= 0)
                    count[n][k] = checked_add(count[n][k], count[n - d][k - y]);
    std::vector<ReachableBidegree> out;
    for (int n = 1; n <= cutoff; ++n)
        for (int k = 0; k <= kmax; ++k)
            if (count[n][k] > 0) out.push_back({n, k, count[n][k]});
    return out;
}

struct StageReport {
    int index = 1;
    int cutoff = 0;
    std::vector<CellSpec> cells;
    std::vector<ReachableBidegree> reachable;
    std::vector<std::string> fields_checked;

    bool free_ok = true;
    std::string free_verdict;
    bool semi_inert = true;
    std::string semi_inert_verdict;

    GradedDims h0_dims, h1_dims, k_dims;
    std::vector<std::pair<int, std::string>> k_reps;
    std::vector<long long> loop_series, loop_series_inverse, ul0_series;
    std::vector<CrossCheck> cross_checks;
    std::vector<ComponentReport> components;

    std::string gr_form;  // "free-product" or "semidirect"
    PresentationSpec gr_presentation;
    std::vector<GenSpec> k_generators;

    bool operator==(const StageReport&) const = default;
};

// The full verdict record. Every verdict string carries its cutoff; the
// module-freeness criterion is dimension-level, so sidedness never enters
// the computation (noted in renders as the right-module convention).
struct AttachmentReport {
    std::string field;
    int cutoff = 0;
    std::vector<std::uint64_t> prime_samples;
    std::vector<std::string> notes;
    std::vector<StageReport> stages;
    PresentationSpec final_presentation;
    std::string overall;
    bool negative = false;
    std::optional<std::string> abort_reason;

    bool operator==(const AttachmentReport&) const = default;

    json to_json() const;
    static AttachmentReport from_json(const json& j);
    std::string render_text() const;
};

// --------------------------------------------------------------------------
// JSON

inline json dims_to_json(const GradedDims& d) {
    json o = json::object();
    for (const auto& [n, v] : d) o[std::to_string(n)] = v;
    return o;
}

inline GradedDims dims_from_json(const json& o) {
    GradedDims d;
    for (auto it = o.begin(); it != o.end(); ++it) d[std::stoi(it.key())] = it.value().get<long long>();
    return d;
}

inline json AttachmentReport::to_json() const {
    json j;
    j["field"] = field;
    j["cutoff"] = cutoff;
    j["primeSamples"] = prime_samples;
    j["notes"] = notes;
    j["overallVerdict"] = overall;
    j["negative"] = negative;
    if (abort_reason) j["abortReason"] = *abort_reason;
    j["stages"] = json::array();
    for (const StageReport& s : stages) {
        json js;
        js["index"] = s.index;
        js["cutoff"] = s.cutoff;
        js["cells"] = json::array();
        for (const CellSpec& c : s.cells)
            js["cells"].push_back({{"name", c.name}, {"cellDim", c.cell_dim}, {"attach", c.attach}});
        js["reachableBidegrees"] = json::array();
        for (const ReachableBidegree& b : s.reachable)
            js["reachableBidegrees"].push_back({b.dim, b.ycount, b.words});
        js["fieldsChecked"] = s.fields_checked;
        js["freeOk"] = s.free_ok;
        js["freeVerdict"] = s.free_verdict;
        js["semiInert"] = s.semi_inert;
        js["semiInertVerdict"] = s.semi_inert_verdict;
        js["h0Dims"] = dims_to_json(s.h0_dims);
        js["h1Dims"] = dims_to_json(s.h1_dims);
        js["kDims"] = dims_to_json(s.k_dims);
        js["kReps"] = json::array();
        for (const auto& [n, rep] : s.k_reps) js["kReps"].push_back({{"dim", n}, {"rep", rep}});
        js["loopSeries"] = s.loop_series;
        js["loopSeriesInverse"] = s.loop_series_inverse;
        js["ul0Series"] = s.ul0_series;
        js["crossChecks"] = json::array();
        for (const CrossCheck& c : s.cross_checks)
            js["crossChecks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        js["components"] = json::array();
        for (const ComponentReport& c : s.components) {
            json jc;
            jc["generators"] = c.generators;
            jc["cells"] = c.cells;
            jc["freeness"] = c.freeness;
            jc["envCheck"] = c.env_check;
            jc["semiInert"] = c.semi_inert;
            jc["h0Dims"] = dims_to_json(c.h0_dims);
            jc["jDims"] = dims_to_json(c.j_dims);
            jc["wDims"] = dims_to_json(c.w_dims);
            jc["kDims"] = dims_to_json(c.k_dims);
            jc["l0StabilizedZero"] = c.l0_stabilized;
            js["components"].push_back(jc);
        }
        js["grForm"] = s.gr_form;
        json jp;
        jp["generators"] = json::array();
        for (const GenSpec& g : s.gr_presentation.generators)
            jp["generators"].push_back({{"name", g.name}, {"dim", g.dim}});
        jp["relations"] = s.gr_presentation.relations;
        js["grPresentation"] = jp;
        js["kGenerators"] = json::array();
        for (const GenSpec& g : s.k_generators)
            js["kGenerators"].push_back({{"name", g.name}, {"dim", g.dim}});
        js["moduleSidedness"] = "right ((HL)_0 acting by the adjoint action; the series criterion is side-independent)";
        j["stages"].push_back(js);
    }
    json fp;
    fp["generators"] = json::array();
    for (const GenSpec& g : final_presentation.generators)
        fp["generators"].push_back({{"name", g.name}, {"dim", g.dim}});
    fp["relations"] = final_presentation.relations;
    j["finalPresentation"] = fp;
    return j;
}

inline AttachmentReport AttachmentReport::from_json(const json& j) {
    AttachmentReport r;
    r.field = j.at("field").get<std::string>();
    r.cutoff = j.at("cutoff").get<int>();
    r.prime_samples = j.at("primeSamples").get<std::vector<std::uint64_t>>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    r.overall = j.at("overallVerdict").get<std::string>();
    r.negative = j.at("negative").get<bool>();
    if (j.contains("abortReason")) r.abort_reason = j.at("abortReason").get<std::string>();
    for (const json& js : j.at("stages")) {
        StageReport s;
        s.index = js.at("index").get<int>();
        s.cutoff = js.at("cutoff").get<int>();
        for (const json& jc : js.at("cells"))
            s.cells.push_back(CellSpec{jc.at("name").get<std::string>(), jc.at("cellDim").get<int>(),
                                       jc.at("attach").get<std::string>()});
        for (const json& jb : js.at("reachableBidegrees"))
            s.reachable.push_back(ReachableBidegree{jb.at(0).get<int>(), jb.at(1).get<int>(),
                                                    jb.at(2).get<long long>()});
        s.fields_checked = js.at("fieldsChecked").get<std::vector<std::string>>();
        s.free_ok = js.at("freeOk").get<bool>();
        s.free_verdict = js.at("freeVerdict").get<std::string>();
        s.semi_inert = js.at("semiInert").get<bool>();
        s.semi_inert_verdict = js.at("semiInertVerdict").get<std::string>();
        s.h0_dims = dims_from_json(js.at("h0Dims"));
        s.h1_dims = dims_from_json(js.at("h1Dims"));
        s.k_dims = dims_from_json(js.at("kDims"));
        for (const json& jr : js.at("kReps"))
            s.k_reps.emplace_back(jr.at("dim").get<int>(), jr.at("rep").get<std::string>());
        s.loop_series = js.at("loopSeries").get<std::vector<long long>>();
        s.loop_series_inverse = js.at("loopSeriesInverse").get<std::vector<long long>>();
        s.ul0_series = js.at("ul0Series").get<std::vector<long long>>();
        for (const json& jc : js.at("crossChecks"))
            s.cross_checks.push_back(CrossCheck{jc.at("name").get<std::string>(),
                                                jc.at("pass").get<bool>(),
                                                jc.at("detail").get<std::string>()});
        for (const json& jc : js.at("components")) {
            ComponentReport c;
            c.generators = jc.at("generators").get<std::vector<std::string>>();
            c.cells = jc.at("cells").get<std::vector<std::string>>();
            c.freeness = jc.at("freeness").get<std::string>();
            c.env_check = jc.at("envCheck").get<std::string>();
            c.semi_inert = jc.at("semiInert").get<bool>();
            c.h0_dims = dims_from_json(jc.at("h0Dims"));
            c.j_dims = dims_from_json(jc.at("jDims"));
            c.w_dims = dims_from_json(jc.at("wDims"));
            c.k_dims = dims_from_json(jc.at("kDims"));
            c.l0_stabilized = jc.at("l0StabilizedZero").get<bool>();
            s.components.push_back(c);
        }
        s.gr_form = js.at("grForm").get<std::string>();
        for (const json& jg : js.at("grPresentation").at("generators"))
            s.gr_presentation.generators.push_back(
                GenSpec{jg.at("name").get<std::string>(), jg.at("dim").get<int>()});
        s.gr_presentation.relations =
            js.at("grPresentation").at("relations").get<std::vector<std::string>>();
        for (const json& jg : js.at("kGenerators"))
            s.k_generators.push_back(GenSpec{jg.at("name").get<std::string>(), jg.at("dim").get<int>()});
        r.stages.push_back(std::move(s));
    }
    for (const json& jg : j.at("finalPresentation").at("generators"))
        r.final_presentation.generators.push_back(
            GenSpec{jg.at("name").get<std::string>(), jg.at("dim").get<int>()});
    r.final_presentation.relations =
        j.at("finalPresentation").at("relations").get<std::vector<std::string>>();
    return r;
}

// --------------------------------------------------------------------------
// Text

inline std::string dims_str(const GradedDims& d) {
    if (d.empty()) return "0";
    std::string s = "{";
    bool first = true;
    for (const auto& [n, v] : d) {
        if (!first) s += ", ";
        s += std::to_string(n) + ": " + std::to_string(v);
        first = false;
    }
    return s + "}";
}

inline std::string series_str(const std::vector<long long>& c) {
    return TruncSeries(std::vector<long long>(c)).str();
}

inline std::string AttachmentReport::render_text() const {
    std::ostringstream os;
    os << "field " << field << ", cutoff " << cutoff;
    if (!prime_samples.empty() && field == "Q") {
        os << ", prime samples";
        for (auto p : prime_samples) os << " " << p;
    }
    os << "\n";
    for (const std::string& n : notes) os << "note: " << n << "\n";
    for (const StageReport& s : stages) {
        os << "stage " << s.index << " (cutoff " << s.cutoff << ")\n";
        os << "  cells:";
        if (s.cells.empty()) os << " none";
        for (const CellSpec& c : s.cells)
            os << " " << c.name << "=e^" << c.cell_dim << "[" << c.attach << "]";
        os << "\n";
        os << "  reachable bidegrees: " << s.reachable.size() << " (dim, ycount) cells of the grid\n";
        os << "  free:      " << s.free_verdict << "\n";
        os << "  semi-inert: " << s.semi_inert_verdict << "\n";
        os << "  (HL)_0 dims " << dims_str(s.h0_dims) << "\n";
        os << "  (HL)_1 dims " << dims_str(s.h1_dims) << "\n";
        os << "  K(z) dims   " << dims_str(s.k_dims) << "\n";
        for (const auto& [n, rep] : s.k_reps)
            os << "    K rep dim " << n << ": " << rep << "\n";
        os << "  loop series " << series_str(s.loop_series) << "\n";
        os << "  inverse     " << series_str(s.loop_series_inverse) << "\n";
        for (const CrossCheck& c : s.cross_checks)
            os << "  crosscheck " << c.name << ": " << (c.pass ? "pass" : "FAIL") << " (" << c.detail
               << ")\n";
        os << "  gr presentation (" << s.gr_form << "):";
        for (const GenSpec& g : s.gr_presentation.generators) os << " " << g.name << ":" << g.dim;
        os << " / " << s.gr_presentation.relations.size() << " relation(s)\n";
    }
    os << "final presentation:";
    for (const GenSpec& g : final_presentation.generators) os << " " << g.name << ":" << g.dim;
    os << "\n";
    for (const std::string& r : final_presentation.relations) os << "  relation " << r << "\n";
    os << "verdict: " << overall << "\n";
    return os.str();
}

// --------------------------------------------------------------------------
// Staged pipeline. Each semi-inert stage's gr presentation (space and K
// generators, relations extended by the attaching classes) becomes the next
// stage's space. A non-semi-inert stage aborts the chain with its index.

inline StageReport make_stage_report(int index, const PresentationSpec& space,
                                     const std::vector<CellSpec>& cells, const StageAnalysis& a,
                                     const std::vector<std::string>& k_names) {
    StageReport s;
    s.index = index;
    s.cutoff = a.cutoff;
    s.cells = cells;
    s.reachable = reachable_bidegrees_of(space, cells, a.cutoff);
    for (const FieldSpec& f : a.fields_checked) s.fields_checked.push_back(f.str());
    s.free_ok = a.free_ok;
    s.free_verdict = a.free_verdict;
    s.semi_inert = a.semi_inert;
    s.semi_inert_verdict = a.semi_inert_verdict;
    s.h0_dims = a.h0_dims;
    s.h1_dims = a.h1_dims;
    s.k_dims = a.k_dims;
    s.k_reps = a.k_reps;
    s.loop_series = a.loop_series.coeffs();
    s.loop_series_inverse = a.loop_series_inverse.coeffs();
    s.ul0_series = a.ul0_series.coeffs();
    s.cross_checks = a.cross_checks;
    for (std::size_t ci = 0; ci < a.components.size(); ++ci) {
        const ComponentSpec& comp = a.components[ci];
        const ComponentFieldData& d = a.main[ci];
        ComponentReport c;
        for (const GenSpec& g : comp.space.generators) c.generators.push_back(g.name);
        for (const CellSpec& cl : comp.cells) c.cells.push_back(cl.name);
        c.freeness = d.freeness.str();
        c.env_check = d.has_cells ? d.env.str() : "trivial (no cells)";
        c.semi_inert = d.semi_inert;
        c.h0_dims = d.h0_dims;
        c.j_dims = d.j_dims;
        c.w_dims = d.w_dims;
        c.k_dims = d.k_dims;
        c.l0_stabilized = d.l0_stabilized;
        s.components.push_back(std::move(c));
    }

    // K generators: one fresh generator per module generator, named by the
    // stage's kNames (sorted by dimension, ties in extraction order).
    std::vector<std::pair<int, std::string>> sorted = a.k_reps;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    if (!k_names.empty() && k_names.size() != sorted.size())
        throw std::invalid_argument("stage " + std::to_string(index) + ": kNames lists " +
                                    std::to_string(k_names.size()) + " names but K has " +
                                    std::to_string(sorted.size()) + " generators");
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        std::string name = !k_names.empty()
                               ? k_names[i]
                               : "k" + std::to_string(index) + "_" + std::to_string(i + 1);
        s.k_generators.push_back(GenSpec{name, sorted[i].first});
    }

    s.gr_form = a.semi_inert ? "free-product" : "semidirect";
    s.gr_presentation = space;
    for (const CellSpec& c : cells) {
        // A vanishing attaching class contributes no relation.
        if (a.zero_attach_cells.count(c.name)) continue;
        s.gr_presentation.relations.push_back(c.attach);
    }
    if (a.semi_inert)
        for (const GenSpec& g : s.k_generators) s.gr_presentation.generators.push_back(g);
    return s;
}

inline AttachmentReport analyze_problem(const AttachmentProblem& p, const AnalyzeOptions& opt = {}) {
    AttachmentReport r;
    r.field = p.field.str();
    r.cutoff = p.cutoff;
    if (p.field.is_rational()) r.prime_samples = p.prime_samples;
    r.notes.push_back(
        "enveloping series use the exterior/polynomial PBW form; valid over Q and F_p with p > 3");
    if (p.field.is_rational())
        r.notes.push_back(
            "freeness over subrings of Q is certified by sampling Q and the listed primes, "
            "through the stated cutoff only");

    PresentationSpec current = p.space;
    const std::size_t nstages = 1 + p.stages.size();
    for (std::size_t si = 0; si < nstages; ++si) {
        std::vector<CellSpec> cells;
        std::vector<std::string> k_names;
        int cutoff = p.cutoff;
        if (si == 0) {
            cells = p.cells;
            k_names = p.k_names;
        } else {
            const StageSpec& st = p.stages[si - 1];
            for (const GenSpec& g : st.space_add.generators) current.generators.push_back(g);
            for (const std::string& rel : st.space_add.relations) current.relations.push_back(rel);
            cells = st.cells;
            k_names = st.k_names;
            if (st.cutoff) cutoff = *st.cutoff;
        }
        StageAnalysis a = analyze_stage(current, cells, p.field, cutoff, p.prime_samples, opt);
        StageReport sr = make_stage_report(static_cast<int>(si) + 1, current, cells, a, k_names);
        const bool stage_negative = !sr.free_ok || !sr.semi_inert;
        r.negative = r.negative || stage_negative;
        r.stages.push_back(sr);
        if (stage_negative && si + 1 < nstages) {
            r.abort_reason = "stage " + std::to_string(si + 1) +
                             (sr.free_ok ? " is not semi-inert" : " is not free") + " <= " +
                             std::to_string(cutoff) + "; failing dims: K " + dims_str(sr.k_dims) +
                             ", (HL)_1 " + dims_str(sr.h1_dims) +
                             "; remaining stages not analyzed";
            r.final_presentation = current;
            r.overall = *r.abort_reason;
            return r;
        }
        current = sr.gr_presentation;
    }
    r.final_presentation = current;
    {
        std::ostringstream os;
        os << r.stages.size() << " stage(s): ";
        for (std::size_t i = 0; i < r.stages.size(); ++i) {
            const StageReport& s = r.stages[i];
            if (i) os << "; ";
            os << "stage " << s.index << " "
               << (s.free_ok ? (s.semi_inert ? "free and semi-inert" : "free, not semi-inert")
                             : "not free")
               << " <= " << s.cutoff;
        }
        r.overall = os.str();
    }
    return r;
}

}  // namespace loopalg

#endif  // LOOPALG_REPORT_HPP
