// Acceptance suite: one criterion per line, PASS/FAIL, nonzero exit on any
// failure. Tolerances are exact (integer) everywhere; the two runtime gates
// are wall-clock bounds.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "loopalg/loopalg.hpp"

using namespace loopalg;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back(s); }

void expect(bool ok, const std::string& what) {
    if (!ok) note("expected: " + what);
}

void criterion(int idx, const std::string& desc, const std::function<void()>& fn) {
    g_notes.clear();
    auto t0 = std::chrono::steady_clock::now();
    try {
        fn();
    } catch (const std::exception& e) {
        note(std::string("exception: ") + e.what());
    }
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = g_notes.empty();
    if (!pass) ++g_failures;
    std::printf("%s criterion %d: %s (%.1fs)\n", pass ? "PASS" : "FAIL", idx, desc.c_str(), secs);
    for (const std::string& n : g_notes) std::printf("     %s\n", n.c_str());
    std::fflush(stdout);
}

const CorpusCase& corpus_case(const std::string& name) {
    for (const CorpusCase& c : corpus())
        if (c.name == name) return c;
    throw std::runtime_error("missing corpus case " + name);
}

AttachmentReport analyze_case(const std::string& name) {
    return analyze_problem(parse_problem_text(corpus_case(name).problem_json));
}

GradedDims sparse_dims(const std::vector<long long>& coeffs) {
    GradedDims d;
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        if (coeffs[i]) d[static_cast<int>(i)] = coeffs[i];
    return d;
}

std::map<std::string, AttachmentReport> g_reports;

int run_cli(const std::string& args) {
    std::string cmd = std::string(LOOPALG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// ---------------------------------------------------------------------------

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    DglModel<RationalField> model(RationalField{}, PresentationSpec{{{"x", 2}, {"y", 2}}, {}},
                                  {{"a", 8, "[[x,y],x]"}, {"b", 8, "[[x,y],y]"}}, 18);
    auto u = parse_bracket_expr<RationalField>("[a,y] - [b,x]", model.ctx());
    expect(model.differential(u).is_zero(), "d(u) = 0 for u = [a,y] - [b,x]");

    AttachmentReport r = analyze_case("two_cone");
    g_reports.emplace("two_cone", r);
    const StageReport& s = r.stages.at(0);
    expect(s.h0_dims == GradedDims{{2, 2}, {4, 1}}, "(HL)_0 dims exactly {2:2, 4:1, n>=5:0}, got " +
                                                        dims_str(s.h0_dims));
    expect(s.free_ok && s.free_verdict == "consistent-with-free <= 18 over Q, Fp:5, Fp:7",
           "check_free consistent-with-free <= 18 over Q, F5, F7; got: " + s.free_verdict);
    expect(s.semi_inert, "check_semi_inert true");
    expect(s.k_dims == GradedDims{{9, 1}}, "K(z) = z^9, got " + dims_str(s.k_dims));
    expect(sparse_dims(s.loop_series_inverse) == GradedDims{{2, -2}, {6, 2}, {8, -1}, {9, -1}} &&
               s.loop_series_inverse.at(0) == 1,
           "loop series inverse = (1-z^2)^2 (1-z^4) - z^9 coefficientwise");
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    expect(secs <= 30.0, "runtime <= 30 s (measured " + std::to_string(secs) + ")");
}

void criterion2() {
    DglModel<RationalField> model(RationalField{},
                                  PresentationSpec{{{"x", 2}, {"y", 2}, {"z", 2}}, {}},
                                  {{"a", 6, "[y,z]"}, {"b", 6, "[z,x]"}, {"c", 6, "[x,y]"}}, 18);
    auto w = parse_bracket_expr<RationalField>("[x,a] + [y,b] + [z,c]", model.ctx());
    expect(model.differential(w).is_zero(), "d(w) = 0 for w = [x,a] + [y,b] + [z,c]");

    AttachmentReport r = analyze_case("fat_wedge");
    g_reports.emplace("fat_wedge", r);
    const StageReport& s = r.stages.at(0);
    expect(s.h0_dims == GradedDims{{2, 3}}, "(HL)_0 dims {2:3, else 0}, got " + dims_str(s.h0_dims));
    expect(s.free_ok, "check_free passes: " + s.free_verdict);
    expect(s.k_dims == GradedDims{{7, 1}}, "K(z) = z^7, got " + dims_str(s.k_dims));
    expect(sparse_dims(s.loop_series_inverse) == GradedDims{{2, -3}, {4, 3}, {6, -1}, {7, -1}} &&
               s.loop_series_inverse.at(0) == 1,
           "loop series inverse = (1-z^2)^3 - z^7 exactly");
    bool anick_pass = false;
    for (const CrossCheck& c : s.cross_checks)
        if (c.name == "anick-vs-gr-presentation" && c.pass) anick_pass = true;
    expect(anick_pass, "Anick crossCheck passes");
}

void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    DglModel<RationalField> model(RationalField{}, PresentationSpec{{{"w1", 9}, {"w2", 9}}, {}},
                                  {{"e", 29, "[[w1,w2],w1]"}, {"g", 29, "[[w1,w2],w2]"}}, 46);
    auto u = parse_bracket_expr<RationalField>("[e,w2] + [g,w1]", model.ctx());
    expect(model.differential(u).is_zero(), "d([e,w2] + [g,w1]) = 0");

    AttachmentReport r = analyze_case("three_cone_stage2");
    g_reports.emplace("three_cone_stage2", r);
    const StageReport& s = r.stages.at(0);
    expect(s.free_ok && s.semi_inert, "stage verdicts: " + s.free_verdict + "; " + s.semi_inert_verdict);
    expect(s.k_dims == GradedDims{{37, 1}}, "K'(z) = z^37 exactly, got " + dims_str(s.k_dims));
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    expect(secs <= 120.0, "runtime <= 120 s (measured " + std::to_string(secs) + ")");
}

void criterion4() {
    AttachmentReport r = analyze_case("odd_tower");
    g_reports.emplace("odd_tower", r);
    expect(r.stages.size() == 3, "three stages analyzed");
    for (const StageReport& s : r.stages)
        expect(s.free_ok && s.semi_inert,
               "stage " + std::to_string(s.index) + " free and semi-inert");
    expect(r.final_presentation.relations.empty(), "final presentation is relation-free");

    // Loop series equals the PBW series of the free Lie dims on the final
    // generators, with those dims produced by Witt inversion of 1/(1-V(z)).
    const int N = r.stages.back().cutoff;
    GradedDims v;
    for (const GenSpec& g : r.final_presentation.generators) v[g.dim] += 1;
    expect(v == GradedDims{{2, 2}, {4, 2}, {6, 2}, {8, 2}}, "final generator dims");
    TruncSeries tensor = (TruncSeries::one(N) - TruncSeries::from_dims(v, N)).inverse();
    GradedDims free_lie = witt_inverse(tensor);
    TruncSeries expect_series = pbw_series(free_lie, N);
    expect(r.stages.back().loop_series == expect_series.coeffs(),
           "loop series equals pbw_series of the free Lie dims on the final generators");
}

void criterion5() {
    using QF = RationalField;
    std::mt19937 rng(52);

    // (a) graded antisymmetry and Jacobi in T(V), mixed parity, >= 20 cases
    {
        auto c = make_algebra(QF{}, Alphabet({{"s", 2, GenKind::Space}, {"t", 3, GenKind::Space}}));
        auto random_elem = [&](int dim) {
            TensorElem<QF> out(c);
            std::uniform_int_distribution<int> coeff(-3, 3), coin(0, 1);
            for (int tries = 0; tries < 10; ++tries) {
                Word w;
                int d = 0;
                while (d < dim && w.len < Word::kMaxLen) {
                    std::uint8_t g = static_cast<std::uint8_t>(coin(rng));
                    int gd = c->alphabet.gen(g).dim;
                    if (d + gd > dim) g = static_cast<std::uint8_t>(1 - g);
                    gd = c->alphabet.gen(g).dim;
                    if (d + gd > dim) break;
                    w.letters[w.len++] = g;
                    d += gd;
                }
                if (d == dim) {
                    int cf = coeff(rng);
                    if (cf) out.axpy(c->field.one(), TensorElem<QF>::monomial(c, w, mpq_class(cf)));
                }
            }
            return out;
        };
        int cases = 0, fails = 0;
        std::uniform_int_distribution<int> dims(2, 8);
        while (cases < 20) {
            int da = dims(rng), db = dims(rng), dc = dims(rng);
            auto a = random_elem(da), b = random_elem(db), e = random_elem(dc);
            if (a.is_zero() || b.is_zero() || e.is_zero()) continue;
            ++cases;
            const int sg = (da % 2 && db % 2) ? -1 : 1;
            auto anti = graded_bracket(a, b) + graded_bracket(b, a).scaled(mpq_class(sg));
            if (!anti.is_zero()) ++fails;
            auto jac = graded_bracket(a, graded_bracket(b, e)) -
                       graded_bracket(graded_bracket(a, b), e) -
                       graded_bracket(b, graded_bracket(a, e)).scaled(mpq_class(sg));
            if (!jac.is_zero()) ++fails;
        }
        expect(fails == 0, "antisymmetry and Jacobi on 20 random cases");
    }

    // (b) derivation law and d^2 = 0, >= 20 cases
    {
        DglModel<QF> m(QF{}, PresentationSpec{{{"x", 2}, {"y", 2}}, {}},
                       {{"a", 8, "[[x,y],x]"}, {"b", 8, "[[x,y],y]"}}, 14);
        LieEngine<QF>& eng = m.engine();
        int cases = 0, fails = 0;
        while (cases < 20) {
            std::uniform_int_distribution<int> dim(2, 11), yc(0, 1);
            int d1 = dim(rng), k1 = yc(rng), d2 = dim(rng), k2 = yc(rng);
            auto s1 = eng.free_lie(d1, k1);
            auto s2 = eng.free_lie(d2, k2);
            if (s1->rank() == 0 || s2->rank() == 0) continue;
            auto a = s1->rows()[std::uniform_int_distribution<std::size_t>(0, s1->rank() - 1)(rng)];
            auto b = s2->rows()[std::uniform_int_distribution<std::size_t>(0, s2->rank() - 1)(rng)];
            ++cases;
            auto lhs = m.differential(graded_bracket(a, b));
            auto rhs = graded_bracket(m.differential(a), b) +
                       graded_bracket(a, m.differential(b)).scaled(mpq_class(d1 % 2 ? -1 : 1));
            if (!(lhs == rhs)) ++fails;
            if (!m.differential(lhs).is_zero()) ++fails;
        }
        expect(fails == 0, "derivation law and d^2 = 0 on 20 random cases");
    }

    // (c) PBW identity through cutoff 12 for random alphabets, >= 20 cases
    {
        const int N = 12;
        int cases = 0, fails = 0;
        while (cases < 20) {
            std::uniform_int_distribution<int> ngen(1, 3), gdim(1, 4);
            int k = ngen(rng), units = 0;
            std::vector<Generator> gens;
            GradedDims v;
            for (int i = 0; i < k; ++i) {
                int d = gdim(rng);
                if (d == 1) ++units;
                gens.push_back({"g" + std::to_string(i), d, GenKind::Space});
                v[d] += 1;
            }
            if (k == 3 && units >= 2) continue;
            ++cases;
            auto c = make_algebra(QF{}, Alphabet(gens));
            LieEngine<QF> eng(c, {});
            GradedDims lie;
            for (int n = 1; n <= N; ++n) {
                long long r0 = static_cast<long long>(eng.free_lie(n, 0)->rank());
                if (r0) lie[n] = r0;
            }
            TruncSeries tensor = (TruncSeries::one(N) - TruncSeries::from_dims(v, N)).inverse();
            if (!(pbw_series(lie, N) == tensor)) ++fails;
        }
        expect(fails == 0, "pbw_series(free Lie dims) = 1/(1-V(z)) on 20 random alphabets");
    }

    // (d) the ideal identity I(z) = UL0(z) W(z) through 14 on the two named
    // ideals
    {
        auto c2 = make_algebra(QF{}, Alphabet({{"x", 2, GenKind::Space}, {"y", 2, GenKind::Space}}));
        LieEngine<QF> eng2(c2, {});
        std::vector<TensorElem<QF>> seeds2 = {parse_bracket_expr<QF>("[[x,y],x]", c2),
                                              parse_bracket_expr<QF>("[[x,y],y]", c2)};
        QuotientIdeal<QF> j2(eng2, seeds2);
        auto w2 = minimal_generators(j2, 14);
        auto env2 = enveloping_ideal_check(eng2, seeds2, w2.dims, 14);
        expect(env2.holds, "I(z) = UL0(z) W(z) <= 14 on the two-cone ideal");
        expect(env2.ideal_series == env2.env_series * TruncSeries::from_dims(w2.dims, 14),
               "two-cone ideal series identity, coefficientwise");

        auto c3 = make_algebra(QF{}, Alphabet({{"x", 2, GenKind::Space},
                                               {"y", 2, GenKind::Space},
                                               {"z", 2, GenKind::Space}}));
        LieEngine<QF> eng3(c3, {});
        std::vector<TensorElem<QF>> seeds3 = {parse_bracket_expr<QF>("[x,y]", c3),
                                              parse_bracket_expr<QF>("[y,z]", c3),
                                              parse_bracket_expr<QF>("[z,x]", c3)};
        QuotientIdeal<QF> j3(eng3, seeds3);
        auto w3 = minimal_generators(j3, 14);
        auto env3 = enveloping_ideal_check(eng3, seeds3, w3.dims, 14);
        expect(env3.holds, "I(z) = UL0(z) W(z) <= 14 on the fat-wedge ideal");
    }

    // (e) Q vs F5/F7 dimension agreement on every corpus input
    {
        for (const CorpusCase& c : corpus()) {
            if (c.negative) continue;
            auto it = g_reports.find(c.name);
            const AttachmentReport r =
                it != g_reports.end() ? it->second : analyze_problem(parse_problem_text(c.problem_json));
            for (const StageReport& s : r.stages) {
                expect(s.fields_checked ==
                           std::vector<std::string>{"Q", "Fp:5", "Fp:7"},
                       c.name + " checked over Q, F5, F7");
                expect(s.free_ok, c.name + " cross-field dims agree (freeness verdict: " +
                                      s.free_verdict + ")");
                // a free attachment's loop series is a Hilbert series
                for (long long coeff : s.loop_series)
                    expect(coeff >= 0, c.name + " loop series has nonnegative coefficients");
            }
        }
        // plus an explicit dimension-table comparison on the two-cone
        GradedDims h0q, h05, h07;
        for (int trial = 0; trial < 3; ++trial) {
            AttachmentProblem p = parse_problem_text(corpus_case("two_cone").problem_json);
            p.cutoff = 12;
            ComponentSpec comp{p.space, p.cells, {}};
            if (trial == 0) h0q = analyze_component_field(RationalField{}, comp, 12, {}).h0_dims;
            if (trial == 1) h05 = analyze_component_field(PrimeField(5), comp, 12, {}).h0_dims;
            if (trial == 2) h07 = analyze_component_field(PrimeField(7), comp, 12, {}).h0_dims;
        }
        expect(h0q == h05 && h0q == h07, "explicit (HL)_0 tables equal over Q, F5, F7");
    }
}

void criterion6() {
    // (a) non-free fixture: first failure at dim 6, Anick crossCheck fails
    AttachmentReport r = analyze_case("nonfree_abelian");
    expect(r.negative, "negative verdict on the abelianized fixture");
    const StageReport& s = r.stages.at(0);
    expect(s.free_verdict.find("not free at dim 6") != std::string::npos,
           "verdict names the first failing dimension 6; got: " + s.free_verdict);
    bool anick_failed = false;
    for (const CrossCheck& c : s.cross_checks)
        if (c.name == "anick-vs-gr-presentation" && !c.pass) anick_failed = true;
    expect(anick_failed, "Anick crossCheck fails on the non-free input");

    // direct check of the freeness criterion's first failure
    GradedDims j{{2, 2}, {4, 1}};
    GradedDims w{{2, 2}};
    auto v = lie_freeness_check(j, w, 12);
    expect(!v.consistent && v.first_failure == 6, "lie_freeness_check reports dim 6");

    // (b) a perturbed differential makes cmd_selftest exit nonzero
    fs::path dir = fs::temp_directory_path() / "loopalg_acceptance_tamper";
    fs::create_directories(dir);
    for (const CorpusCase& c : corpus()) {
        std::ofstream out(dir / (c.name + ".json"));
        out << c.problem_json;
    }
    {
        std::ifstream in(dir / "two_cone.json");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        auto pos = text.find("\"[[x,y],x]\"");
        text.replace(pos, std::string("\"[[x,y],x]\"").size(), "\"0*x - [[x,y],x]\"");
        std::ofstream out(dir / "two_cone.json");
        out << text;
    }
    int tampered = run_cli("selftest --filter two_cone --corpus-dir " + dir.string());
    expect(tampered != 0, "selftest exits nonzero on the tampered corpus (got exit " +
                              std::to_string(tampered) + ")");
    int fresh = run_cli("selftest --filter two_cone");
    expect(fresh == 0, "selftest passes on the bundled corpus");
}

}  // namespace

int main() {
    criterion(1, "two-cone over Q at cutoff 18", criterion1);
    criterion(2, "fat wedge at cutoff 18", criterion2);
    criterion(3, "spherical three-cone stage 2 (reduced) at cutoff 46", criterion3);
    criterion(4, "odd-cell tower, three stages at cutoff 16", criterion4);
    criterion(5, "randomized property suites", criterion5);
    criterion(6, "negative controls", criterion6);
    std::printf("%d/6 criteria passed\n", 6 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
