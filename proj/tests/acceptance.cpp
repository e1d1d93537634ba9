// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance --only N   run criterion N

#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "gen.hpp"
#include "oracles.hpp"
#include "tropinf/error.hpp"
#include "tropinf/geometry.hpp"
#include "tropinf/infer.hpp"

using namespace tropinf;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        pass = false;
        failures.push_back(what);
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Program load(const std::string& name) {
    std::ifstream in(std::string(TROPINF_CORPUS) + "/" + name);
    if (!in) throw Error("cannot open corpus file " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

Rational q(long a, long b = 1) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

std::string join(const std::vector<Monomial>& ms) {
    std::string s = "{";
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i) s += ", ";
        s += "(";
        for (std::size_t j = 0; j < ms[i].dim(); ++j) s += (j ? "," : "") + std::to_string(ms[i].e[j]);
        s += ")";
    }
    return s + "}";
}

// Analyses shared by criteria 10 to 12.
struct Case {
    std::string name;
    Program program;
    uint64_t target;
    AnalysisReport report;
};

std::vector<Program> random_programs() {
    gen::ProgramGen g(oracle::seed() + 1000, 2, 12);
    std::vector<Program> out;
    for (int i = 0; i < 100; ++i) out.push_back(g.next());
    return out;
}

const std::vector<Case>& golden_cases() {
    static std::vector<Case> cases = [] {
        std::vector<Case> out;
        for (const char* name : {"m1.pcfx", "m2.pcfx", "m3.pcfx", "m4_2.pcfx", "m4_3.pcfx", "m4_4.pcfx",
                                 "tower_distinct.pcfx", "unreachable.pcfx"}) {
            Program p = load(name);
            for (uint64_t target : {0, 1}) {
                AnalysisConfig cfg;
                cfg.target = target;
                out.push_back({std::string(name) + "@" + std::to_string(target), p, target, analyze(p, cfg)});
            }
        }
        return out;
    }();
    return cases;
}

const std::vector<Case>& random_cases() {
    static std::vector<Case> cases = [] {
        std::vector<Case> out;
        int i = 0;
        for (const auto& p : random_programs()) {
            Typing t = check_program(p.term);
            std::vector<uint64_t> targets{0, 1};
            if (t.type->kind == SimpleType::Nat) targets.push_back(2);
            for (uint64_t target : targets) {
                AnalysisConfig cfg;
                cfg.target = target;
                out.push_back({"random#" + std::to_string(i) + "@" + std::to_string(target), p, target,
                               analyze(p, cfg)});
            }
            ++i;
        }
        return out;
    }();
    return cases;
}

// 1. Enumeration of the three-choice example.
void c1(Outcome& o) {
    auto t0 = Clock::now();
    Program m1 = load("m1.pcfx");
    auto ts = enumerate_trajectories(m1.term, m1.params, 100);
    std::multiset<std::string> to0, to1;
    for (const auto& t : ts) {
        o.require(t.value.has_value(), "every reduction terminates");
        if (t.value) (*t.value == 0 ? to0 : to1).insert(to_string(t.monomial));
    }
    o.require(to0 == std::multiset<std::string>{"X1*~X1", "X1*~X1^2", "X1*~X1^2"}, "reductions to 0");
    o.require(to1 == std::multiset<std::string>{"X1^2", "X1^2*~X1", "~X1^3"}, "reductions to 1");
    std::mt19937_64 rng(oracle::seed() + 1);
    for (int i = 0; i < 50; ++i) {
        std::uniform_int_distribution<int> den(1, 50);
        int d = den(rng);
        std::uniform_int_distribution<int> num(0, d);
        ProbAssignment pa{{q(num(rng), d)}};
        Rational total = 0;
        for (const auto& t : ts) total += mono_prob(t.monomial, pa);
        o.require(total == 1, "probabilities sum to 1 at p=" + to_string(pa.p[0]));
    }
    double s = seconds_since(t0);
    o.require(s < 1.0, "runtime under 1 s");
    o.detail << ts.size() << " reductions, " << s << " s";
}

// 2. I1 on the three-choice example at p = 1/2.
void c2(Outcome& o) {
    AnalysisReport r = analyze(load("m1.pcfx"), AnalysisConfig{});
    I1Answer a = solve_i1(r, ProbAssignment{{q(1, 2)}});
    double err = std::abs(a.value - 2 * std::log(2.0));
    o.require(err <= 1e-12, "value within 1e-12 of 2 ln 2");
    o.require(a.winners.size() == 1 && to_string(a.winners[0].monomial) == "X1^2", "winner X1^2");
    o.detail << "value " << a.value << " (error " << err << ")";
    if (!a.winners.empty()) o.detail << ", winner " << to_string(a.winners[0].monomial);
}

// 3. I2 cone of ~X1^3.
void c3(Outcome& o) {
    AnalysisReport r = analyze(load("m1.pcfx"), AnalysisConfig{});
    I2Answer a = solve_i2(r, Monomial({0, 3}));
    std::string rows;
    for (const auto& row : a.cone.rows) rows += (rows.empty() ? "" : ", ") + row_to_string(row);
    o.require(a.cone.rows.size() == 1 && rows == "3*z~1 <= 2*z1", "single row 3*z~1 <= 2*z1");
    o.require(a.test(ProbAssignment{{q(1, 4)}}), "accepts p=1/4");
    o.require(!a.test(ProbAssignment{{q(1, 2)}}), "rejects p=1/2");
    o.detail << "cone [" << rows << "]";
}

// 4. vn of k copies of X1 + X2 + X3.
void c4(Outcome& o) {
    FormalPolynomial x(3);
    x.add(Monomial({1, 0, 0}));
    x.add(Monomial({0, 1, 0}));
    x.add(Monomial({0, 0, 1}));
    for (uint32_t k = 2; k <= 5; ++k) {
        FormalPolynomial naive = x;
        for (uint32_t i = 1; i < k; ++i) naive = poly_mul(naive, x);
        FormalPolynomial r = vn(std::vector<FormalPolynomial>(k, x));
        FormalPolynomial expect(3);
        expect.add(Monomial({k, 0, 0}));
        expect.add(Monomial({0, k, 0}));
        expect.add(Monomial({0, 0, k}));
        std::size_t binom = (k + 2) * (k + 1) / 2;
        o.require(naive.size() == binom, "naive product has C(k+2,2) monomials at k=" + std::to_string(k));
        o.require(r == expect, "vn equals X1^k + X2^k + X3^k at k=" + std::to_string(k));
        o.detail << "k=" << k << ": naive " << naive.size() << ", vn " << r.size() << "  ";
    }
}

// 5. Hull and minimal polytope of the six points v1..v6.
void c5(Outcome& o) {
    std::vector<Monomial> v{Monomial({2, 3, 2}), Monomial({3, 2, 2}), Monomial({1, 1, 3}),
                            Monomial({3, 0, 3}), Monomial({5, 3, 4}), Monomial({4, 2, 3})};
    LatticePolytope h = hull_vertices(v);
    std::vector<Monomial> expect_hull(v.begin(), v.begin() + 5);
    std::sort(expect_hull.begin(), expect_hull.end());
    o.require(h.vertices == expect_hull, "hull_vertices drops v6");
    MinimalPolytope m = np_min(FormalPolynomial::all_one(3, v));
    std::vector<Monomial> expect_min(v.begin(), v.begin() + 4);
    std::sort(expect_min.begin(), expect_min.end());
    o.require(m.polytope.vertices == expect_min, "np_min leaves exactly v1..v4");
    o.detail << "hull " << join(h.vertices) << ", np_min " << join(m.polytope.vertices);
    // Certificate: v6 against the segment [v4, v5] and against the other five points.
    bool on_segment = oracle::in_hull(v[5], {v[3], v[4]});
    std::vector<Monomial> others(v.begin(), v.begin() + 5);
    bool in_others = oracle::in_hull(v[5], others);
    o.detail << "; oracle: v6 in conv(v4,v5) = " << (on_segment ? "yes" : "no")
             << ", v6 in conv(v1..v5) = " << (in_others ? "yes" : "no");
    if (!on_segment) o.detail << " (midpoint of v4,v5 is (4,1.5,3.5), v6 = (4,2,3))";
    // Which of v1..v6 the minimal polytope keeps, independent of the hull answer.
    o.detail << "; oracle np_min " << join(oracle::np_min(v));
}

// 6. Three-choice tower.
void c6(Outcome& o) {
    Program p = load("m4_3.pcfx");
    AnalysisReport r = analyze(p, AnalysisConfig{});
    o.require(to_string(r.polynomial) == "X1^3 + ~X1^3", "polynomial X1^3 + ~X1^3");
    std::set<std::string> words;
    for (const auto& s : r.selected) words.insert(s.word.str());
    o.require(words == std::set<std::string>{"000", "111"}, "trace words 000 and 111");
    auto ts = enumerate_trajectories(p.term, p.params, 1000);
    o.require(ts.size() == 8, "eight reductions");
    Typing t = check_program(p.term);
    SearchResult sr = search(p, t, 1, r.schedule.back().first, r.schedule.back().second);
    FormalPolynomial traj = traj_poly(sr);
    o.require(r.selected.size() == 2, "two selected trajectories");
    o.detail << "polynomial " << to_string(r.polynomial) << ", words {";
    for (const auto& w : words) o.detail << w << " ";
    o.detail << "}, reductions " << ts.size() << ", traj support " << to_string(traj) << " -> "
             << r.selected.size() << " selected";
}

// 7. Two-loop example.
void c7(Outcome& o) {
    auto t0 = Clock::now();
    Program p = load("m2.pcfx");
    AnalysisReport r = analyze(p, AnalysisConfig{});
    double s = seconds_since(t0);
    o.require(r.stable, "stable with window 2");
    o.require(r.degree_estimate == 5, "degree 5");
    o.require(r.polynomial.size() == 6, "six monomials");
    std::set<std::string> got;
    for (const auto& mu : r.polynomial.support()) got.insert(to_string(mu));
    std::set<std::string> pinned{"X1*X2*~X4", "~X1*X3*~X4", "X1*~X2*~X5", "~X1*~X3*~X5",
                                 "X1*~X2*X3*~X4*X5", "~X1*~X2*X3*X4*~X5"};
    o.require(got == pinned, "pinned monomials");
    // Every pinned monomial is the weight of an actual reduction to 1, and the two-unfolding
    // reductions found by the oracle reduce to exactly this minimal set.
    EnumerateOptions opt;
    opt.max_steps = 100;
    Enumeration en = enumerate_trajectories(p.term, p.params, opt);
    o.require(!en.truncated, "oracle enumeration complete at 100 steps per path");
    std::set<Monomial> reach;
    for (const auto& t : en.trajectories)
        if (t.value && *t.value == 1) reach.insert(t.monomial);
    std::vector<Monomial> reach_v(reach.begin(), reach.end());
    for (const auto& mu : r.polynomial.support())
        o.require(reach.count(mu) > 0, "oracle reaches " + to_string(mu));
    std::vector<Monomial> bounded;
    for (const auto& mu : reach_v)
        if (mu.degree() <= 5) bounded.push_back(mu);
    auto oracle_min = oracle::np_min(bounded);
    o.require(oracle_min == r.polynomial.support(), "oracle np_min of degree-5 reductions matches");
    o.require(s < 10.0, "runtime under 10 s");
    o.detail << to_string(r.polynomial) << ", degree " << r.degree_estimate << ", schedule";
    for (const auto& [n, pp] : r.schedule) o.detail << " (" << n << "," << pp << ")";
    o.detail << ", " << s << " s";
}

// 8. One-loop example.
void c8(Outcome& o) {
    Program p = load("m3.pcfx");
    AnalysisReport r = analyze(p, AnalysisConfig{});
    o.require(r.polynomial.size() == 1 && r.degree_estimate == 1, "single degree-1 monomial");
    o.require(r.stable, "stable");
    Typing t = check_program(p.term);
    int first = 0;
    for (std::size_t i = 0; i < r.schedule.size() && i < 3 && !first; ++i) {
        auto [n, pp] = r.schedule[i];
        if (search(p, t, 1, n, pp).conclusion.poly == r.polynomial) first = static_cast<int>(i) + 1;
    }
    o.require(first >= 1 && first <= 3, "reached within 3 rounds");
    o.detail << to_string(r.polynomial) << " reached at round " << first << " of " << r.schedule.size();
}

// 9. vn against the naive product.
void c9(Outcome& o) {
    auto t0 = Clock::now();
    std::mt19937_64 rng(oracle::seed() + 9);
    auto random_min = [&](std::size_t dim) {
        std::uniform_int_distribution<int> count(1, 6), e(0, 6);
        std::vector<Monomial> pts;
        for (int i = count(rng); i > 0; --i) {
            Monomial m(dim);
            int left = 6;
            for (auto& x : m.e) {
                int v = std::min(left, e(rng));
                x = static_cast<uint32_t>(v);
                left -= v;
            }
            pts.push_back(m);
        }
        return FormalPolynomial::all_one(dim, oracle::np_min(pts));
    };
    int agree = 0, points = 0;
    double vn_time = 0, oracle_time = 0;
    for (int i = 0; i < 200; ++i) {
        std::size_t dim = 1 + i % 4;
        FormalPolynomial s = random_min(dim), t = random_min(dim);
        auto v0 = Clock::now();
        FormalPolynomial r = vn({s, t});
        vn_time += seconds_since(v0);
        FormalPolynomial naive = poly_mul(s, t);
        auto o0 = Clock::now();
        auto expect = oracle::np_min(naive.support());
        oracle_time += seconds_since(o0);
        bool same = r.support() == expect;
        o.require(same, "support at case " + std::to_string(i));
        agree += same;
        for (int k = 0; k < 50; ++k) {
            auto z = oracle::random_point(rng, dim);
            TropAssignment tz;
            for (const auto& c : z) tz.z.push_back({c, false});
            bool ok = eval_trop(r, tz).value == eval_trop(naive, tz).value &&
                      eval_trop(r, tz).value.value == oracle::trop_min(naive.support(), z);
            o.require(ok, "tropical value at case " + std::to_string(i));
            points += ok;
        }
    }
    double sec = seconds_since(t0);
    o.require(sec < 60.0, "runtime under 60 s");
    o.detail << agree << "/200 supports, " << points << "/10000 points, " << sec << " s (vn " << vn_time
             << " s, hull oracle " << oracle_time << " s)";
}

// 10. Soundness and minimal-monomial completeness on random fix-free programs.
void c10(Outcome& o) {
    auto t0 = Clock::now();
    int checked = 0;
    for (const auto& c : random_cases()) {
        std::set<Monomial> reach = oracle::reachable(c.program, c.target);
        std::vector<Monomial> reach_v(reach.begin(), reach.end());
        auto support = c.report.polynomial.support();
        for (const auto& mu : support)
            o.require(reach.count(mu) > 0, c.name + " sound: " + to_string(mu) + " in " + c.report.program);
        for (const auto& mu : oracle::np_min(reach_v))
            o.require(std::find(support.begin(), support.end(), mu) != support.end(),
                      c.name + " complete: " + to_string(mu) + " in " + c.report.program);
        ++checked;
    }
    double sec = seconds_since(t0);
    o.require(sec < 120.0, "runtime under 120 s");
    o.detail << checked << " (program, target) pairs from 100 programs, " << sec << " s";
}

// 11. Trace replay.
void c11(Outcome& o) {
    int words = 0;
    for (const auto* suite : {&golden_cases(), &random_cases()}) {
        for (const auto& c : *suite) {
            for (const auto& s : c.report.selected) {
                Replay rp = replay(c.program.term, c.program.params, s.word.bits);
                bool ok = rp.ok && rp.value && *rp.value == c.target && rp.monomial == s.monomial &&
                          s.word.abstraction(c.program.params) == s.monomial;
                o.require(ok, c.name + " word " + s.word.str());
                ++words;
            }
        }
    }
    o.detail << words << " words replayed";
}

// 12. Cone coverage.
void c12(Outcome& o) {
    std::mt19937_64 rng(oracle::seed() + 12);
    int reports = 0, pts = 0;
    for (const auto* suite : {&golden_cases(), &random_cases()}) {
        for (const auto& c : *suite) {
            if (c.report.polynomial.empty()) continue;
            auto support = c.report.polynomial.support();
            for (int i = 0; i < 100; ++i) {
                auto z = oracle::random_point(rng, c.report.polynomial.dim());
                Rational best = oracle::trop_min(support, z);
                bool covered = false;
                for (const auto& s : c.report.selected)
                    if (s.cone.contains(z) && oracle::dot(s.monomial, z) == best) covered = true;
                o.require(covered, c.name + " point " + std::to_string(i));
                ++pts;
            }
            ++reports;
        }
    }
    o.detail << reports << " reports, " << pts << " points";
}

const std::map<int, std::pair<const char*, std::function<void(Outcome&)>>> criteria{
    {1, {"three-choice enumeration", c1}},  {2, {"I1 at p=1/2", c2}},
    {3, {"I2 cone of ~X1^3", c3}},          {4, {"freshman dream", c4}},
    {5, {"hull and minimal polytope", c5}}, {6, {"three-choice tower", c6}},
    {7, {"two-loop program", c7}},          {8, {"one-loop program", c8}},
    {9, {"vn oracle equivalence", c9}},     {10, {"soundness on random programs", c10}},
    {11, {"trace replay", c11}},            {12, {"cone coverage", c12}},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--only N]\n";
            return 1;
        }
    }
    if (only && !criteria.count(only)) {
        std::cerr << "no criterion " << only << "\n";
        return 1;
    }
    int failed = 0;
    for (const auto& [n, c] : criteria) {
        if (only && n != only) continue;
        Outcome o;
        try {
            c.second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << c.first << "): " << o.detail.str();
        for (std::size_t i = 0; i < o.failures.size() && i < 5; ++i) std::cout << " | failed: " << o.failures[i];
        if (o.failures.size() > 5) std::cout << " | " << o.failures.size() - 5 << " more failures";
        std::cout << std::endl;
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
