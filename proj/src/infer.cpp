#include <cmath>
#include <limits>

#include "tropinf/error.hpp"
#include "tropinf/infer.hpp"

namespace tropinf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-12;

double dot(const Monomial& m, const std::vector<double>& z) {
    double s = 0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        if (m.e[i] != 0) s += static_cast<double>(m.e[i]) * z[i];
    return s;
}

void check_params(const AnalysisReport& r, const ProbAssignment& p) {
    if (p.p.size() != static_cast<std::size_t>(r.params))
        throw Error("expected " + std::to_string(r.params) + " probabilities, got " + std::to_string(p.p.size()));
    p.validate();
}

} // namespace

AnalysisReport analyze(const Program& prog, const AnalysisConfig& cfg) {
    Typing ty = check_program(prog.term);
    if (ty.type->kind == SimpleType::Bool && cfg.target > 1)
        throw Error("target " + std::to_string(cfg.target) + " is not a boolean value");
    StabilizeConfig sc;
    sc.window = cfg.window;
    sc.max_rounds = cfg.max_rounds;
    sc.max_entries = cfg.max_entries;
    StabilizeResult st = stabilize(prog, ty, cfg.target, sc);

    AnalysisReport r;
    r.target = cfg.target;
    r.params = prog.params;
    r.program = to_string(*prog.term);
    r.stable = st.stable;
    r.schedule = st.schedule;
    r.exhausted = st.exhausted;
    const Entry& c = st.last.conclusion;
    r.polynomial = c.poly;
    r.degree_estimate = c.poly.degree();
    for (const auto& [m, coeff] : c.poly.terms()) {
        SelectedTrajectory sel;
        sel.monomial = m;
        sel.word = eval_trace(c.traces.at(m));
        Replay rp = replay(prog.term, prog.params, sel.word.bits);
        if (!rp.ok || rp.monomial != m || rp.value != cfg.target)
            throw InvariantError("trace " + sel.word.str() + " for " + to_string(m) +
                                 " does not replay to the target: " + (rp.ok ? "wrong outcome" : rp.error));
        NormalCone nc = normal_cone(m, c.poly);
        sel.cone = std::move(nc.system);
        sel.witness = std::move(nc.witness);
        sel.strict = nc.strict;
        r.selected.push_back(std::move(sel));
    }
    return r;
}

std::vector<double> neg_log(const ProbAssignment& p) {
    std::vector<double> z;
    z.reserve(2 * p.p.size());
    for (const auto& q : p.p) {
        Rational bar = 1 - q;
        z.push_back(q == 0 ? kInf : -std::log(q.get_d()));
        z.push_back(bar == 0 ? kInf : -std::log(bar.get_d()));
    }
    return z;
}

bool attains_minimum(const Monomial& mu, const std::vector<Monomial>& support, const std::vector<double>& z) {
    double a = dot(mu, z);
    for (const auto& nu : support) {
        double b = dot(nu, z);
        if (std::isinf(b)) continue;
        if (std::isinf(a) || a > b + kSlack) return false;
    }
    return true;
}

I1Answer solve_i1(const AnalysisReport& report, const ProbAssignment& p) {
    check_params(report, p);
    I1Answer out;
    out.relative = report.relative();
    out.probability = 0;
    if (report.selected.empty()) {
        out.infinite = true;
        out.value = kInf;
        return out;
    }
    std::vector<Rational> probs;
    for (const auto& s : report.selected) {
        probs.push_back(mono_prob(s.monomial, p));
        if (probs.back() > out.probability) out.probability = probs.back();
    }
    for (std::size_t i = 0; i < probs.size(); ++i)
        if (probs[i] == out.probability) out.winners.push_back(report.selected[i]);
    if (out.probability == 0) {
        out.infinite = true;
        out.value = kInf;
        return out;
    }
    out.value = dot(out.winners.front().monomial, neg_log(p));
    return out;
}

I2Answer solve_i2(const AnalysisReport& report, const Monomial& mu) {
    const SelectedTrajectory* sel = nullptr;
    for (const auto& s : report.selected)
        if (s.monomial == mu) sel = &s;
    if (!sel) throw Error("monomial " + to_string(mu) + " is not among the selected trajectories");
    I2Answer out;
    out.cone = irredundant(sel->cone);
    out.witness = sel->witness;
    out.strict = sel->strict;
    out.relative = report.relative();
    std::vector<Monomial> support = report.polynomial.support();
    int params = report.params;
    out.test = [mu, support, params](const ProbAssignment& p) {
        if (p.p.size() != static_cast<std::size_t>(params))
            throw Error("expected " + std::to_string(params) + " probabilities, got " + std::to_string(p.p.size()));
        p.validate();
        return attains_minimum(mu, support, neg_log(p));
    };
    return out;
}

} // namespace tropinf
