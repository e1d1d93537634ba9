#include <cstdio>
#include <functional>

#include "tropinf/error.hpp"
#include "tropinf/json_io.hpp"

namespace tropinf {

std::string rational_text(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Rational rational_from_text(const std::string& s) {
    auto dot = s.find('.');
    if (dot != std::string::npos && s.find('/') == std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::string den = "1" + std::string(s.size() - dot - 1, '0');
        if (digits.empty() || digits == "-" || digits.find_first_not_of("-0123456789") != std::string::npos)
            throw Error("bad number '" + s + "'");
        return rational_from_text(digits + "/" + den);
    }
    Rational q;
    if (s.empty() || s.find_first_not_of("-0123456789/") != std::string::npos || q.set_str(s, 10) != 0)
        throw Error("bad number '" + s + "'");
    if (q.get_den() == 0) throw Error("bad number '" + s + "'");
    q.canonicalize();
    return q;
}

json to_json(const Monomial& m) { return json(m.e); }

Monomial monomial_from_json(const json& j) { return Monomial(j.get<std::vector<uint32_t>>()); }

json to_json(const FormalPolynomial& s) {
    json terms = json::array();
    for (const auto& [m, c] : s.terms()) {
        json coeff = c.inf ? json("inf") : json(c.value);
        terms.push_back({{"monomial", to_json(m)}, {"coeff", coeff}});
    }
    return {{"dim", s.dim()}, {"terms", terms}, {"text", to_string(s)}};
}

FormalPolynomial poly_from_json(const json& j) {
    FormalPolynomial s(j.at("dim").get<std::size_t>());
    for (const auto& t : j.at("terms")) {
        Monomial m = monomial_from_json(t.at("monomial"));
        if (m.dim() != s.dim()) throw DimensionError("monomial of wrong dimension in polynomial JSON");
        const json& c = t.at("coeff");
        s.add(m, c.is_string() ? ExtNat::infinity() : ExtNat(c.get<uint64_t>()));
    }
    return s;
}

json to_json(const LatticePolytope& p) {
    json vs = json::array();
    for (const auto& v : p.vertices) vs.push_back(to_json(v));
    return {{"dim", p.dim}, {"vertices", vs}};
}

LatticePolytope polytope_from_json(const json& j) {
    LatticePolytope p;
    p.dim = j.at("dim").get<std::size_t>();
    for (const auto& v : j.at("vertices")) p.vertices.push_back(monomial_from_json(v));
    return p;
}

namespace {

json rationals(const std::vector<Rational>& xs) {
    json a = json::array();
    for (const auto& x : xs) a.push_back(rational_text(x));
    return a;
}

std::vector<Rational> rationals_from(const json& j) {
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(rational_from_text(x.get<std::string>()));
    return out;
}

json word_json(const ChoiceWord& w) { return {{"bits", w.str()}, {"params", w.params}}; }

ChoiceWord word_from_json(const json& j) {
    ChoiceWord w;
    for (char ch : j.at("bits").get<std::string>()) w.bits.push_back(ch == '1' ? 1 : 0);
    w.params = j.at("params").get<std::vector<int>>();
    if (w.params.size() != w.bits.size()) throw Error("word bits and params differ in length");
    return w;
}

} // namespace

json cone_to_json(const HalfspaceSystem& h, const std::optional<std::vector<Rational>>& witness) {
    json rows = json::array();
    for (const auto& r : h.rows) rows.push_back({{"normal", rationals(r)}, {"rhs", "0"}, {"text", row_to_string(r)}});
    return {{"rows", rows}, {"witness", witness ? rationals(*witness) : json(nullptr)}};
}

HalfspaceSystem cone_from_json(const json& j, std::size_t dim) {
    HalfspaceSystem h;
    h.dim = dim;
    for (const auto& r : j.at("rows")) {
        auto row = rationals_from(r.at("normal"));
        if (row.size() != dim) throw DimensionError("cone row of wrong dimension");
        h.rows.push_back(std::move(row));
    }
    return h;
}

json derivation_to_json(const SearchResult& r) {
    const Universe& u = *r.universe;
    std::function<json(const TropDerivation&)> go = [&](const TropDerivation& d) {
        json entries = json::array();
        for (const auto& e : d.entries) {
            json ctx = json::array();
            for (const auto& [v, t] : e.ctx) ctx.push_back({{"var", u.var_names.at(v)}, {"itype", u.types.show(t)}});
            json traces = json::array();
            for (const auto& [m, t] : e.traces)
                traces.push_back({{"monomial", to_string(m)}, {"trace", trace_to_string(t, u.var_names, u.types)}});
            entries.push_back({{"context", ctx},
                               {"itype", u.types.show(e.type)},
                               {"ycount", e.ycount},
                               {"poly", to_string(e.poly)},
                               {"traces", traces}});
        }
        json premises = json::array();
        for (const auto& p : d.premises) premises.push_back(go(*p));
        json out = {{"rule", rule_name(d.rule)},
                    {"subject", d.subject ? to_string(*d.subject) : ""},
                    {"conclusion", {{"entries", entries}}},
                    {"premises", premises}};
        if (d.level >= 0) out["level"] = d.level;
        return out;
    };
    return {{"n", u.n}, {"p", u.p}, {"target", r.target}, {"derivation", go(*r.root)}};
}

std::string input_hash(const std::string& text) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json to_json(const AnalysisReport& r) {
    json sel = json::array();
    for (const auto& s : r.selected) {
        json c = cone_to_json(s.cone, s.witness);
        sel.push_back({{"monomial", to_json(s.monomial)},
                       {"monomial_text", to_string(s.monomial)},
                       {"word", word_json(s.word)},
                       {"cone", c},
                       {"strict", s.strict}});
    }
    json sched = json::array();
    for (const auto& [n, p] : r.schedule) sched.push_back({n, p});
    return {{"schema", kReportSchema},
            {"tool_version", kToolVersion},
            {"input_hash", input_hash(r.program)},
            {"program", r.program},
            {"target", r.target},
            {"params", r.params},
            {"polynomial", to_json(r.polynomial)},
            {"degree_estimate", r.degree_estimate},
            {"stable", r.stable},
            {"relative", r.relative()},
            {"schedule", sched},
            {"exhausted", r.exhausted ? json(*r.exhausted) : json(nullptr)},
            {"selected", sel}};
}

AnalysisReport report_from_json(const json& j) {
    if (j.at("schema").get<std::string>() != kReportSchema)
        throw Error("unsupported report schema '" + j.at("schema").get<std::string>() + "'");
    AnalysisReport r;
    r.program = j.at("program").get<std::string>();
    r.target = j.at("target").get<uint64_t>();
    r.params = j.at("params").get<int>();
    r.polynomial = poly_from_json(j.at("polynomial"));
    r.degree_estimate = j.at("degree_estimate").get<uint64_t>();
    r.stable = j.at("stable").get<bool>();
    for (const auto& s : j.at("schedule")) r.schedule.emplace_back(s.at(0).get<uint64_t>(), s.at(1).get<uint64_t>());
    if (!j.at("exhausted").is_null()) r.exhausted = j.at("exhausted").get<std::string>();
    const std::size_t dim = r.polynomial.dim();
    for (const auto& s : j.at("selected")) {
        SelectedTrajectory t;
        t.monomial = monomial_from_json(s.at("monomial"));
        t.word = word_from_json(s.at("word"));
        t.cone = cone_from_json(s.at("cone"), dim);
        const json& w = s.at("cone").at("witness");
        if (!w.is_null()) t.witness = rationals_from(w);
        t.strict = s.at("strict").get<bool>();
        r.selected.push_back(std::move(t));
    }
    return r;
}

} // namespace tropinf
