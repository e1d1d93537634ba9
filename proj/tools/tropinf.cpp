#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tropinf/error.hpp"
#include "tropinf/infer.hpp"
#include "tropinf/json_io.hpp"
#include "tropinf/lang.hpp"

using namespace tropinf;

namespace {

struct Options {
    std::string file;
    uint64_t target = 1;
    int window = 2;
    int max_rounds = 16;
    std::size_t max_entries = 200000;
    uint64_t budget = 10000;
    std::string output = "text";
    std::string probs;
    std::string traj;
    bool derivation = false;
};

Program load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

AnalysisConfig config(const Options& o) {
    AnalysisConfig c;
    c.target = o.target;
    c.window = o.window;
    c.max_rounds = o.max_rounds;
    c.max_entries = o.max_entries;
    return c;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

ProbAssignment parse_probs(const std::string& s) {
    ProbAssignment p;
    for (const auto& x : split(s)) p.p.push_back(rational_from_text(x));
    p.validate();
    return p;
}

Monomial parse_traj(const std::string& s, int params) {
    std::vector<uint32_t> e;
    for (const auto& x : split(s)) {
        if (x.empty() || x.find_first_not_of("0123456789") != std::string::npos)
            throw Error("bad exponent '" + x + "' in --traj");
        e.push_back(static_cast<uint32_t>(std::stoul(x)));
    }
    if (e.size() != 2 * static_cast<std::size_t>(params))
        throw Error("--traj needs " + std::to_string(2 * params) + " exponents (X1,~X1,...)");
    return Monomial(std::move(e));
}

std::string num(double v) {
    if (std::isinf(v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void warn_relative(const AnalysisReport& r) {
    if (r.exhausted) std::cerr << "warning: " << *r.exhausted << "\n";
    if (!r.stable) std::cerr << "warning: polynomial did not stabilize; answers are relative to the explored trajectories\n";
    if (r.selected.empty()) std::cerr << "warning: no reduction to " << r.target << " was found\n";
}

json selected_json(const SelectedTrajectory& s) {
    return {{"monomial", to_json(s.monomial)}, {"monomial_text", to_string(s.monomial)}, {"word", s.word.str()}};
}

int cmd_check(const Options& o) {
    Program prog = load(o.file);
    Typing ty = check_program(prog.term);
    if (o.output == "json")
        std::cout << json{{"type", to_string(*ty.type)}, {"params", prog.params}, {"program", to_string(*prog.term)}}.dump(2)
                  << "\n";
    else
        std::cout << to_string(*ty.type) << "\n";
    return 0;
}

int cmd_enumerate(const Options& o, bool filter) {
    Program prog = load(o.file);
    check_program(prog.term);
    EnumerateOptions opt;
    opt.max_steps = o.budget;
    Enumeration en = enumerate_trajectories(prog.term, prog.params, opt);
    bool cut = en.truncated;
    json rows = json::array();
    for (const auto& t : en.trajectories) {
        if (!t.value) cut = true;
        if (filter && t.value && *t.value != o.target) continue;
        if (o.output == "json") {
            rows.push_back({{"monomial", to_json(t.monomial)},
                            {"monomial_text", to_string(t.monomial)},
                            {"word", t.word.str()},
                            {"outcome", t.value ? json(*t.value) : json(nullptr)},
                            {"steps", t.steps}});
        } else {
            std::cout << to_string(t.monomial) << "\t" << (t.word.bits.empty() ? "-" : t.word.str()) << "\t"
                      << (t.value ? std::to_string(*t.value) : "nonterminated") << "\n";
        }
    }
    if (o.output == "json")
        std::cout << json{{"trajectories", rows}, {"truncated", cut}}.dump(2) << "\n";
    else if (cut)
        std::cout << "# truncated: some reductions did not terminate within " << o.budget << " steps\n";
    return 0;
}

void print_report_text(const AnalysisReport& r) {
    std::cout << "polynomial: " << to_string(r.polynomial) << "\n";
    std::cout << "degree estimate: " << r.degree_estimate << "\n";
    std::cout << "stable: " << (r.stable ? "yes" : "no") << " after";
    for (const auto& [n, p] : r.schedule) std::cout << " (" << n << "," << p << ")";
    std::cout << "\n";
    for (const auto& s : r.selected) {
        std::cout << to_string(s.monomial) << "  word " << (s.word.bits.empty() ? "-" : s.word.str()) << "\n";
        HalfspaceSystem h = irredundant(s.cone);
        if (h.rows.empty()) std::cout << "  cone: whole orthant\n";
        for (const auto& row : h.rows) std::cout << "  " << row_to_string(row) << "\n";
    }
}

int cmd_analyze(const Options& o) {
    Program prog = load(o.file);
    AnalysisReport r = analyze(prog, config(o));
    warn_relative(r);
    if (o.output == "json") {
        json j = to_json(r);
        if (o.derivation) {
            Typing ty = check_program(prog.term);
            j["derivation"] = derivation_to_json(search(prog, ty, o.target, r.schedule.back().first,
                                                        r.schedule.back().second, o.max_entries));
        }
        std::cout << j.dump(2) << "\n";
    } else {
        print_report_text(r);
    }
    return 0;
}

int cmd_i1(const Options& o) {
    Program prog = load(o.file);
    ProbAssignment p = parse_probs(o.probs);
    AnalysisReport r = analyze(prog, config(o));
    warn_relative(r);
    I1Answer a = solve_i1(r, p);
    if (o.output == "json") {
        json ws = json::array();
        for (const auto& w : a.winners) ws.push_back(selected_json(w));
        std::cout << json{{"value", a.infinite ? json("inf") : json(a.value)},
                          {"probability", rational_text(a.probability)},
                          {"winners", ws},
                          {"relative", a.relative}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "value: " << (a.infinite ? "inf" : num(a.value)) << "\n";
        std::cout << "probability: " << rational_text(a.probability) << "\n";
        for (const auto& w : a.winners)
            std::cout << "winner: " << to_string(w.monomial) << "  word " << (w.word.bits.empty() ? "-" : w.word.str())
                      << "\n";
    }
    return 0;
}

int cmd_i2(const Options& o) {
    Program prog = load(o.file);
    Monomial mu = parse_traj(o.traj, prog.params);
    AnalysisReport r = analyze(prog, config(o));
    warn_relative(r);
    I2Answer a = solve_i2(r, mu);
    std::optional<bool> member;
    if (!o.probs.empty()) member = a.test(parse_probs(o.probs));
    if (o.output == "json") {
        json j = cone_to_json(a.cone, a.witness);
        j["strict"] = a.strict;
        j["relative"] = a.relative;
        if (member) j["member"] = *member;
        std::cout << j.dump(2) << "\n";
    } else {
        if (a.cone.rows.empty()) std::cout << "whole orthant\n";
        for (const auto& row : a.cone.rows) std::cout << row_to_string(row) << "\n";
        if (a.witness) {
            std::cout << "witness:";
            for (const auto& x : *a.witness) std::cout << " " << rational_text(x);
            std::cout << (a.strict ? " (interior)" : " (boundary)") << "\n";
        }
        if (member) std::cout << "member: " << (*member ? "yes" : "no") << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tropical most-likely-trajectory inference for parametric probabilistic PCF"};
    app.require_subcommand(1);
    Options o;

    auto file = [&](CLI::App* c) { c->add_option("file", o.file, "program file")->required()->check(CLI::ExistingFile); };
    auto output = [&](CLI::App* c) {
        c->add_option("--output,-o", o.output, "output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto analysis = [&](CLI::App* c) {
        c->add_option("--target", o.target, "target value");
        c->add_option("--window", o.window, "stabilization window")->check(CLI::PositiveNumber);
        c->add_option("--max-rounds", o.max_rounds, "stabilization round limit")->check(CLI::PositiveNumber);
        c->add_option("--max-entries", o.max_entries, "judgement size limit")->check(CLI::PositiveNumber);
    };

    auto* check = app.add_subcommand("check", "print the simple type of a program");
    file(check);
    output(check);

    auto* enumerate = app.add_subcommand("enumerate", "list reductions with their monomials and words");
    file(enumerate);
    output(enumerate);
    enumerate->add_option("--budget", o.budget, "reduction steps per path")->check(CLI::PositiveNumber);
    auto* target_opt = enumerate->add_option("--target", o.target, "only list reductions to this value");

    auto* an = app.add_subcommand("analyze", "compute the minimal tropical polynomial and its cones");
    file(an);
    output(an);
    analysis(an);
    an->add_flag("--derivation", o.derivation, "include the final derivation (json output)");

    auto* i1 = app.add_subcommand("i1", "most likely trajectory under a probability assignment");
    file(i1);
    output(i1);
    analysis(i1);
    i1->add_option("--probs", o.probs, "probabilities p1,...,pk")->required();

    auto* i2 = app.add_subcommand("i2", "parameter region where a trajectory is most likely");
    file(i2);
    output(i2);
    analysis(i2);
    i2->add_option("--traj", o.traj, "exponent vector X1,~X1,...")->required();
    i2->add_option("--probs", o.probs, "also test membership of p1,...,pk");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*check) return cmd_check(o);
        if (*enumerate) return cmd_enumerate(o, target_opt->count() > 0);
        if (*an) return cmd_analyze(o);
        if (*i1) return cmd_i1(o);
        if (*i2) return cmd_i2(o);
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
