#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tropinf/algebra.hpp"
#include "tropinf/geometry.hpp"
#include "tropinf/lang.hpp"
#include "tropinf/typesys.hpp"

namespace tropinf {

struct SelectedTrajectory {
    Monomial monomial;
    ChoiceWord word;
    HalfspaceSystem cone; // rows (mu - nu) . z <= 0 over the whole support
    std::optional<std::vector<Rational>> witness;
    bool strict = false;

    bool operator==(const SelectedTrajectory&) const = default;
};

struct AnalysisConfig {
    uint64_t target = 1;
    int window = 2;
    int max_rounds = 16;
    std::size_t max_entries = 200000;
};

struct AnalysisReport {
    uint64_t target = 0;
    int params = 0;
    FormalPolynomial polynomial;
    uint64_t degree_estimate = 0;
    bool stable = false;
    std::vector<std::pair<uint64_t, uint64_t>> schedule;
    std::vector<SelectedTrajectory> selected;
    std::string program;                  // canonical text of the analyzed term
    std::optional<std::string> exhausted; // resource limit hit during stabilization

    // Answers only cover the trajectories explored so far.
    bool relative() const { return !stable; }
    bool operator==(const AnalysisReport&) const = default;
};

AnalysisReport analyze(const Program& prog, const AnalysisConfig& cfg);

// z = (-ln p1, -ln(1-p1), ...); +inf where the probability is 0.
std::vector<double> neg_log(const ProbAssignment& p);

struct I1Answer {
    double value = 0;     // min over the support of mu . z
    bool infinite = false;
    Rational probability; // exp(-value), exact
    std::vector<SelectedTrajectory> winners;
    bool relative = false;
};

I1Answer solve_i1(const AnalysisReport& report, const ProbAssignment& p);

struct I2Answer {
    HalfspaceSystem cone; // irredundant rows in z-coordinates
    std::optional<std::vector<Rational>> witness;
    bool strict = false;
    std::function<bool(const ProbAssignment&)> test;
    bool relative = false;
};

I2Answer solve_i2(const AnalysisReport& report, const Monomial& mu);

// mu . z <= nu . z + 1e-12 for every nu of the support, with z = -ln p and inf * 0 = 0.
bool attains_minimum(const Monomial& mu, const std::vector<Monomial>& support, const std::vector<double>& z);

} // namespace tropinf
