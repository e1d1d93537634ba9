#pragma once

#include <string>
#include <vector>

#include "tropinf/algebra.hpp"

namespace tropinf {

enum class Sense { Le, Ge, Eq };

struct LPRow {
    std::vector<Rational> a;
    Sense sense = Sense::Le;
    Rational b;
};

// maximize c.x subject to rows, x >= 0.
struct LPProblem {
    std::size_t n = 0;
    std::vector<Rational> objective;
    std::vector<LPRow> rows;

    void add_row(std::vector<Rational> a, Sense s, Rational b) { rows.push_back({std::move(a), s, std::move(b)}); }
};

struct LPResult {
    enum Status { Optimal, Infeasible, Unbounded } status = Infeasible;
    std::vector<Rational> x;
    Rational value;
};

// Two-phase dense tableau simplex in exact rationals, Bland's rule throughout.
LPResult lp_solve(const LPProblem& p);

} // namespace tropinf
