#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropinf/algebra.hpp"

namespace tropinf {

struct LatticePolytope {
    std::size_t dim = 0;
    std::vector<Monomial> vertices; // lexicographic order

    bool operator==(const LatticePolytope&) const = default;
};

// p is kept iff it is not a convex combination of the other points.
LatticePolytope hull_vertices(const std::vector<Monomial>& points);
bool in_convex_hull(const Monomial& p, const std::vector<Monomial>& others);

struct MinimalPolytope {
    LatticePolytope polytope;
    FormalPolynomial smin;
};

MinimalPolytope np_min(const FormalPolynomial& s);
FormalPolynomial min_poly(const FormalPolynomial& s);

LatticePolytope minkowski_vertices(const LatticePolytope& a, const LatticePolytope& b);

// One output monomial of vn together with the factor monomials it came from.
struct VNTerm {
    Monomial mono;
    std::vector<Monomial> factors; // one per input polynomial
};

// Minimal polynomial of the product of the inputs.
FormalPolynomial vn(const std::vector<FormalPolynomial>& polys);
// Same, keeping one witness factorization per output monomial (lexicographically first).
std::vector<VNTerm> vn_terms(const std::vector<FormalPolynomial>& polys, std::size_t dim);

// Homogeneous system {x >= 0 : row . x <= 0 for all rows}.
struct HalfspaceSystem {
    std::size_t dim = 0;
    std::vector<std::vector<Rational>> rows;

    bool contains(const std::vector<Rational>& x) const;
    bool operator==(const HalfspaceSystem&) const = default;
};

struct NormalCone {
    HalfspaceSystem system;
    std::optional<std::vector<Rational>> witness;
    bool strict = false; // witness satisfies every row and every coordinate strictly
};

NormalCone normal_cone(const Monomial& mu, const FormalPolynomial& s);

// Drops rows implied by the others together with x >= 0; rows are scaled to coprime integers.
HalfspaceSystem irredundant(const HalfspaceSystem& h);

// "3*z~1 <= 2*z1" style rendering of one row.
std::string row_to_string(const std::vector<Rational>& row);

} // namespace tropinf
