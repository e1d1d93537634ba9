#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tropinf {

using Rational = mpq_class;

// Exponent vector over X1, ~X1, ..., Xk, ~Xk.
struct Monomial {
    std::vector<uint32_t> e;

    Monomial() = default;
    explicit Monomial(std::size_t dim) : e(dim, 0) {}
    explicit Monomial(std::vector<uint32_t> exps) : e(std::move(exps)) {}

    std::size_t dim() const { return e.size(); }
    uint64_t degree() const;
    uint32_t operator[](std::size_t i) const { return e[i]; }

    // Single formal variable: index 2*(param-1) for Xi, +1 for ~Xi.
    static Monomial var(std::size_t dim, int param, bool bar);

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;
};

Monomial mono_mul(const Monomial& a, const Monomial& b);
// Pointwise order; leq(a, b) is a ≼ b.
bool mono_leq(const Monomial& a, const Monomial& b);
bool mono_lt(const Monomial& a, const Monomial& b);

// Natural number or +infinity with saturating arithmetic.
struct ExtNat {
    uint64_t value = 0;
    bool inf = false;

    ExtNat() = default;
    ExtNat(uint64_t v) : value(v) {}
    static ExtNat infinity() {
        ExtNat r;
        r.inf = true;
        return r;
    }
    bool is_zero() const { return !inf && value == 0; }
    bool operator==(const ExtNat&) const = default;
};

ExtNat operator+(ExtNat a, ExtNat b);
ExtNat operator*(ExtNat a, ExtNat b);

class FormalPolynomial {
public:
    FormalPolynomial() = default;
    explicit FormalPolynomial(std::size_t dim) : dim_(dim) {}

    static FormalPolynomial unit(std::size_t dim);
    static FormalPolynomial all_one(std::size_t dim, const std::vector<Monomial>& support);

    std::size_t dim() const { return dim_; }
    bool empty() const { return coeffs_.empty(); }
    std::size_t size() const { return coeffs_.size(); }

    // Adds c to the coefficient of m; zero results are not stored.
    void add(const Monomial& m, ExtNat c = 1);
    ExtNat coeff(const Monomial& m) const;
    bool contains(const Monomial& m) const { return coeffs_.count(m) != 0; }

    std::vector<Monomial> support() const;
    bool is_all_one() const;
    uint64_t degree() const;

    const std::map<Monomial, ExtNat>& terms() const { return coeffs_; }

    bool operator==(const FormalPolynomial& o) const { return dim_ == o.dim_ && coeffs_ == o.coeffs_; }

private:
    std::size_t dim_ = 0;
    std::map<Monomial, ExtNat> coeffs_;
};

FormalPolynomial poly_add(const FormalPolynomial& s, const FormalPolynomial& t);
FormalPolynomial poly_mul(const FormalPolynomial& s, const FormalPolynomial& t);

struct ProbAssignment {
    std::vector<Rational> p; // length k

    // The value substituted for formal variable index i (Xj or ~Xj).
    Rational var_value(std::size_t i) const;
    void validate() const;
};

// Rational result of a probabilistic evaluation, or +infinity.
struct ExtRational {
    Rational value;
    bool inf = false;
};

ExtRational eval_prob(const FormalPolynomial& s, const ProbAssignment& p);
Rational mono_prob(const Monomial& m, const ProbAssignment& p);

FormalPolynomial tropicalize(const FormalPolynomial& s);

// Tropical coordinate: a nonnegative rational or +infinity.
struct TropValue {
    Rational value;
    bool inf = false;

    static TropValue infinity() { return {Rational(0), true}; }
    std::strong_ordering operator<=>(const TropValue& o) const;
    bool operator==(const TropValue& o) const;
};

struct TropAssignment {
    std::vector<TropValue> z; // length 2k
};

// mu . z with the convention inf * 0 = 0.
TropValue mono_dot(const Monomial& m, const TropAssignment& z);

struct TropEval {
    TropValue value;
    std::vector<Monomial> argmin;
};

TropEval eval_trop(const FormalPolynomial& s, const TropAssignment& z);

// Floating variant used at the probability boundary (z = -ln p).
double mono_dot(const Monomial& m, const std::vector<double>& z);

std::vector<Monomial> minimal_support(const FormalPolynomial& s);
std::vector<Monomial> minimal_elements(const std::vector<Monomial>& pts);

// Canonical text form, e.g. "X1^2 + X1^2*~X1 + ~X1^3"; "0" for the empty polynomial.
std::string to_string(const Monomial& m);
std::string to_string(const FormalPolynomial& s);
std::string to_string(const Rational& q);

} // namespace tropinf
