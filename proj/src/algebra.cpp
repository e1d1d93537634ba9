#include "tropinf/algebra.hpp"

#include <algorithm>
#include <limits>

#include "tropinf/error.hpp"

namespace tropinf {

uint64_t Monomial::degree() const {
    uint64_t d = 0;
    for (auto x : e) d += x;
    return d;
}

Monomial Monomial::var(std::size_t dim, int param, bool bar) {
    Monomial m(dim);
    std::size_t idx = 2 * static_cast<std::size_t>(param - 1) + (bar ? 1 : 0);
    if (param < 1 || idx >= dim) throw DimensionError("parameter X" + std::to_string(param) + " outside dimension");
    m.e[idx] = 1;
    return m;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    if (a.dim() != b.dim()) throw DimensionError("monomial dimension mismatch");
    Monomial r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

bool mono_leq(const Monomial& a, const Monomial& b) {
    if (a.dim() != b.dim()) throw DimensionError("monomial dimension mismatch");
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

bool mono_lt(const Monomial& a, const Monomial& b) { return a != b && mono_leq(a, b); }

ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.inf || b.inf) return ExtNat::infinity();
    if (a.value > std::numeric_limits<uint64_t>::max() - b.value) return ExtNat::infinity();
    return ExtNat(a.value + b.value);
}

ExtNat operator*(ExtNat a, ExtNat b) {
    if (a.is_zero() || b.is_zero()) return ExtNat(0);
    if (a.inf || b.inf) return ExtNat::infinity();
    if (a.value > std::numeric_limits<uint64_t>::max() / b.value) return ExtNat::infinity();
    return ExtNat(a.value * b.value);
}

FormalPolynomial FormalPolynomial::unit(std::size_t dim) {
    FormalPolynomial s(dim);
    s.add(Monomial(dim));
    return s;
}

FormalPolynomial FormalPolynomial::all_one(std::size_t dim, const std::vector<Monomial>& support) {
    FormalPolynomial s(dim);
    for (const auto& m : support) {
        if (m.dim() != dim) throw DimensionError("monomial dimension mismatch");
        s.coeffs_[m] = ExtNat(1);
    }
    return s;
}

void FormalPolynomial::add(const Monomial& m, ExtNat c) {
    if (m.dim() != dim_) throw DimensionError("monomial dimension mismatch");
    if (c.is_zero()) return;
    auto it = coeffs_.find(m);
    if (it == coeffs_.end())
        coeffs_.emplace(m, c);
    else
        it->second = it->second + c;
}

ExtNat FormalPolynomial::coeff(const Monomial& m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? ExtNat(0) : it->second;
}

std::vector<Monomial> FormalPolynomial::support() const {
    std::vector<Monomial> r;
    r.reserve(coeffs_.size());
    for (const auto& [m, c] : coeffs_) r.push_back(m);
    return r;
}

bool FormalPolynomial::is_all_one() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second == ExtNat(1); });
}

uint64_t FormalPolynomial::degree() const {
    uint64_t d = 0;
    for (const auto& [m, c] : coeffs_) d = std::max(d, m.degree());
    return d;
}

FormalPolynomial poly_add(const FormalPolynomial& s, const FormalPolynomial& t) {
    if (s.dim() != t.dim()) throw DimensionError("polynomial dimension mismatch");
    FormalPolynomial r = s;
    for (const auto& [m, c] : t.terms()) r.add(m, c);
    return r;
}

FormalPolynomial poly_mul(const FormalPolynomial& s, const FormalPolynomial& t) {
    if (s.dim() != t.dim()) throw DimensionError("polynomial dimension mismatch");
    FormalPolynomial r(s.dim());
    for (const auto& [a, ca] : s.terms())
        for (const auto& [b, cb] : t.terms()) r.add(mono_mul(a, b), ca * cb);
    return r;
}

Rational ProbAssignment::var_value(std::size_t i) const {
    const Rational& q = p.at(i / 2);
    return (i % 2 == 0) ? q : Rational(1 - q);
}

void ProbAssignment::validate() const {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] < 0 || p[i] > 1)
            throw Error("probability for X" + std::to_string(i + 1) + " outside [0,1]: " + to_string(p[i]));
}

Rational mono_prob(const Monomial& m, const ProbAssignment& p) {
    if (m.dim() != 2 * p.p.size()) throw DimensionError("assignment has wrong number of parameters");
    Rational r = 1;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        if (m.e[i] == 0) continue;
        Rational v = p.var_value(i);
        Rational pw;
        mpz_pow_ui(pw.get_num_mpz_t(), v.get_num_mpz_t(), m.e[i]);
        mpz_pow_ui(pw.get_den_mpz_t(), v.get_den_mpz_t(), m.e[i]);
        pw.canonicalize();
        r *= pw;
    }
    return r;
}

ExtRational eval_prob(const FormalPolynomial& s, const ProbAssignment& p) {
    ExtRational r{Rational(0), false};
    for (const auto& [m, c] : s.terms()) {
        Rational v = mono_prob(m, p);
        if (c.inf) {
            if (v != 0) r.inf = true;
            continue;
        }
        r.value += v * Rational(mpz_class(std::to_string(c.value)));
    }
    return r;
}

FormalPolynomial tropicalize(const FormalPolynomial& s) { return FormalPolynomial::all_one(s.dim(), s.support()); }

std::strong_ordering TropValue::operator<=>(const TropValue& o) const {
    if (inf || o.inf) return static_cast<int>(inf) <=> static_cast<int>(o.inf);
    int c = cmp(value, o.value);
    return c <=> 0;
}

bool TropValue::operator==(const TropValue& o) const {
    if (inf || o.inf) return inf == o.inf;
    return value == o.value;
}

TropValue mono_dot(const Monomial& m, const TropAssignment& z) {
    if (m.dim() != z.z.size()) throw DimensionError("tropical assignment has wrong dimension");
    TropValue r{Rational(0), false};
    for (std::size_t i = 0; i < m.dim(); ++i) {
        if (m.e[i] == 0) continue;
        if (z.z[i].inf) return TropValue::infinity();
        r.value += z.z[i].value * m.e[i];
    }
    return r;
}

TropEval eval_trop(const FormalPolynomial& s, const TropAssignment& z) {
    TropEval r{TropValue::infinity(), {}};
    for (const auto& [m, c] : s.terms()) {
        TropValue v = mono_dot(m, z);
        if (r.argmin.empty() || v < r.value) {
            r.value = v;
            r.argmin = {m};
        } else if (v == r.value) {
            r.argmin.push_back(m);
        }
    }
    return r;
}

double mono_dot(const Monomial& m, const std::vector<double>& z) {
    if (m.dim() != z.size()) throw DimensionError("tropical assignment has wrong dimension");
    double r = 0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        if (m.e[i] != 0) r += z[i] * m.e[i];
    return r;
}

std::vector<Monomial> minimal_elements(const std::vector<Monomial>& pts) {
    std::vector<Monomial> r;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size() && !dominated; ++j)
            if (j != i && mono_lt(pts[j], pts[i])) dominated = true;
        if (!dominated) r.push_back(pts[i]);
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

std::vector<Monomial> minimal_support(const FormalPolynomial& s) { return minimal_elements(s.support()); }

std::string to_string(const Monomial& m) {
    std::string r;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        if (m.e[i] == 0) continue;
        if (!r.empty()) r += "*";
        if (i % 2 == 1) r += "~";
        r += "X" + std::to_string(i / 2 + 1);
        if (m.e[i] > 1) r += "^" + std::to_string(m.e[i]);
    }
    return r.empty() ? "1" : r;
}

std::string to_string(const FormalPolynomial& s) {
    if (s.empty()) return "0";
    std::string r;
    for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
        if (!r.empty()) r += " + ";
        const ExtNat& c = it->second;
        std::string mono = to_string(it->first);
        if (c.inf)
            r += "inf*" + mono;
        else if (c.value != 1)
            r += std::to_string(c.value) + (mono == "1" ? "" : "*" + mono);
        else
            r += mono;
    }
    return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

} // namespace tropinf
