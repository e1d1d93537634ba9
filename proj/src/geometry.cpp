#include "tropinf/geometry.hpp"

#include <algorithm>
#include <map>

#include "tropinf/error.hpp"
#include "tropinf/lp.hpp"

namespace tropinf {

namespace {

std::vector<Monomial> sorted_unique(std::vector<Monomial> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// A point that is the unique extreme along a coordinate is a vertex; saves an LP.
bool unique_coordinate_extreme(const std::vector<Monomial>& pts, std::size_t idx) {
    const Monomial& p = pts[idx];
    for (std::size_t c = 0; c < p.dim(); ++c) {
        bool is_max = true, is_min = true;
        for (std::size_t j = 0; j < pts.size() && (is_max || is_min); ++j) {
            if (j == idx) continue;
            if (pts[j].e[c] >= p.e[c]) is_max = false;
            if (pts[j].e[c] <= p.e[c]) is_min = false;
        }
        if (is_max || is_min) return true;
    }
    return false;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

std::vector<Rational> scaled_to_integers(std::vector<Rational> row) {
    mpz_class l = 1, g = 0;
    for (const auto& v : row) l = lcm(l, mpz_class(v.get_den()));
    for (auto& v : row) {
        v *= l;
        g = gcd(g, mpz_class(v.get_num()));
    }
    if (g > 1)
        for (auto& v : row) v /= g;
    return row;
}

} // namespace

bool in_convex_hull(const Monomial& p, const std::vector<Monomial>& others) {
    if (others.empty()) return false;
    const std::size_t d = p.dim();
    for (std::size_t c = 0; c < d; ++c) {
        uint32_t lo = others[0].e[c], hi = others[0].e[c];
        for (const auto& q : others) {
            lo = std::min(lo, q.e[c]);
            hi = std::max(hi, q.e[c]);
        }
        if (p.e[c] < lo || p.e[c] > hi) return false;
    }
    for (const auto& q : others)
        if (q == p) return true;

    LPProblem lp;
    lp.n = others.size();
    lp.objective.assign(lp.n, Rational(0));
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<Rational> row(lp.n);
        bool constant = true;
        for (std::size_t j = 0; j < lp.n; ++j) {
            row[j] = others[j].e[c];
            if (others[j].e[c] != p.e[c]) constant = false;
        }
        if (constant) continue; // implied by the convexity row
        lp.add_row(std::move(row), Sense::Eq, Rational(p.e[c]));
    }
    lp.add_row(std::vector<Rational>(lp.n, Rational(1)), Sense::Eq, Rational(1));
    return lp_solve(lp).status == LPResult::Optimal;
}

LatticePolytope hull_vertices(const std::vector<Monomial>& points) {
    if (points.empty()) throw Error("hull_vertices of an empty point set");
    const std::size_t d = points[0].dim();
    for (const auto& p : points)
        if (p.dim() != d) throw DimensionError("points of different dimension");
    std::vector<Monomial> pts = sorted_unique(points);
    LatticePolytope r{d, {}};
    if (pts.size() <= 2) {
        r.vertices = pts;
        return r;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        // Lexicographic extremes are always vertices.
        if (i == 0 || i + 1 == pts.size() || unique_coordinate_extreme(pts, i)) {
            r.vertices.push_back(pts[i]);
            continue;
        }
        std::vector<Monomial> others;
        others.reserve(pts.size() - 1);
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (!in_convex_hull(pts[i], others)) r.vertices.push_back(pts[i]);
    }
    return r;
}

MinimalPolytope np_min(const FormalPolynomial& s) {
    MinimalPolytope r{{s.dim(), {}}, FormalPolynomial(s.dim())};
    if (s.empty()) return r;
    LatticePolytope hull = hull_vertices(s.support());
    r.polytope.vertices = minimal_elements(hull.vertices);
    r.smin = FormalPolynomial::all_one(s.dim(), r.polytope.vertices);
    return r;
}

FormalPolynomial min_poly(const FormalPolynomial& s) { return np_min(s).smin; }

LatticePolytope minkowski_vertices(const LatticePolytope& a, const LatticePolytope& b) {
    if (a.dim != b.dim) throw DimensionError("Minkowski sum of polytopes of different dimension");
    if (a.vertices.empty() || b.vertices.empty()) return {a.dim, {}};
    std::vector<Monomial> sums;
    sums.reserve(a.vertices.size() * b.vertices.size());
    for (const auto& u : a.vertices)
        for (const auto& v : b.vertices) sums.push_back(mono_mul(u, v));
    return hull_vertices(sums);
}

std::vector<VNTerm> vn_terms(const std::vector<FormalPolynomial>& polys, std::size_t dim) {
    for (const auto& s : polys)
        if (s.dim() != dim) throw DimensionError("vn inputs of different dimension");
    if (polys.empty()) return {VNTerm{Monomial(dim), {}}};
    for (const auto& s : polys)
        if (s.empty()) return {};

    // Current vertex set, each with the first factorization found.
    std::map<Monomial, std::vector<Monomial>> cur;
    for (const auto& v : hull_vertices(polys[0].support()).vertices) cur.emplace(v, std::vector<Monomial>{v});
    for (std::size_t k = 1; k < polys.size(); ++k) {
        std::vector<Monomial> next = hull_vertices(polys[k].support()).vertices;
        std::map<Monomial, std::vector<Monomial>> sums;
        for (const auto& [u, fac] : cur)
            for (const auto& v : next) {
                Monomial w = mono_mul(u, v);
                if (sums.count(w)) continue;
                auto f = fac;
                f.push_back(v);
                sums.emplace(std::move(w), std::move(f));
            }
        std::vector<Monomial> pts;
        pts.reserve(sums.size());
        for (const auto& [w, f] : sums) pts.push_back(w);
        cur.clear();
        for (const auto& w : hull_vertices(pts).vertices) cur.emplace(w, std::move(sums[w]));
    }
    std::vector<Monomial> verts;
    for (const auto& [w, f] : cur) verts.push_back(w);
    std::vector<VNTerm> out;
    for (const auto& w : minimal_elements(verts)) out.push_back({w, cur[w]});
    return out;
}

FormalPolynomial vn(const std::vector<FormalPolynomial>& polys) {
    if (polys.empty()) throw Error("vn of an empty list needs a dimension; use vn_terms");
    std::size_t dim = polys[0].dim();
    FormalPolynomial r(dim);
    for (const auto& t : vn_terms(polys, dim)) r.add(t.mono);
    return r;
}

bool HalfspaceSystem::contains(const std::vector<Rational>& x) const {
    if (x.size() != dim) throw DimensionError("point dimension differs from cone dimension");
    for (const auto& v : x)
        if (v < 0) return false;
    for (const auto& r : rows)
        if (dot(r, x) > 0) return false;
    return true;
}

NormalCone normal_cone(const Monomial& mu, const FormalPolynomial& s) {
    if (!s.contains(mu)) throw Error("monomial " + to_string(mu) + " is not in the support");
    const std::size_t d = s.dim();
    NormalCone nc;
    nc.system.dim = d;
    for (const auto& nu : s.support()) {
        if (nu == mu) continue;
        std::vector<Rational> row(d);
        for (std::size_t i = 0; i < d; ++i) row[i] = Rational(static_cast<long>(mu.e[i])) - static_cast<long>(nu.e[i]);
        nc.system.rows.push_back(std::move(row));
    }

    // Stage 1: maximize the smallest slack over rows and coordinates.
    for (int stage = 1; stage <= 2; ++stage) {
        LPProblem lp;
        lp.n = d + 1;
        lp.objective.assign(lp.n, Rational(0));
        lp.objective[d] = 1;
        for (const auto& row : nc.system.rows) {
            auto a = row;
            a.push_back(1);
            lp.add_row(std::move(a), Sense::Le, 0);
        }
        if (stage == 1) {
            for (std::size_t i = 0; i < d; ++i) {
                std::vector<Rational> a(lp.n);
                a[i] = -1;
                a[d] = 1;
                lp.add_row(std::move(a), Sense::Le, 0);
            }
        }
        std::vector<Rational> norm(lp.n, Rational(1));
        norm[d] = 0;
        lp.add_row(std::move(norm), Sense::Le, 1);
        LPResult res = lp_solve(lp);
        if (res.status == LPResult::Optimal && res.value > 0) {
            std::vector<Rational> w(d);
            for (std::size_t i = 0; i < d; ++i) w[i] = res.x[i] / res.value;
            nc.witness = std::move(w);
            nc.strict = (stage == 1);
            return nc;
        }
    }

    // Boundary witness: any nonzero point of the cone.
    LPProblem lp;
    lp.n = d;
    lp.objective.assign(d, Rational(0));
    for (const auto& row : nc.system.rows) lp.add_row(row, Sense::Le, 0);
    lp.add_row(std::vector<Rational>(d, Rational(1)), Sense::Eq, 1);
    LPResult res = lp_solve(lp);
    if (res.status == LPResult::Optimal) nc.witness = res.x;
    return nc;
}

HalfspaceSystem irredundant(const HalfspaceSystem& h) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : h.rows) {
        auto s = scaled_to_integers(r);
        if (std::find(rows.begin(), rows.end(), s) == rows.end()) rows.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < rows.size();) {
        LPProblem lp;
        lp.n = h.dim;
        lp.objective = rows[i];
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != i) lp.add_row(rows[j], Sense::Le, 0);
        lp.add_row(std::vector<Rational>(h.dim, Rational(1)), Sense::Le, 1);
        LPResult res = lp_solve(lp);
        if (res.status == LPResult::Optimal && res.value <= 0)
            rows.erase(rows.begin() + i);
        else
            ++i;
    }
    return {h.dim, rows};
}

std::string row_to_string(const std::vector<Rational>& row) {
    auto side = [&](int sign) {
        std::string out;
        for (std::size_t i = 0; i < row.size(); ++i) {
            Rational c = row[i] * sign;
            if (c <= 0) continue;
            if (!out.empty()) out += " + ";
            if (c != 1) out += to_string(c) + "*";
            out += (i % 2 == 1 ? "z~" : "z") + std::to_string(i / 2 + 1);
        }
        return out.empty() ? std::string("0") : out;
    };
    return side(1) + " <= " + side(-1);
}

} // namespace tropinf
