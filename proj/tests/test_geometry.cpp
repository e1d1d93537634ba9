#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tropinf/error.hpp"
#include "tropinf/geometry.hpp"

using namespace tropinf;

namespace {

Monomial mono(std::vector<uint32_t> e) { return Monomial(std::move(e)); }

FormalPolynomial poly(std::size_t dim, const std::vector<std::vector<uint32_t>>& ms) {
    FormalPolynomial s(dim);
    for (const auto& m : ms) s.add(mono(m));
    return s;
}

std::vector<Monomial> random_points(std::mt19937_64& rng, std::size_t dim, int count, int max_exp) {
    std::uniform_int_distribution<int> e(0, max_exp);
    std::vector<Monomial> pts;
    for (int i = 0; i < count; ++i) {
        Monomial m(dim);
        for (auto& x : m.e) x = static_cast<uint32_t>(e(rng));
        pts.push_back(m);
    }
    return pts;
}

FormalPolynomial random_min_poly(std::mt19937_64& rng, std::size_t dim, int max_deg) {
    std::uniform_int_distribution<int> n(1, 5);
    std::vector<Monomial> pts;
    std::uniform_int_distribution<int> e(0, max_deg);
    for (int i = n(rng); i > 0; --i) {
        Monomial m(dim);
        int left = max_deg;
        for (auto& x : m.e) {
            int v = std::min(left, e(rng));
            x = static_cast<uint32_t>(v);
            left -= v;
        }
        pts.push_back(m);
    }
    return FormalPolynomial::all_one(dim, oracle::np_min(pts));
}

} // namespace

TEST_CASE("hull vertices agree with both vertex oracles") {
    std::mt19937_64 rng(oracle::seed() + 10);
    for (std::size_t dim : {1u, 2u, 3u, 4u}) {
        for (int round = 0; round < 60; ++round) {
            auto pts = random_points(rng, dim, 2 + round % 8, 4);
            LatticePolytope h = hull_vertices(pts);
            CHECK(h.vertices == oracle::vertices(pts));
            CHECK(h.vertices == oracle::vertices_caratheodory(pts));
            CHECK(std::is_sorted(h.vertices.begin(), h.vertices.end()));
        }
    }
}

TEST_CASE("collinear and duplicate points") {
    auto h = hull_vertices({mono({0, 3}), mono({1, 2}), mono({2, 1}), mono({3, 0}), mono({1, 2})});
    CHECK(h.vertices == std::vector<Monomial>{mono({0, 3}), mono({3, 0})});
    CHECK_THROWS_AS(hull_vertices({}), Error);
    CHECK(hull_vertices({mono({1, 1})}).vertices.size() == 1);
}

TEST_CASE("minimal Newton polytope") {
    // Three reductions to 1 of the three-choice example.
    MinimalPolytope m = np_min(poly(2, {{2, 0}, {2, 1}, {0, 3}}));
    CHECK(m.polytope.vertices == std::vector<Monomial>{mono({0, 3}), mono({2, 0})});
    CHECK(to_string(m.smin) == "X1^2 + ~X1^3");
    // Coefficients are irrelevant; the empty polynomial stays empty.
    FormalPolynomial zero_side = poly(2, {{1, 1}, {1, 2}});
    zero_side.add(mono({1, 2}));
    CHECK(to_string(min_poly(zero_side)) == "X1*~X1");
    CHECK(min_poly(FormalPolynomial(2)).empty());
    // A minimal point inside the hull is not kept.
    CHECK(to_string(min_poly(poly(2, {{2, 0}, {1, 1}, {0, 2}}))) == "X1^2 + ~X1^2");
}

TEST_CASE("np_min is idempotent and matches the oracle") {
    std::mt19937_64 rng(oracle::seed() + 11);
    for (int round = 0; round < 80; ++round) {
        auto pts = random_points(rng, 3, 1 + round % 9, 4);
        FormalPolynomial s = FormalPolynomial::all_one(3, pts);
        FormalPolynomial m = min_poly(s);
        CHECK(m.support() == oracle::np_min(pts));
        CHECK(min_poly(m) == m);
    }
}

TEST_CASE("Minkowski sum of polytopes") {
    LatticePolytope a{2, {mono({0, 0}), mono({1, 0}), mono({0, 1})}};
    LatticePolytope b{2, {mono({0, 0}), mono({1, 1})}};
    LatticePolytope s = minkowski_vertices(a, b);
    auto expect = oracle::vertices(oracle::product_support({a.vertices, b.vertices}, 2));
    CHECK(s.vertices == expect);
    CHECK_THROWS_AS(minkowski_vertices(a, LatticePolytope{3, {}}), DimensionError);
}

TEST_CASE("vn on the freshman dream") {
    FormalPolynomial x = poly(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    for (std::size_t k = 2; k <= 5; ++k) {
        std::vector<FormalPolynomial> copies(k, x);
        FormalPolynomial r = vn(copies);
        FormalPolynomial expect(3);
        expect.add(mono({uint32_t(k), 0, 0}));
        expect.add(mono({0, uint32_t(k), 0}));
        expect.add(mono({0, 0, uint32_t(k)}));
        CHECK(r == expect);
    }
}

TEST_CASE("vn agrees with minimizing the naive product") {
    std::mt19937_64 rng(oracle::seed() + 12);
    for (int round = 0; round < 40; ++round) {
        std::size_t dim = 2 + round % 2;
        FormalPolynomial s = random_min_poly(rng, dim, 4), t = random_min_poly(rng, dim, 4);
        auto terms = vn_terms({s, t}, dim);
        std::vector<Monomial> got;
        for (const auto& term : terms) {
            got.push_back(term.mono);
            REQUIRE(term.factors.size() == 2);
            CHECK(s.contains(term.factors[0]));
            CHECK(t.contains(term.factors[1]));
            CHECK(mono_mul(term.factors[0], term.factors[1]) == term.mono);
        }
        CHECK(got == oracle::np_min(oracle::product_support({s.support(), t.support()}, dim)));
        // Fold order does not matter.
        CHECK(vn({s, t}) == vn({t, s}));
    }
    CHECK(vn({poly(2, {{1, 0}}), FormalPolynomial(2)}).empty());
    CHECK_THROWS(vn({}));
}

TEST_CASE("normal cones") {
    FormalPolynomial s = poly(2, {{2, 0}, {0, 3}});
    NormalCone c = normal_cone(mono({0, 3}), s);
    HalfspaceSystem h = irredundant(c.system);
    REQUIRE(h.rows.size() == 1);
    CHECK(row_to_string(h.rows[0]) == "3*z~1 <= 2*z1");
    REQUIRE(c.witness);
    CHECK(c.strict);
    CHECK(c.system.contains(*c.witness));
    CHECK_THROWS_AS(normal_cone(mono({1, 1}), s), Error);

    NormalCone whole = normal_cone(mono({1, 0}), poly(2, {{1, 0}}));
    CHECK(whole.system.rows.empty());
    CHECK(whole.strict);
}

TEST_CASE("cone membership matches tropical argmin at random points") {
    std::mt19937_64 rng(oracle::seed() + 13);
    for (int round = 0; round < 30; ++round) {
        FormalPolynomial s = random_min_poly(rng, 3, 5);
        auto support = s.support();
        for (const auto& mu : support) {
            NormalCone c = normal_cone(mu, s);
            HalfspaceSystem h = irredundant(c.system);
            if (c.witness) {
                CHECK(oracle::dot(mu, *c.witness) == oracle::trop_min(support, *c.witness));
            }
            for (int i = 0; i < 20; ++i) {
                auto z = oracle::random_point(rng, 3);
                bool is_min = oracle::dot(mu, z) == oracle::trop_min(support, z);
                CHECK(c.system.contains(z) == is_min);
                CHECK(h.contains(z) == is_min);
            }
        }
    }
}

TEST_CASE("irredundant keeps the feasible set") {
    HalfspaceSystem h;
    h.dim = 2;
    auto r = [](long a, long b) { return std::vector<Rational>{Rational(a), Rational(b)}; };
    h.rows = {r(-2, 3), r(-4, 6), r(-1, 1), r(-6, 9)};
    HalfspaceSystem out = irredundant(h);
    REQUIRE(out.rows.size() == 1);
    CHECK(out.rows[0] == r(-2, 3));
}
