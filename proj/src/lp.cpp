#include "tropinf/lp.hpp"

#include "tropinf/error.hpp"

namespace tropinf {

namespace {

struct Tableau {
    std::size_t m = 0, cols = 0; // cols excludes rhs
    std::vector<std::vector<Rational>> t; // m rows of cols+1
    std::vector<std::size_t> basis;

    void pivot(std::size_t r, std::size_t c, std::vector<Rational>& z) {
        Rational piv = t[r][c];
        for (auto& v : t[r]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || t[i][c] == 0) continue;
            Rational f = t[i][c];
            for (std::size_t j = 0; j <= cols; ++j)
                if (t[r][j] != 0) t[i][j] -= f * t[r][j];
        }
        if (z[c] != 0) {
            Rational f = z[c];
            for (std::size_t j = 0; j <= cols; ++j)
                if (t[r][j] != 0) z[j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    // z holds reduced costs (z_j = c_B B^-1 A_j - c_j) plus the objective value in z[cols].
    // Columns with allowed[j] == false never enter.
    bool optimize(std::vector<Rational>& z, const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j)
                if (allowed[j] && z[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == cols) return true;
            std::size_t leave = m;
            Rational best;
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rational ratio = t[i][cols] / t[i][enter];
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return false;
            pivot(leave, enter, z);
        }
    }

    std::vector<Rational> reduced_costs(const std::vector<Rational>& c) const {
        std::vector<Rational> z(cols + 1);
        for (std::size_t j = 0; j < cols; ++j) z[j] = -c[j];
        for (std::size_t i = 0; i < m; ++i) {
            const Rational& cb = c[basis[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols; ++j) z[j] += cb * t[i][j];
        }
        return z;
    }
};

} // namespace

LPResult lp_solve(const LPProblem& p) {
    const std::size_t n = p.n;
    if (p.objective.size() != n) throw DimensionError("objective length differs from variable count");
    for (const auto& r : p.rows)
        if (r.a.size() != n) throw DimensionError("constraint row length differs from variable count");

    std::vector<LPRow> rows = p.rows;
    for (auto& r : rows) {
        if (r.b < 0) {
            for (auto& v : r.a) v = -v;
            r.b = -r.b;
            if (r.sense == Sense::Le)
                r.sense = Sense::Ge;
            else if (r.sense == Sense::Ge)
                r.sense = Sense::Le;
        }
    }

    const std::size_t m = rows.size();
    std::size_t n_slack = 0, n_art = 0;
    for (const auto& r : rows) {
        if (r.sense != Sense::Eq) ++n_slack;
        if (r.sense != Sense::Le) ++n_art;
    }
    Tableau T;
    T.m = m;
    T.cols = n + n_slack + n_art;
    T.t.assign(m, std::vector<Rational>(T.cols + 1));
    T.basis.assign(m, 0);
    std::size_t s = n, a = n + n_slack;
    std::vector<bool> is_art(T.cols, false);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) T.t[i][j] = rows[i].a[j];
        T.t[i][T.cols] = rows[i].b;
        if (rows[i].sense == Sense::Le) {
            T.t[i][s] = 1;
            T.basis[i] = s++;
        } else {
            if (rows[i].sense == Sense::Ge) T.t[i][s++] = -1;
            T.t[i][a] = 1;
            is_art[a] = true;
            T.basis[i] = a++;
        }
    }

    std::vector<bool> allowed(T.cols, true);
    if (n_art > 0) {
        std::vector<Rational> c1(T.cols);
        for (std::size_t j = 0; j < T.cols; ++j)
            if (is_art[j]) c1[j] = -1;
        auto z = T.reduced_costs(c1);
        T.optimize(z, allowed);
        if (z[T.cols] < 0) return {LPResult::Infeasible, {}, {}};
        // Drive zero-level artificials out of the basis; drop rows that are redundant.
        for (std::size_t i = 0; i < T.m;) {
            if (!is_art[T.basis[i]]) {
                ++i;
                continue;
            }
            std::size_t c = T.cols;
            for (std::size_t j = 0; j < T.cols; ++j)
                if (!is_art[j] && T.t[i][j] != 0) {
                    c = j;
                    break;
                }
            if (c == T.cols) {
                T.t.erase(T.t.begin() + i);
                T.basis.erase(T.basis.begin() + i);
                --T.m;
                continue;
            }
            T.pivot(i, c, z);
            ++i;
        }
        for (std::size_t j = 0; j < T.cols; ++j)
            if (is_art[j]) allowed[j] = false;
    }

    std::vector<Rational> c2(T.cols);
    for (std::size_t j = 0; j < n; ++j) c2[j] = p.objective[j];
    auto z = T.reduced_costs(c2);
    if (!T.optimize(z, allowed)) return {LPResult::Unbounded, {}, {}};

    LPResult r;
    r.status = LPResult::Optimal;
    r.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < T.m; ++i)
        if (T.basis[i] < n) r.x[T.basis[i]] = T.t[i][T.cols];
    r.value = z[T.cols];
    return r;
}

} // namespace tropinf
