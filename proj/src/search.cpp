#include <algorithm>
#include <functional>
#include <tuple>

#include "tropinf/error.hpp"
#include "tropinf/geometry.hpp"
#include "tropinf/typesys.hpp"

namespace tropinf {

namespace {

using Key = std::tuple<Context, ITypeId, int>;

Key key_of(const Entry& e) { return {e.ctx, e.type, e.ycount}; }

constexpr std::size_t kMaxProductTerms = 2000000;

struct Product {
    Monomial mono;
    std::vector<Monomial> factors;
};

std::vector<Product> products(const std::vector<const Entry*>& parts, std::size_t dim, Mode mode) {
    if (mode == Mode::Min) {
        bool single = true;
        for (const Entry* e : parts) single = single && e->poly.size() == 1;
        if (single) {
            Product p{Monomial(dim), {}};
            for (const Entry* e : parts) {
                const Monomial& m = e->poly.terms().begin()->first;
                p.mono = mono_mul(p.mono, m);
                p.factors.push_back(m);
            }
            return {p};
        }
        std::vector<FormalPolynomial> polys;
        polys.reserve(parts.size());
        for (const Entry* e : parts) polys.push_back(e->poly);
        std::vector<Product> out;
        for (auto& t : vn_terms(polys, dim)) out.push_back({std::move(t.mono), std::move(t.factors)});
        return out;
    }
    std::map<Monomial, std::vector<Monomial>> cur{{Monomial(dim), {}}};
    for (const Entry* e : parts) {
        std::map<Monomial, std::vector<Monomial>> next;
        for (const auto& [u, f] : cur)
            for (const auto& [v, c] : e->poly.terms()) {
                Monomial w = mono_mul(u, v);
                if (next.count(w)) continue;
                auto g = f;
                g.push_back(v);
                next.emplace(std::move(w), std::move(g));
            }
        if (next.size() > kMaxProductTerms) throw ResourceExhausted("trajectory polynomial too large");
        cur = std::move(next);
    }
    std::vector<Product> out;
    for (auto& [m, f] : cur) out.push_back({m, std::move(f)});
    return out;
}

using Builder = std::function<TraceRef(const std::vector<TraceRef>&)>;

Entry combine(Context ctx, ITypeId type, int ycount, const std::vector<const Entry*>& parts, std::size_t dim, Mode mode,
              const Builder& build) {
    Entry e;
    e.ctx = std::move(ctx);
    e.type = type;
    e.ycount = ycount;
    e.poly = FormalPolynomial(dim);
    for (const auto& pr : products(parts, dim, mode)) {
        e.poly.add(pr.mono);
        if (mode == Mode::Min) {
            std::vector<TraceRef> ts;
            ts.reserve(parts.size());
            for (std::size_t i = 0; i < parts.size(); ++i) ts.push_back(parts[i]->traces.at(pr.factors[i]));
            e.traces.emplace(pr.mono, build(ts));
        }
    }
    return e;
}

// Multiplies every monomial by one formal variable.
Entry shifted(const Entry& in, const Monomial& by, Mode mode, uint8_t bit, int param) {
    Entry e;
    e.ctx = in.ctx;
    e.type = in.type;
    e.ycount = in.ycount;
    e.poly = FormalPolynomial(in.poly.dim());
    for (const auto& [m, c] : in.poly.terms()) {
        Monomial w = mono_mul(m, by);
        e.poly.add(w, c);
        if (mode == Mode::Min) e.traces.emplace(w, trace_choice(bit, param, in.traces.at(m)));
    }
    return e;
}

void check_size(const std::vector<Entry>& es, const Universe& u, const Term& site) {
    if (es.size() > u.max_entries)
        throw ResourceExhausted("judgement for '" + to_string(site) + "' exceeds " + std::to_string(u.max_entries) +
                                " entries at (n, p) = (" + std::to_string(u.n) + ", " + std::to_string(u.p) + ")");
}

// App and Fix: an arrow entry of F consumes one entry of N per element of its multiset.
std::vector<Entry> apply_args(const std::vector<Entry>& fs, const std::vector<Entry>& ns, int extra_y, Universe& u,
                              Mode mode, const Term& site) {
    std::map<ITypeId, std::vector<const Entry*>> by_type;
    for (const auto& e : ns) by_type[e.type].push_back(&e);
    static const std::vector<const Entry*> none;
    std::vector<Entry> out;
    std::size_t work = 0;
    for (const auto& f : fs) {
        if (u.types.is_atom(f.type)) continue;
        int y0 = f.ycount + extra_y;
        if (y0 > static_cast<int>(u.n)) continue;
        const std::vector<ITypeId> m = u.types.args(f.type);
        const ITypeId result = u.types.result(f.type);
        const std::size_t q = m.size();
        std::vector<const std::vector<const Entry*>*> cands(q);
        bool possible = true;
        for (std::size_t i = 0; i < q; ++i) {
            auto it = by_type.find(m[i]);
            cands[i] = it == by_type.end() ? &none : &it->second;
            possible = possible && !cands[i]->empty();
        }
        if (!possible) continue;
        std::vector<const Entry*> parts(q + 1);
        parts[0] = &f;
        Builder build = [&](const std::vector<TraceRef>& ts) {
            std::vector<std::pair<TraceRef, ITypeId>> args;
            args.reserve(q);
            for (std::size_t i = 0; i < q; ++i) args.emplace_back(ts[i + 1], m[i]);
            return trace_app(ts[0], std::move(args));
        };
        std::function<void(std::size_t, std::size_t, const Context&, int)> rec = [&](std::size_t pos, std::size_t start,
                                                                                      const Context& ctx, int y) {
            if (pos == q) {
                out.push_back(combine(ctx, result, y, parts, u.dim, mode, build));
                if (out.size() > 4 * u.max_entries) check_size(out, u, site);
                return;
            }
            const auto& cs = *cands[pos];
            std::size_t s0 = (pos > 0 && m[pos] == m[pos - 1]) ? start : 0;
            for (std::size_t i = s0; i < cs.size(); ++i) {
                if (++work > 64 * u.max_entries)
                    throw ResourceExhausted("argument combinations for '" + to_string(site) + "' exceed the budget");
                const Entry* a = cs[i];
                int y2 = y + a->ycount;
                if (y2 > static_cast<int>(u.n)) continue;
                Context c2 = context_sum(ctx, a->ctx);
                if (context_max_multiplicity(c2) > u.p) continue;
                parts[pos + 1] = a;
                rec(pos + 1, i, c2, y2);
            }
        };
        rec(0, 0, f.ctx, y0);
    }
    return merge(std::move(out), mode);
}

} // namespace

std::vector<Entry> merge(std::vector<Entry> entries, Mode mode) {
    std::map<Key, std::size_t> index;
    std::vector<Entry> groups;
    std::vector<bool> multi;
    for (auto& e : entries) {
        Key k = key_of(e);
        auto it = index.find(k);
        if (it == index.end()) {
            index.emplace(std::move(k), groups.size());
            groups.push_back(std::move(e));
            multi.push_back(false);
            continue;
        }
        Entry& g = groups[it->second];
        multi[it->second] = true;
        for (const auto& [m, c] : e.poly.terms()) {
            if (g.poly.contains(m)) continue;
            g.poly.add(m);
            auto t = e.traces.find(m);
            if (t != e.traces.end()) g.traces.emplace(m, t->second);
        }
    }
    std::vector<Entry> out;
    out.reserve(groups.size());
    for (const auto& [k, i] : index) {
        Entry& g = groups[i];
        if (multi[i] && mode == Mode::Min) {
            FormalPolynomial sm = min_poly(g.poly);
            std::map<Monomial, TraceRef> kept;
            for (const auto& [m, c] : sm.terms()) kept.emplace(m, g.traces.at(m));
            g.poly = std::move(sm);
            g.traces = std::move(kept);
        }
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<Entry> apply_rule(Rule rule, const Term& site, const std::vector<const std::vector<Entry>*>& premises,
                              Universe& u, Mode mode, const SimpleType* var_type) {
    auto need = [&](std::size_t k) {
        if (premises.size() != k)
            throw InvariantError(rule_name(rule) + " expects " + std::to_string(k) + " premises, got " +
                                 std::to_string(premises.size()));
    };
    const std::size_t dim = u.dim;
    std::vector<Entry> out;
    switch (rule) {
    case Rule::Empty:
        need(0);
        return out;
    case Rule::Num: {
        need(0);
        Entry e;
        e.type = u.types.atom(0);
        e.poly = FormalPolynomial::unit(dim);
        if (mode == Mode::Min) e.traces.emplace(Monomial(dim), trace_unit());
        out.push_back(std::move(e));
        return out;
    }
    case Rule::Id: {
        need(0);
        if (!var_type) throw InvariantError("Id rule without a variable type");
        int v = u.var_id(site.name);
        for (ITypeId t : u.refinements(*var_type)) {
            Entry e;
            e.ctx = {{v, t}};
            e.type = t;
            e.poly = FormalPolynomial::unit(dim);
            if (mode == Mode::Min) e.traces.emplace(Monomial(dim), trace_hole(v, t));
            out.push_back(std::move(e));
        }
        return out;
    }
    case Rule::Succ:
    case Rule::Pred: {
        need(1);
        for (const auto& in : *premises[0]) {
            if (!u.types.is_atom(in.type)) continue;
            uint64_t a = u.types.atom_value(in.type);
            Entry e = in;
            e.type = u.types.atom(rule == Rule::Succ ? a + 1 : (a == 0 ? 0 : a - 1));
            out.push_back(std::move(e));
        }
        return rule == Rule::Succ ? out : merge(std::move(out), mode);
    }
    case Rule::Lambda: {
        need(1);
        int v = u.var_id(site.name);
        for (const auto& in : *premises[0]) {
            Entry e;
            e.ctx = in.ctx;
            std::vector<ITypeId> m = context_take(e.ctx, v);
            if (m.size() > u.p) continue;
            e.type = u.types.arrow(std::move(m), in.type);
            e.ycount = in.ycount;
            e.poly = in.poly;
            for (const auto& [mono, t] : in.traces) e.traces.emplace(mono, trace_lam(v, t));
            out.push_back(std::move(e));
        }
        return out;
    }
    case Rule::Oplus: {
        need(2);
        for (uint8_t side = 0; side < 2; ++side) {
            Monomial x = Monomial::var(dim, site.param, side == 1);
            for (const auto& in : *premises[side]) out.push_back(shifted(in, x, mode, side, site.param));
        }
        return merge(std::move(out), mode);
    }
    case Rule::Ifz: {
        need(3);
        Builder build = [](const std::vector<TraceRef>& ts) { return trace_seq(ts[0], ts[1]); };
        for (const auto& s : *premises[0]) {
            if (!u.types.is_atom(s.type)) continue;
            const auto& branch = u.types.atom_value(s.type) == 0 ? *premises[1] : *premises[2];
            for (const auto& b : branch) {
                int y = s.ycount + b.ycount;
                if (y > static_cast<int>(u.n)) continue;
                Context ctx = context_sum(s.ctx, b.ctx);
                if (context_max_multiplicity(ctx) > u.p) continue;
                out.push_back(combine(std::move(ctx), b.type, y, {&s, &b}, dim, mode, build));
            }
        }
        return merge(std::move(out), mode);
    }
    case Rule::App:
        need(2);
        return apply_args(*premises[0], *premises[1], 0, u, mode, site);
    case Rule::Fix:
        need(2);
        return apply_args(*premises[0], *premises[1], 1, u, mode, site);
    }
    throw InvariantError("unknown rule");
}

namespace {

class DerivationBuilder {
public:
    DerivationBuilder(Universe& u, const Typing& ty) : u_(u), ty_(ty) {}

    DerivPtr build(const Term& t) {
        auto it = memo_.find(&t);
        if (it != memo_.end()) return it->second;
        DerivPtr d = build_inner(t);
        memo_.emplace(&t, d);
        return d;
    }

    std::size_t count() const { return count_; }

private:
    Universe& u_;
    const Typing& ty_;
    std::map<const Term*, DerivPtr> memo_;
    std::size_t count_ = 0;

    DerivPtr node(Rule r, const Term& t, std::vector<DerivPtr> premises, int level = -1, STypePtr vt = nullptr) {
        auto d = std::make_shared<TropDerivation>();
        d->rule = r;
        d->subject = &t;
        d->premises = std::move(premises);
        d->level = level;
        d->var_type = std::move(vt);
        std::vector<const std::vector<Entry>*> ps;
        for (const auto& p : d->premises) ps.push_back(&p->entries);
        d->entries = apply_rule(r, t, ps, u_, Mode::Min, d->var_type.get());
        check_size(d->entries, u_, t);
        ++count_;
        return d;
    }

    DerivPtr build_inner(const Term& t) {
        switch (t.kind) {
        case TermKind::Zero:
            return node(Rule::Num, t, {});
        case TermKind::Succ:
            return node(Rule::Succ, t, {build(*t.a)});
        case TermKind::Pred:
            return node(Rule::Pred, t, {build(*t.a)});
        case TermKind::Ifz:
            return node(Rule::Ifz, t, {build(*t.a), build(*t.b), build(*t.c)});
        case TermKind::Var: {
            auto it = ty_.node_types.find(&t);
            if (it == ty_.node_types.end()) throw InvariantError("untyped variable occurrence '" + t.name + "'");
            return node(Rule::Id, t, {}, -1, it->second);
        }
        case TermKind::Lam:
            return node(Rule::Lambda, t, {build(*t.a)});
        case TermKind::App:
            return node(Rule::App, t, {build(*t.a), build(*t.b)});
        case TermKind::Choice:
            return node(Rule::Oplus, t, {build(*t.a), build(*t.b)});
        case TermKind::Fix: {
            DerivPtr m = build(*t.a);
            DerivPtr prev = node(Rule::Empty, t, {}, 0);
            for (uint64_t level = 1; level <= u_.n; ++level)
                prev = node(Rule::Fix, t, {m, prev}, static_cast<int>(level));
            return prev;
        }
        }
        throw InvariantError("unknown term kind");
    }
};

bool word_less(const ChoiceWord& a, const ChoiceWord& b) {
    if (a.bits != b.bits) return a.bits < b.bits;
    return a.params < b.params;
}

Entry conclude(const std::vector<Entry>& entries, Universe& u, uint64_t target) {
    Entry out;
    out.type = u.types.atom(target);
    out.ycount = -1;
    out.poly = FormalPolynomial(u.dim);
    std::map<Monomial, ChoiceWord> words;
    for (const auto& e : entries) {
        if (!e.ctx.empty() || e.type != out.type) continue;
        for (const auto& [m, c] : e.poly.terms()) {
            auto t = e.traces.find(m);
            if (!out.poly.contains(m)) {
                out.poly.add(m);
                if (t != e.traces.end()) {
                    out.traces.emplace(m, t->second);
                    words.emplace(m, eval_trace(t->second));
                }
                continue;
            }
            if (t == e.traces.end()) continue;
            ChoiceWord w = eval_trace(t->second);
            if (word_less(w, words.at(m))) {
                words[m] = w;
                out.traces[m] = t->second;
            }
        }
    }
    FormalPolynomial sm = min_poly(out.poly);
    std::map<Monomial, TraceRef> kept;
    for (const auto& [m, c] : sm.terms())
        if (auto t = out.traces.find(m); t != out.traces.end()) kept.emplace(m, t->second);
    out.poly = std::move(sm);
    out.traces = std::move(kept);
    return out;
}

} // namespace

SearchResult search(const Program& prog, const Typing& typing, uint64_t target, uint64_t n, uint64_t p,
                    std::size_t max_entries) {
    SearchResult r;
    r.term = prog.term;
    r.universe = std::make_shared<Universe>();
    Universe& u = *r.universe;
    u.dim = 2 * static_cast<std::size_t>(prog.params);
    u.n = n;
    u.p = p;
    u.max_entries = max_entries;
    r.target = target;
    DerivationBuilder b(u, typing);
    r.root = b.build(*prog.term);
    r.judgement_count = b.count();
    r.conclusion = conclude(r.root->entries, u, target);
    return r;
}

std::vector<Entry> traj_entries(const SearchResult& r) {
    Universe& u = *r.universe;
    std::map<const TropDerivation*, std::vector<Entry>> memo;
    std::function<const std::vector<Entry>&(const TropDerivation&)> go = [&](const TropDerivation& d)
        -> const std::vector<Entry>& {
        auto it = memo.find(&d);
        if (it != memo.end()) return it->second;
        std::vector<const std::vector<Entry>*> ps;
        for (const auto& p : d.premises) ps.push_back(&go(*p));
        auto es = apply_rule(d.rule, *d.subject, ps, u, Mode::Traj, d.var_type.get());
        return memo.emplace(&d, std::move(es)).first->second;
    };
    return go(*r.root);
}

FormalPolynomial traj_poly(const SearchResult& r) {
    Universe& u = *r.universe;
    ITypeId t = u.types.atom(r.target);
    FormalPolynomial out(u.dim);
    for (const auto& e : traj_entries(r)) {
        if (!e.ctx.empty() || e.type != t) continue;
        for (const auto& [m, c] : e.poly.terms())
            if (!out.contains(m)) out.add(m);
    }
    return out;
}

StabilizeResult stabilize(const Program& prog, const Typing& typing, uint64_t target, const StabilizeConfig& cfg) {
    if (cfg.window < 1 || cfg.max_rounds < 1) throw Error("stabilization window and round limit must be positive");
    StabilizeResult out;
    std::vector<FormalPolynomial> history;
    bool have = false;
    const bool fix_free = !contains_fix(*prog.term);
    for (int round = 1; round <= cfg.max_rounds; ++round) {
        uint64_t n = static_cast<uint64_t>(round + 2) / 2;
        uint64_t p = static_cast<uint64_t>(round + 1) / 2;
        bool repeat = have && fix_free && out.last.universe->p == p;
        if (!repeat) {
            try {
                out.last = search(prog, typing, target, n, p, cfg.max_entries);
            } catch (const ResourceExhausted& e) {
                if (!have) throw;
                out.exhausted = e.what();
                return out;
            }
        }
        have = true;
        out.schedule.emplace_back(n, p);
        if (repeat) continue;
        history.push_back(out.last.conclusion.poly);
        std::size_t h = history.size();
        if (h > static_cast<std::size_t>(cfg.window)) {
            bool same = true;
            for (std::size_t i = h - 1 - cfg.window; i + 1 < h; ++i) same = same && history[i] == history[h - 1];
            if (same) {
                out.stable = true;
                return out;
            }
        }
    }
    return out;
}

} // namespace tropinf
