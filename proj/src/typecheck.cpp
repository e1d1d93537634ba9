#include <functional>

#include "tropinf/error.hpp"
#include "tropinf/lang.hpp"

namespace tropinf {

STypePtr SimpleType::boolean() {
    static const STypePtr t = std::make_shared<SimpleType>(SimpleType{Bool, nullptr, nullptr});
    return t;
}

STypePtr SimpleType::nat() {
    static const STypePtr t = std::make_shared<SimpleType>(SimpleType{Nat, nullptr, nullptr});
    return t;
}

STypePtr SimpleType::arrow(STypePtr a, STypePtr b) {
    return std::make_shared<SimpleType>(SimpleType{Arrow, std::move(a), std::move(b)});
}

bool type_equal(const SimpleType& a, const SimpleType& b) {
    if (a.kind != b.kind) return false;
    if (a.kind != SimpleType::Arrow) return true;
    return type_equal(*a.dom, *b.dom) && type_equal(*a.cod, *b.cod);
}

std::string to_string(const SimpleType& t) {
    switch (t.kind) {
    case SimpleType::Bool:
        return "Bool";
    case SimpleType::Nat:
        return "Nat";
    case SimpleType::Arrow: {
        std::string d = to_string(*t.dom);
        if (t.dom->kind == SimpleType::Arrow) d = "(" + d + ")";
        return d + " -> " + to_string(*t.cod);
    }
    }
    return "?";
}

namespace {

// Type skeletons are solved by unification; Bool/Nat at ground leaves is a separate
// least-solution problem over ground variables ordered Bool < Nat.
class Inferencer {
public:
    STypePtr run(const TermPtr& t, Typing& out) {
        int root = infer(*t);
        flush_deferred();
        solve_grounds();
        out.type = resolve(root);
        for (const auto& [term, node] : node_of_) out.node_types[term] = resolve(node);
        for (const auto& [term, node] : binder_of_) out.binder_types[term] = resolve(node);
        for (const auto& e : edges_)
            if (!nat_[gfind(e.lo)] && nat_[gfind(e.hi)] && e.site) out.casts.insert(e.site);
        return out.type;
    }

private:
    struct Node {
        enum Kind { Var, Ground, Arrow } kind;
        int link = -1; // Var: bound target
        int g = -1;    // Ground: ground variable
        int dom = -1, cod = -1;
    };
    struct Edge {
        int lo, hi;
        const Term* site;
    };
    struct Pending {
        int lo, hi;
        const Term* site;
    };

    std::vector<Node> nodes_;
    std::vector<int> gparent_;
    std::vector<bool> nat_;
    std::vector<Edge> edges_;
    std::vector<Pending> deferred_;
    std::vector<std::pair<std::string, int>> env_;
    std::map<const Term*, int> node_of_, binder_of_;

    int fresh_g(bool nat) {
        gparent_.push_back(static_cast<int>(gparent_.size()));
        nat_.push_back(nat);
        return static_cast<int>(gparent_.size()) - 1;
    }
    int gfind(int g) {
        while (gparent_[g] != g) g = gparent_[g] = gparent_[gparent_[g]];
        return g;
    }
    void gunion(int a, int b) {
        a = gfind(a);
        b = gfind(b);
        if (a == b) return;
        gparent_[a] = b;
        nat_[b] = nat_[b] || nat_[a];
    }

    int add(Node n) {
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }
    int fresh_var() { return add({Node::Var}); }
    int ground(bool nat) { return add({Node::Ground, -1, fresh_g(nat)}); }
    int arrow(int a, int b) { return add({Node::Arrow, -1, -1, a, b}); }

    int find(int n) {
        while (nodes_[n].kind == Node::Var && nodes_[n].link >= 0) n = nodes_[n].link;
        return n;
    }

    bool occurs(int v, int n) {
        n = find(n);
        if (n == v) return true;
        if (nodes_[n].kind == Node::Arrow) return occurs(v, nodes_[n].dom) || occurs(v, nodes_[n].cod);
        return false;
    }

    std::string show(int n) {
        n = find(n);
        switch (nodes_[n].kind) {
        case Node::Var:
            return "'a" + std::to_string(n);
        case Node::Ground:
            return "ground";
        case Node::Arrow:
            return "(" + show(nodes_[n].dom) + " -> " + show(nodes_[n].cod) + ")";
        }
        return "?";
    }

    [[noreturn]] void mismatch(int a, int b, const Term* site) {
        std::string where = site ? " in '" + to_string(*site) + "'" : "";
        throw TypeError("cannot unify " + show(a) + " with " + show(b) + where);
    }

    void unify(int a, int b, const Term* site) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        Node& x = nodes_[a];
        Node& y = nodes_[b];
        if (x.kind == Node::Var) {
            if (occurs(a, b)) throw TypeError("recursive type" + (site ? " in '" + to_string(*site) + "'" : std::string()));
            x.link = b;
            return;
        }
        if (y.kind == Node::Var) {
            unify(b, a, site);
            return;
        }
        if (x.kind == Node::Ground && y.kind == Node::Ground) {
            gunion(x.g, y.g);
            return;
        }
        if (x.kind == Node::Arrow && y.kind == Node::Arrow) {
            int xd = x.dom, xc = x.cod, yd = y.dom, yc = y.cod;
            unify(xd, yd, site);
            unify(xc, yc, site);
            return;
        }
        mismatch(a, b, site);
    }

    // lo may be cast into hi; only possible at ground type.
    bool sub(int lo, int hi, const Term* site) {
        lo = find(lo);
        hi = find(hi);
        if (lo == hi) return true;
        auto k1 = nodes_[lo].kind, k2 = nodes_[hi].kind;
        if (k1 == Node::Var && k2 == Node::Var) return false;
        if (k1 == Node::Ground && k2 == Node::Var) {
            unify(hi, ground(false), site);
            hi = find(hi);
            k2 = Node::Ground;
        } else if (k1 == Node::Var && k2 == Node::Ground) {
            unify(lo, ground(false), site);
            lo = find(lo);
            k1 = Node::Ground;
        }
        if (k1 == Node::Ground && k2 == Node::Ground) {
            edges_.push_back({nodes_[lo].g, nodes_[hi].g, site});
            return true;
        }
        unify(lo, hi, site);
        return true;
    }

    void constrain(int lo, int hi, const Term* site) {
        if (!sub(lo, hi, site)) deferred_.push_back({lo, hi, site});
    }

    void flush_deferred() {
        bool progress = true;
        while (progress && !deferred_.empty()) {
            progress = false;
            std::vector<Pending> rest;
            for (const auto& d : deferred_) {
                if (sub(d.lo, d.hi, d.site))
                    progress = true;
                else
                    rest.push_back(d);
            }
            deferred_ = std::move(rest);
        }
        for (const auto& d : deferred_) unify(d.lo, d.hi, d.site);
        deferred_.clear();
    }

    void solve_grounds() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : edges_) {
                int lo = gfind(e.lo), hi = gfind(e.hi);
                if (nat_[lo] && !nat_[hi]) {
                    nat_[hi] = true;
                    changed = true;
                }
            }
        }
    }

    STypePtr resolve(int n) {
        n = find(n);
        switch (nodes_[n].kind) {
        case Node::Var:
            return SimpleType::nat();
        case Node::Ground:
            return nat_[gfind(nodes_[n].g)] ? SimpleType::nat() : SimpleType::boolean();
        case Node::Arrow:
            return SimpleType::arrow(resolve(nodes_[n].dom), resolve(nodes_[n].cod));
        }
        return nullptr;
    }

    int infer(const Term& t) {
        int r = infer_inner(t);
        node_of_[&t] = r;
        return r;
    }

    int infer_inner(const Term& t) {
        switch (t.kind) {
        case TermKind::Zero:
            return ground(false);
        case TermKind::Succ:
        case TermKind::Pred: {
            if (t.kind == TermKind::Succ && t.a->kind == TermKind::Zero) {
                infer(*t.a);
                return ground(false); // the literal 1 is also a boolean
            }
            int m = infer(*t.a);
            constrain(m, ground(true), t.a.get());
            return ground(true);
        }
        case TermKind::Ifz: {
            int m = infer(*t.a);
            constrain(m, ground(true), t.a.get());
            int r = fresh_var();
            constrain(infer(*t.b), r, t.b.get());
            constrain(infer(*t.c), r, t.c.get());
            return r;
        }
        case TermKind::Var:
            for (auto it = env_.rbegin(); it != env_.rend(); ++it)
                if (it->first == t.name) return it->second;
            throw TypeError("unbound variable '" + t.name + "'");
        case TermKind::Lam: {
            int x = fresh_var();
            binder_of_[&t] = x;
            env_.emplace_back(t.name, x);
            int body = infer(*t.a);
            env_.pop_back();
            return arrow(x, body);
        }
        case TermKind::App: {
            int f = infer(*t.a);
            int dom = fresh_var(), cod = fresh_var();
            unify(f, arrow(dom, cod), &t);
            constrain(infer(*t.b), dom, t.b.get());
            return cod;
        }
        case TermKind::Fix: {
            int f = infer(*t.a);
            int a = fresh_var();
            unify(f, arrow(a, a), &t);
            return a;
        }
        case TermKind::Choice: {
            int r = fresh_var();
            constrain(infer(*t.a), r, t.a.get());
            constrain(infer(*t.b), r, t.b.get());
            return r;
        }
        }
        throw InvariantError("unknown term kind");
    }
};

} // namespace

Typing type_check(const TermPtr& t) {
    Typing out;
    Inferencer().run(t, out);
    return out;
}

Typing check_program(const TermPtr& t) {
    auto fv = free_vars(*t);
    if (!fv.empty()) throw TypeError("program is not closed: free variable '" + *fv.begin() + "'");
    Typing ty = type_check(t);
    if (ty.type->kind == SimpleType::Arrow)
        throw TypeError("cannot infer a ground type: program has type " + to_string(*ty.type));
    return ty;
}

} // namespace tropinf
