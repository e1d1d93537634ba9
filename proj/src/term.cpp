#include <algorithm>

#include "tropinf/lang.hpp"

namespace tropinf {

namespace {

TermPtr make(TermKind k, TermPtr a = nullptr, TermPtr b = nullptr, TermPtr c = nullptr) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->a = std::move(a);
    t->b = std::move(b);
    t->c = std::move(c);
    return t;
}

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t.kind) {
    case TermKind::Var:
        if (!bound.count(t.name)) out.insert(t.name);
        return;
    case TermKind::Lam: {
        bool fresh = bound.insert(t.name).second;
        collect_free(*t.a, bound, out);
        if (fresh) bound.erase(t.name);
        return;
    }
    default:
        for (const auto* c : {t.a.get(), t.b.get(), t.c.get()})
            if (c) collect_free(*c, bound, out);
    }
}

enum Level { LTerm = 0, LApp = 1, LAtom = 2 };

std::string print(const Term& t, Level lv) {
    if (auto n = numeral_value(t)) return std::to_string(*n);
    auto paren = [&](std::string s, Level need) { return lv > need ? "(" + s + ")" : s; };
    switch (t.kind) {
    case TermKind::Zero:
        return "0";
    case TermKind::Var:
        return t.name;
    case TermKind::Succ:
        return paren("succ " + print(*t.a, LAtom), LApp);
    case TermKind::Pred:
        return paren("pred " + print(*t.a, LAtom), LApp);
    case TermKind::Fix:
        return paren("fix " + print(*t.a, LAtom), LApp);
    case TermKind::Ifz:
        return paren("ifz " + print(*t.a, LTerm) + " then " + print(*t.b, LTerm) + " else " + print(*t.c, LTerm), LTerm);
    case TermKind::Lam:
        return paren("\\" + t.name + ". " + print(*t.a, LTerm), LTerm);
    case TermKind::App:
        return paren(print(*t.a, LApp) + " " + print(*t.b, LAtom), LApp);
    case TermKind::Choice: {
        std::string right = t.b->kind == TermKind::Choice ? print(*t.b, LTerm) : print(*t.b, LApp);
        return paren(print(*t.a, LApp) + " +[X" + std::to_string(t.param) + "] " + right, LTerm);
    }
    }
    return "?";
}

} // namespace

TermPtr mk_zero() { return make(TermKind::Zero); }
TermPtr mk_succ(TermPtr t) { return make(TermKind::Succ, std::move(t)); }
TermPtr mk_pred(TermPtr t) { return make(TermKind::Pred, std::move(t)); }
TermPtr mk_ifz(TermPtr m, TermPtr n, TermPtr p) { return make(TermKind::Ifz, std::move(m), std::move(n), std::move(p)); }
TermPtr mk_app(TermPtr f, TermPtr x) { return make(TermKind::App, std::move(f), std::move(x)); }
TermPtr mk_fix(TermPtr t) { return make(TermKind::Fix, std::move(t)); }

TermPtr mk_var(std::string name) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Var;
    t->name = std::move(name);
    return t;
}

TermPtr mk_lam(std::string name, TermPtr body) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Lam;
    t->name = std::move(name);
    t->a = std::move(body);
    return t;
}

TermPtr mk_choice(int param, TermPtr l, TermPtr r) {
    auto t = std::make_shared<Term>();
    t->kind = TermKind::Choice;
    t->param = param;
    t->a = std::move(l);
    t->b = std::move(r);
    return t;
}

TermPtr mk_num(uint64_t n) {
    TermPtr t = mk_zero();
    for (uint64_t i = 0; i < n; ++i) t = mk_succ(t);
    return t;
}

std::optional<uint64_t> numeral_value(const Term& t) {
    uint64_t n = 0;
    const Term* cur = &t;
    while (cur->kind == TermKind::Succ) {
        ++n;
        cur = cur->a.get();
    }
    if (cur->kind != TermKind::Zero) return std::nullopt;
    return n;
}

bool term_equal(const Term& a, const Term& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind || a.param != b.param || a.name != b.name) return false;
    auto eq = [](const TermPtr& x, const TermPtr& y) { return (!x && !y) || (x && y && term_equal(*x, *y)); };
    return eq(a.a, b.a) && eq(a.b, b.b) && eq(a.c, b.c);
}

std::size_t term_size(const Term& t) {
    std::size_t n = 1;
    for (const auto* c : {t.a.get(), t.b.get(), t.c.get()})
        if (c) n += term_size(*c);
    return n;
}

bool contains_fix(const Term& t) {
    if (t.kind == TermKind::Fix) return true;
    for (const auto* c : {t.a.get(), t.b.get(), t.c.get()})
        if (c && contains_fix(*c)) return true;
    return false;
}

int max_param(const Term& t) {
    int m = t.kind == TermKind::Choice ? t.param : 0;
    for (const auto* c : {t.a.get(), t.b.get(), t.c.get()})
        if (c) m = std::max(m, max_param(*c));
    return m;
}

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> bound, out;
    collect_free(t, bound, out);
    return out;
}

std::string to_string(const Term& t) { return print(t, LTerm); }

} // namespace tropinf
