#include "tropinf/error.hpp"
#include "tropinf/lang.hpp"

namespace tropinf {

TermPtr substitute(const TermPtr& body, const std::string& x, const TermPtr& arg) {
    const Term& t = *body;
    switch (t.kind) {
    case TermKind::Zero:
        return body;
    case TermKind::Var:
        return t.name == x ? arg : body;
    case TermKind::Lam:
        if (t.name == x) return body;
        {
            TermPtr a = substitute(t.a, x, arg);
            return a == t.a ? body : mk_lam(t.name, a);
        }
    default:
        break;
    }
    TermPtr a = t.a ? substitute(t.a, x, arg) : nullptr;
    TermPtr b = t.b ? substitute(t.b, x, arg) : nullptr;
    TermPtr c = t.c ? substitute(t.c, x, arg) : nullptr;
    if (a == t.a && b == t.b && c == t.c) return body;
    auto r = std::make_shared<Term>(t);
    r->a = a;
    r->b = b;
    r->c = c;
    return r;
}

namespace {

// Rebuilds the evaluation context around the reduct of a subterm.
template <class Wrap>
Step lift(const Step& inner, Wrap wrap, const Term& whole) {
    Step s;
    switch (inner.kind) {
    case Step::Deterministic:
        s.kind = Step::Deterministic;
        s.next = wrap(inner.next);
        return s;
    case Step::Branch:
        s.kind = Step::Branch;
        s.param = inner.param;
        s.left = wrap(inner.left);
        s.right = wrap(inner.right);
        return s;
    case Step::NormalForm:
        break;
    }
    throw InvariantError("stuck term: " + to_string(whole));
}

Step det(TermPtr t) {
    Step s;
    s.kind = Step::Deterministic;
    s.next = std::move(t);
    return s;
}

} // namespace

Step reduce_once(const TermPtr& tp) {
    const Term& t = *tp;
    switch (t.kind) {
    case TermKind::Zero:
    case TermKind::Lam:
        return {};
    case TermKind::Succ:
        if (numeral_value(t)) return {};
        return lift(reduce_once(t.a), [](TermPtr n) { return mk_succ(n); }, t);
    case TermKind::Pred:
        if (t.a->kind == TermKind::Zero) return det(t.a);
        if (t.a->kind == TermKind::Succ) return det(t.a->a);
        return lift(reduce_once(t.a), [](TermPtr n) { return mk_pred(n); }, t);
    case TermKind::Ifz: {
        if (auto n = numeral_value(*t.a)) return det(*n == 0 ? t.b : t.c);
        TermPtr b = t.b, c = t.c;
        return lift(reduce_once(t.a), [&](TermPtr n) { return mk_ifz(n, b, c); }, t);
    }
    case TermKind::App: {
        if (t.a->kind == TermKind::Lam) return det(substitute(t.a->a, t.a->name, t.b));
        TermPtr arg = t.b;
        return lift(reduce_once(t.a), [&](TermPtr f) { return mk_app(f, arg); }, t);
    }
    case TermKind::Fix:
        return det(mk_app(t.a, tp));
    case TermKind::Choice: {
        Step s;
        s.kind = Step::Branch;
        s.param = t.param;
        s.left = t.a;
        s.right = t.b;
        return s;
    }
    case TermKind::Var:
        throw InvariantError("free variable '" + t.name + "' during reduction");
    }
    throw InvariantError("unknown term kind");
}

std::string ChoiceWord::str() const {
    std::string s;
    for (auto b : bits) s += b ? '1' : '0';
    return s;
}

Monomial ChoiceWord::abstraction(int k) const {
    Monomial m(2 * static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < bits.size(); ++i) ++m.e.at(2 * static_cast<std::size_t>(params[i] - 1) + bits[i]);
    return m;
}

Enumeration enumerate_trajectories(const TermPtr& t, int k, const EnumerateOptions& opt) {
    struct Frame {
        TermPtr term;
        ChoiceWord word;
        uint64_t steps;
    };
    Enumeration out;
    std::vector<Frame> stack{{t, {}, 0}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        for (;;) {
            if (f.steps >= opt.max_steps) {
                out.trajectories.push_back({f.word.abstraction(k), f.word, std::nullopt, f.steps});
                break;
            }
            Step s = reduce_once(f.term);
            if (s.kind == Step::NormalForm) {
                auto v = numeral_value(*f.term);
                if (!v) throw InvariantError("reduction ended in a non-numeral: " + to_string(*f.term));
                out.trajectories.push_back({f.word.abstraction(k), f.word, v, f.steps});
                break;
            }
            ++f.steps;
            if (s.kind == Step::Deterministic) {
                f.term = s.next;
                continue;
            }
            if (out.trajectories.size() + stack.size() + 1 >= opt.max_paths) {
                out.truncated = true;
                out.trajectories.push_back({f.word.abstraction(k), f.word, std::nullopt, f.steps});
                break;
            }
            Frame right{s.right, f.word, f.steps};
            right.word.bits.push_back(1);
            right.word.params.push_back(s.param);
            stack.push_back(std::move(right));
            f.term = s.left;
            f.word.bits.push_back(0);
            f.word.params.push_back(s.param);
        }
    }
    return out;
}

std::vector<Trajectory> enumerate_trajectories(const TermPtr& t, int k, uint64_t max_steps) {
    EnumerateOptions opt;
    opt.max_steps = max_steps;
    return enumerate_trajectories(t, k, opt).trajectories;
}

Replay replay(const TermPtr& t, int k, const std::vector<uint8_t>& bits, uint64_t max_steps) {
    Replay r;
    TermPtr cur = t;
    std::size_t used = 0;
    while (r.steps < max_steps) {
        Step s = reduce_once(cur);
        if (s.kind == Step::NormalForm) {
            r.value = numeral_value(*cur);
            r.monomial = r.word.abstraction(k);
            r.ok = r.value.has_value() && used == bits.size();
            if (!r.ok) r.error = used < bits.size() ? "word longer than the reduction" : "stuck term";
            return r;
        }
        ++r.steps;
        if (s.kind == Step::Deterministic) {
            cur = s.next;
            continue;
        }
        if (used == bits.size()) {
            r.error = "word exhausted before reaching a value";
            r.monomial = r.word.abstraction(k);
            return r;
        }
        uint8_t b = bits[used++];
        r.word.bits.push_back(b);
        r.word.params.push_back(s.param);
        cur = b ? s.right : s.left;
    }
    r.error = "step budget exhausted";
    r.monomial = r.word.abstraction(k);
    return r;
}

} // namespace tropinf
