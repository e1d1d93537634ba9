#include "tropinf/error.hpp"
#include "tropinf/typesys.hpp"

namespace tropinf {

namespace {

TraceRef make(TraceNode n) { return std::make_shared<const TraceNode>(std::move(n)); }

struct Frame;

struct Closure {
    TraceRef expr;
    std::shared_ptr<Frame> env;
    ITypeId type;
    bool used = false;
};

struct Frame {
    int var;
    std::vector<Closure> args;
    std::shared_ptr<Frame> parent;
};

using ArgStack = std::vector<std::vector<Closure>>;

void run(const TraceRef& t, const std::shared_ptr<Frame>& env, ArgStack& stack, ChoiceWord& w) {
    switch (t->kind) {
    case TraceNode::Unit:
        return;
    case TraceNode::Choice:
        w.bits.push_back(t->bit);
        w.params.push_back(t->param);
        run(t->a, env, stack, w);
        return;
    case TraceNode::Seq: {
        ArgStack none;
        run(t->a, env, none, w);
        if (!none.empty()) throw InvariantError("trace: leftover arguments in a ground subtrace");
        run(t->b, env, stack, w);
        return;
    }
    case TraceNode::Hole: {
        for (Frame* f = env.get(); f; f = f->parent.get()) {
            if (f->var != t->var) continue;
            for (auto& c : f->args) {
                if (c.used || c.type != t->type) continue;
                c.used = true;
                run(c.expr, c.env, stack, w);
                return;
            }
            throw InvariantError("trace: no unused argument for a variable occurrence");
        }
        throw InvariantError("trace: unbound hole");
    }
    case TraceNode::Lam: {
        if (stack.empty()) throw InvariantError("trace: abstraction without argument");
        auto f = std::make_shared<Frame>();
        f->var = t->var;
        f->args = std::move(stack.back());
        f->parent = env;
        stack.pop_back();
        run(t->a, f, stack, w);
        for (const auto& c : f->args)
            if (!c.used) throw InvariantError("trace: argument left unused");
        return;
    }
    case TraceNode::App: {
        std::vector<Closure> group;
        group.reserve(t->args.size());
        for (const auto& [e, ty] : t->args) group.push_back({e, env, ty});
        stack.push_back(std::move(group));
        run(t->a, env, stack, w);
        return;
    }
    }
}

} // namespace

TraceRef trace_unit() {
    static const TraceRef u = make({});
    return u;
}

TraceRef trace_choice(uint8_t bit, int param, TraceRef rest) {
    TraceNode n;
    n.kind = TraceNode::Choice;
    n.bit = bit;
    n.param = param;
    n.a = std::move(rest);
    return make(std::move(n));
}

TraceRef trace_seq(TraceRef first, TraceRef then) {
    if (first->kind == TraceNode::Unit) return then;
    TraceNode n;
    n.kind = TraceNode::Seq;
    n.a = std::move(first);
    n.b = std::move(then);
    return make(std::move(n));
}

TraceRef trace_hole(int var, ITypeId type) {
    TraceNode n;
    n.kind = TraceNode::Hole;
    n.var = var;
    n.type = type;
    return make(std::move(n));
}

TraceRef trace_lam(int var, TraceRef body) {
    TraceNode n;
    n.kind = TraceNode::Lam;
    n.var = var;
    n.a = std::move(body);
    return make(std::move(n));
}

TraceRef trace_app(TraceRef fn, std::vector<std::pair<TraceRef, ITypeId>> args) {
    TraceNode n;
    n.kind = TraceNode::App;
    n.a = std::move(fn);
    n.args = std::move(args);
    return make(std::move(n));
}

ChoiceWord eval_trace(const TraceRef& t) {
    ChoiceWord w;
    ArgStack stack;
    run(t, nullptr, stack, w);
    if (!stack.empty()) throw InvariantError("trace: arguments left on the stack");
    return w;
}

std::string trace_to_string(const TraceRef& t, const std::vector<std::string>& names, const ITypeTable& types) {
    switch (t->kind) {
    case TraceNode::Unit:
        return "()";
    case TraceNode::Choice: {
        std::string head = std::string(t->bit ? "~" : "") + "X" + std::to_string(t->param);
        if (t->a->kind == TraceNode::Unit) return head;
        return head + " " + trace_to_string(t->a, names, types);
    }
    case TraceNode::Seq:
        return "(" + trace_to_string(t->a, names, types) + " ; " + trace_to_string(t->b, names, types) + ")";
    case TraceNode::Hole:
        return names.at(t->var) + ":" + types.show(t->type);
    case TraceNode::Lam:
        return "(\\" + names.at(t->var) + ". " + trace_to_string(t->a, names, types) + ")";
    case TraceNode::App: {
        std::string s = "(" + trace_to_string(t->a, names, types);
        s += " [";
        for (std::size_t i = 0; i < t->args.size(); ++i) {
            if (i) s += ", ";
            s += trace_to_string(t->args[i].first, names, types);
        }
        return s + "])";
    }
    }
    return "?";
}

} // namespace tropinf
