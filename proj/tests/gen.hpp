#pragma once

// Random closed, terminating, fixpoint-free programs with at least one choice.

#include <random>
#include <string>
#include <vector>

#include "tropinf/error.hpp"
#include "tropinf/lang.hpp"

namespace gen {

using namespace tropinf;

class ProgramGen {
public:
    ProgramGen(uint64_t seed, int params, std::size_t max_nodes) : rng_(seed), params_(params), max_nodes_(max_nodes) {}

    Program next() {
        for (;;) {
            fresh_ = 0;
            env_.clear();
            TermPtr t = ground(6, false);
            if (term_size(*t) > max_nodes_ || max_param(*t) == 0) continue;
            try {
                check_program(t);
            } catch (const Error&) {
                continue;
            }
            return {t, params_};
        }
    }

private:
    struct Var {
        std::string name;
        bool arrow;
    };

    std::mt19937_64 rng_;
    int params_;
    std::size_t max_nodes_;
    int fresh_ = 0;
    std::vector<Var> env_;

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    TermPtr leaf(bool in_arg) {
        std::vector<const Var*> grounds;
        for (const auto& v : env_)
            if (!v.arrow) grounds.push_back(&v);
        if (!grounds.empty() && pick(2) == 0) return mk_var(grounds[pick(static_cast<int>(grounds.size()))]->name);
        return mk_num(static_cast<uint64_t>(pick(in_arg ? 3 : 3)));
    }

    // Arguments never contain succ, so every binder only sees values up to 2.
    TermPtr ground(int depth, bool in_arg) {
        if (depth <= 0) return leaf(in_arg);
        switch (pick(in_arg ? 7 : 8)) {
        case 0:
            return leaf(in_arg);
        case 1:
        case 2:
            return mk_choice(1 + pick(params_), ground(depth - 2, in_arg), ground(depth - 2, in_arg));
        case 3:
            return mk_ifz(ground(depth - 3, in_arg), ground(depth - 3, in_arg), ground(depth - 3, in_arg));
        case 4: {
            std::string x = "x" + std::to_string(fresh_++);
            TermPtr arg = ground(depth - 3, true);
            env_.push_back({x, false});
            TermPtr body = ground(depth - 2, in_arg);
            env_.pop_back();
            return mk_app(mk_lam(x, body), arg);
        }
        case 5: {
            for (const auto& v : env_)
                if (v.arrow) return mk_app(mk_var(v.name), ground(depth - 2, true));
            std::string f = "f" + std::to_string(fresh_++), y = "y" + std::to_string(fresh_++);
            env_.push_back({y, false});
            TermPtr fun = mk_lam(y, ground(depth - 3, true));
            env_.pop_back();
            env_.push_back({f, true});
            TermPtr body = ground(depth - 2, in_arg);
            env_.pop_back();
            return mk_app(mk_lam(f, body), fun);
        }
        case 6:
            return mk_pred(ground(depth - 1, in_arg));
        default:
            return mk_succ(ground(depth - 1, in_arg));
        }
    }
};

} // namespace gen
