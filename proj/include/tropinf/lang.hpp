#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropinf/algebra.hpp"

namespace tropinf {

enum class TermKind { Zero, Succ, Pred, Ifz, Var, Lam, App, Fix, Choice };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    TermKind kind;
    int param = 0;     // Choice
    std::string name;  // Var, Lam
    TermPtr a, b, c;   // children in source order
};

TermPtr mk_zero();
TermPtr mk_succ(TermPtr t);
TermPtr mk_pred(TermPtr t);
TermPtr mk_ifz(TermPtr m, TermPtr n, TermPtr p);
TermPtr mk_var(std::string name);
TermPtr mk_lam(std::string name, TermPtr body);
TermPtr mk_app(TermPtr f, TermPtr x);
TermPtr mk_fix(TermPtr t);
TermPtr mk_choice(int param, TermPtr l, TermPtr r);
TermPtr mk_num(uint64_t n);

// n if t is succ^n(0).
std::optional<uint64_t> numeral_value(const Term& t);
bool term_equal(const Term& a, const Term& b);
std::size_t term_size(const Term& t);
bool contains_fix(const Term& t);
int max_param(const Term& t);
std::set<std::string> free_vars(const Term& t);
// Concrete syntax; parse(to_string(t)) reproduces t.
std::string to_string(const Term& t);

struct Program {
    TermPtr term;
    int params = 0; // k; monomials live in dimension 2k
};

// program := ("params" INT ";")* term
Program parse(const std::string& source);

// ---- simple types ----

struct SimpleType;
using STypePtr = std::shared_ptr<const SimpleType>;

struct SimpleType {
    enum Kind { Bool, Nat, Arrow } kind = Nat;
    STypePtr dom, cod;

    static STypePtr boolean();
    static STypePtr nat();
    static STypePtr arrow(STypePtr a, STypePtr b);
};

bool type_equal(const SimpleType& a, const SimpleType& b);
std::string to_string(const SimpleType& t);

struct Typing {
    STypePtr type;
    std::map<const Term*, STypePtr> node_types;
    std::map<const Term*, STypePtr> binder_types; // Lam node -> type of its variable
    std::set<const Term*> casts;                  // subterms typed Bool and used at Nat
};

// Least typing under the Bool-to-Nat cast; unconstrained type variables default to Nat.
Typing type_check(const TermPtr& t);
// Same, but additionally requires a closed program of ground type.
Typing check_program(const TermPtr& t);

// ---- reduction ----

struct Step {
    enum Kind { NormalForm, Deterministic, Branch } kind = NormalForm;
    TermPtr next;         // Deterministic
    int param = 0;        // Branch
    TermPtr left, right;  // Branch
};

Step reduce_once(const TermPtr& t);
TermPtr substitute(const TermPtr& body, const std::string& x, const TermPtr& closed_arg);

struct ChoiceWord {
    std::vector<uint8_t> bits;  // 0 = left (Xi), 1 = right (~Xi)
    std::vector<int> params;

    std::string str() const;
    Monomial abstraction(int k) const;
    bool operator==(const ChoiceWord&) const = default;
};

struct Trajectory {
    Monomial monomial;
    ChoiceWord word;
    std::optional<uint64_t> value; // nullopt: not terminated within budget
    uint64_t steps = 0;
};

struct EnumerateOptions {
    uint64_t max_steps = 10000;
    uint64_t max_paths = 1000000; // paths beyond this are dropped and flagged
};

struct Enumeration {
    std::vector<Trajectory> trajectories;
    bool truncated = false; // max_paths hit
};

Enumeration enumerate_trajectories(const TermPtr& t, int k, const EnumerateOptions& opt);
std::vector<Trajectory> enumerate_trajectories(const TermPtr& t, int k, uint64_t max_steps);

struct Replay {
    bool ok = false;  // reached a numeral and consumed exactly the word
    Monomial monomial;
    ChoiceWord word;
    std::optional<uint64_t> value;
    uint64_t steps = 0;
    std::string error;
};

Replay replay(const TermPtr& t, int k, const std::vector<uint8_t>& bits, uint64_t max_steps = 1000000);

} // namespace tropinf
