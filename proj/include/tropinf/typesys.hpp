#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tropinf/algebra.hpp"
#include "tropinf/lang.hpp"

namespace tropinf {

// ---- intersection types, hash-consed ----

using ITypeId = int;

class ITypeTable {
public:
    ITypeId atom(uint64_t n);
    ITypeId arrow(std::vector<ITypeId> args, ITypeId result); // args need not be sorted

    bool is_atom(ITypeId t) const { return nodes_[t].is_atom; }
    uint64_t atom_value(ITypeId t) const { return nodes_[t].atom; }
    const std::vector<ITypeId>& args(ITypeId t) const { return nodes_[t].args; }
    ITypeId result(ITypeId t) const { return nodes_[t].result; }

    // All atoms at most p and all multisets of size at most p, recursively.
    bool bounded(ITypeId t, uint64_t p) const;
    // "[a,b]-o c"; atoms print as integers.
    std::string show(ITypeId t) const;
    std::size_t size() const { return nodes_.size(); }

private:
    struct Node {
        bool is_atom;
        uint64_t atom;
        std::vector<ITypeId> args;
        ITypeId result;
    };
    std::vector<Node> nodes_;
    std::map<uint64_t, ITypeId> atoms_;
    std::map<std::pair<std::vector<ITypeId>, ITypeId>, ITypeId> arrows_;
};

// Multiset context: sorted (variable id, type) pairs, one pair per element.
using Context = std::vector<std::pair<int, ITypeId>>;

Context context_sum(const Context& a, const Context& b);
// Splits off the multiset bound to var, returning it sorted.
std::vector<ITypeId> context_take(Context& c, int var);
std::size_t context_max_multiplicity(const Context& c);

// ---- traces ----

// Per-monomial trace: a linear term over choice events. Holes stand for the uses of
// context variables and are filled when the abstraction binding them is applied, so
// evaluation interleaves argument choices exactly where call-by-name forces them.
struct TraceNode;
using TraceRef = std::shared_ptr<const TraceNode>;

struct TraceNode {
    enum Kind { Unit, Choice, Seq, Hole, Lam, App } kind = Unit;
    uint8_t bit = 0;
    int param = 0;
    int var = -1;
    ITypeId type = -1;
    TraceRef a, b;
    std::vector<std::pair<TraceRef, ITypeId>> args;
};

TraceRef trace_unit();
TraceRef trace_choice(uint8_t bit, int param, TraceRef rest);
TraceRef trace_seq(TraceRef first, TraceRef then);
TraceRef trace_hole(int var, ITypeId type);
TraceRef trace_lam(int var, TraceRef body);
TraceRef trace_app(TraceRef fn, std::vector<std::pair<TraceRef, ITypeId>> args);

// Word of a closed trace at ground type.
ChoiceWord eval_trace(const TraceRef& t);
std::string trace_to_string(const TraceRef& t, const std::vector<std::string>& var_names, const ITypeTable& types);

// ---- judgements and derivations ----

struct Entry {
    Context ctx;
    ITypeId type = -1;
    int ycount = 0; // Y rules used by the derivations collected here
    FormalPolynomial poly;
    std::map<Monomial, TraceRef> traces;
};

enum class Rule { Empty, Id, Num, Succ, Pred, Ifz, Oplus, Lambda, App, Fix };
std::string rule_name(Rule r);

struct Universe {
    ITypeTable types;
    std::vector<std::string> var_names;
    std::map<std::string, int> var_ids;
    std::size_t dim = 0;
    uint64_t n = 0, p = 0;
    std::size_t max_entries = 200000; // per judgement
    std::map<std::string, std::vector<ITypeId>> refinement_cache;

    int var_id(const std::string& name);
    // All intersection types refining the simple type within the bound p.
    const std::vector<ITypeId>& refinements(const SimpleType& t);
};

struct TropDerivation;
using DerivPtr = std::shared_ptr<const TropDerivation>;

struct TropDerivation {
    Rule rule = Rule::Empty;
    const Term* subject = nullptr;
    std::vector<DerivPtr> premises;
    std::vector<Entry> entries;
    STypePtr var_type; // Id nodes
    int level = -1; // position inside a Y cluster (0 = topmost Empty premise)
};

enum class Mode { Min, Traj };

// Groups by (context, type, Y count), sums, and minimizes (Min) or keeps the full support (Traj).
std::vector<Entry> merge(std::vector<Entry> entries, Mode mode);

// One rule instance over already built premise judgements. The variable rule needs the
// simple type of the variable; Fix expects premises {M, previous cluster level}.
std::vector<Entry> apply_rule(Rule rule, const Term& site, const std::vector<const std::vector<Entry>*>& premises,
                              Universe& u, Mode mode, const SimpleType* var_type = nullptr);

struct SearchResult {
    TermPtr term; // owns the subjects the derivation points into
    std::shared_ptr<Universe> universe;
    DerivPtr root;
    uint64_t target = 0;
    // Entry for the target atom under the empty context, merged over Y counts.
    Entry conclusion;
    std::size_t judgement_count = 0;
};

SearchResult search(const Program& prog, const Typing& typing, uint64_t target, uint64_t n, uint64_t p,
                    std::size_t max_entries = 200000);

// Replays the derivation with full products and unions instead of minimization.
FormalPolynomial traj_poly(const SearchResult& r);
// Same for every (context, type, Y count) entry of the root, in root order.
std::vector<Entry> traj_entries(const SearchResult& r);

struct StabilizeConfig {
    int window = 2;
    int max_rounds = 16;
    std::size_t max_entries = 200000;
};

struct StabilizeResult {
    SearchResult last;
    bool stable = false;
    std::vector<std::pair<uint64_t, uint64_t>> schedule; // rounds actually run
    std::optional<std::string> exhausted;                // resource limit message, if any
};

// Round r uses n = (r+2)/2, p = (r+1)/2. Stable once the polynomial has not changed over
// `window` consecutive schedule increments. Without fixpoints n is irrelevant, so only
// increments of p count.
StabilizeResult stabilize(const Program& prog, const Typing& typing, uint64_t target, const StabilizeConfig& cfg);

} // namespace tropinf
