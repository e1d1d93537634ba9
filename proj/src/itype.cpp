#include <algorithm>

#include "tropinf/error.hpp"
#include "tropinf/typesys.hpp"

namespace tropinf {

ITypeId ITypeTable::atom(uint64_t n) {
    auto it = atoms_.find(n);
    if (it != atoms_.end()) return it->second;
    ITypeId id = static_cast<ITypeId>(nodes_.size());
    nodes_.push_back({true, n, {}, -1});
    atoms_.emplace(n, id);
    return id;
}

ITypeId ITypeTable::arrow(std::vector<ITypeId> args, ITypeId result) {
    std::sort(args.begin(), args.end());
    auto key = std::make_pair(args, result);
    auto it = arrows_.find(key);
    if (it != arrows_.end()) return it->second;
    ITypeId id = static_cast<ITypeId>(nodes_.size());
    nodes_.push_back({false, 0, std::move(args), result});
    arrows_.emplace(std::move(key), id);
    return id;
}

bool ITypeTable::bounded(ITypeId t, uint64_t p) const {
    const Node& n = nodes_[t];
    if (n.is_atom) return n.atom <= p;
    if (n.args.size() > p) return false;
    for (auto a : n.args)
        if (!bounded(a, p)) return false;
    return bounded(n.result, p);
}

std::string ITypeTable::show(ITypeId t) const {
    const Node& n = nodes_[t];
    if (n.is_atom) return std::to_string(n.atom);
    std::string s = "[";
    for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) s += ",";
        s += show(n.args[i]);
    }
    s += "]-o ";
    std::string r = show(n.result);
    if (!nodes_[n.result].is_atom) r = "(" + r + ")";
    return s + r;
}

Context context_sum(const Context& a, const Context& b) {
    Context r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

std::vector<ITypeId> context_take(Context& c, int var) {
    std::vector<ITypeId> out;
    Context rest;
    rest.reserve(c.size());
    for (const auto& [v, t] : c) {
        if (v == var)
            out.push_back(t);
        else
            rest.emplace_back(v, t);
    }
    c = std::move(rest);
    return out;
}

std::size_t context_max_multiplicity(const Context& c) {
    std::size_t best = 0, run = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        run = (i > 0 && c[i].first == c[i - 1].first) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

int Universe::var_id(const std::string& name) {
    auto it = var_ids.find(name);
    if (it != var_ids.end()) return it->second;
    int id = static_cast<int>(var_names.size());
    var_names.push_back(name);
    var_ids.emplace(name, id);
    return id;
}

const std::vector<ITypeId>& Universe::refinements(const SimpleType& t) {
    std::string key = to_string(t);
    auto it = refinement_cache.find(key);
    if (it != refinement_cache.end()) return it->second;
    std::vector<ITypeId> out;
    switch (t.kind) {
    case SimpleType::Bool:
        for (uint64_t a = 0; a <= std::min<uint64_t>(1, p); ++a) out.push_back(types.atom(a));
        break;
    case SimpleType::Nat:
        for (uint64_t a = 0; a <= p; ++a) out.push_back(types.atom(a));
        break;
    case SimpleType::Arrow: {
        std::vector<ITypeId> dom = refinements(*t.dom);
        std::vector<ITypeId> cod = refinements(*t.cod);
        std::vector<std::vector<ITypeId>> multisets{{}};
        std::vector<std::vector<ITypeId>> layer{{}};
        std::vector<std::vector<std::size_t>> last{{0}};
        for (uint64_t size = 1; size <= p; ++size) {
            std::vector<std::vector<ITypeId>> next;
            std::vector<std::vector<std::size_t>> next_last;
            for (std::size_t i = 0; i < layer.size(); ++i)
                for (std::size_t j = last[i][0]; j < dom.size(); ++j) {
                    auto m = layer[i];
                    m.push_back(dom[j]);
                    next.push_back(std::move(m));
                    next_last.push_back({j});
                }
            layer = std::move(next);
            last = std::move(next_last);
            multisets.insert(multisets.end(), layer.begin(), layer.end());
            if (multisets.size() * cod.size() > max_entries)
                throw ResourceExhausted("too many refinements of " + key + " at p = " + std::to_string(p));
        }
        for (const auto& m : multisets)
            for (auto c : cod) out.push_back(types.arrow(m, c));
        break;
    }
    }
    return refinement_cache.emplace(key, std::move(out)).first->second;
}

std::string rule_name(Rule r) {
    switch (r) {
    case Rule::Empty: return "Empty";
    case Rule::Id: return "Id";
    case Rule::Num: return "Num";
    case Rule::Succ: return "Succ";
    case Rule::Pred: return "Pred";
    case Rule::Ifz: return "Ifz";
    case Rule::Oplus: return "Oplus";
    case Rule::Lambda: return "Lambda";
    case Rule::App: return "App";
    case Rule::Fix: return "Fix";
    }
    return "?";
}

} // namespace tropinf
