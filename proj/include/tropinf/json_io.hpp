#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropinf/algebra.hpp"
#include "tropinf/geometry.hpp"
#include "tropinf/infer.hpp"
#include "tropinf/typesys.hpp"

namespace tropinf {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "tropinf-report/1";

std::string rational_text(const Rational& q); // "p/q" or "p"
Rational rational_from_text(const std::string& s); // also accepts decimals like "0.25"

json to_json(const Monomial& m);
Monomial monomial_from_json(const json& j);

json to_json(const FormalPolynomial& s);
FormalPolynomial poly_from_json(const json& j);

json to_json(const LatticePolytope& p);
LatticePolytope polytope_from_json(const json& j);

json cone_to_json(const HalfspaceSystem& h, const std::optional<std::vector<Rational>>& witness);
HalfspaceSystem cone_from_json(const json& j, std::size_t dim);

json derivation_to_json(const SearchResult& r);

// FNV-1a of the program text, as 16 hex digits.
std::string input_hash(const std::string& text);

json to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const json& j);

} // namespace tropinf
