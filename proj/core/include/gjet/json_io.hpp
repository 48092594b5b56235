#pragma once

#include <json.hpp>

#include "gjet/jets.hpp"
#include "gjet/symbol.hpp"

// Wire formats (all coefficients are decimal strings "p" or "p/q"):
//   context    {"coords":[{"name":"x","degree":0},...]}
//   bundle     {"fiber":[{"name":"e0","degree":0},...]}
//   polynomial {"terms":[{"exp":[2,0,0],"coeff":"1"},...]}
//   section    {"components":[<poly>,...]}
//   tensor     {"arity":1,"variance":"multivector","coeffs":[{"index":[...],"poly":<poly>}]}
//   operator   {"order":1,"degree":0,"coeffs":[{"index":[...],"mu":"e0","lambda":"e0","poly":<poly>}]}
//   connection {"gamma":[{"coord":"x","mu":"e0","lambda":"e0","poly":<poly>}]}
//   jet        {"order":1,"coeffs":[{"index":[...],"lambda":"e0","poly":<poly>}]}
//   jet@point  {"order":1,"point":{...},"values":[{"index":[...],"lambda":"e0","value":"1/2"}]}
//   point      {"x":"3","y":"-1/2"}
namespace gjet::io {

nlohmann::json to_json(const Context& ctx);
nlohmann::json to_json(const MultiIndex& index);
nlohmann::json to_json(const Poly& p);
nlohmann::json to_json(const Point& a);
nlohmann::json to_json(const Bundle& bundle);
nlohmann::json to_json(const Section& s);
nlohmann::json to_json(const SymTensor& t);
nlohmann::json to_json(const DiffOp& d);
nlohmann::json to_json(const SymbolMap& f);
nlohmann::json to_json(const Connection& c);
nlohmann::json to_json(const JetVector& j);
nlohmann::json to_json(const JetAtPoint& j);
nlohmann::json rank_to_json(const std::map<int, long>& rank);

ContextPtr context_from_json(const nlohmann::json& j);
MultiIndex multi_index_from_json(const nlohmann::json& j, std::size_t dim);
Poly poly_from_json(const nlohmann::json& j, const ContextPtr& ctx);
Point point_from_json(const nlohmann::json& j);
BundlePtr bundle_from_json(const nlohmann::json& j, const ContextPtr& ctx);
Section section_from_json(const nlohmann::json& j, const BundlePtr& bundle);
SymTensor tensor_from_json(const nlohmann::json& j, const ContextPtr& ctx);
DiffOp operator_from_json(const nlohmann::json& j, const BundlePtr& bundle);
Connection connection_from_json(const nlohmann::json& j,
                                const BundlePtr& bundle);
JetVector jet_from_json(const nlohmann::json& j, const BundlePtr& bundle);

}  // namespace gjet::io
