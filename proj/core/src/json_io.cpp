#include "gjet/json_io.hpp"

namespace gjet::io {

using nlohmann::json;

namespace {

const json& get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("missing field: ") + key);
  return j.at(key);
}

std::string get_string(const json& j, const char* key) {
  const json& v = get_field(j, key);
  if (!v.is_string()) throw InputError(std::string("field must be a string: ") + key);
  return v.get<std::string>();
}

int get_int(const json& j, const char* key) {
  const json& v = get_field(j, key);
  if (!v.is_number_integer())
    throw InputError(std::string("field must be an integer: ") + key);
  return v.get<int>();
}

}  // namespace

json to_json(const Context& ctx) {
  json coords = json::array();
  for (const auto& c : ctx.coords())
    coords.push_back({{"name", c.name}, {"degree", c.degree}});
  return json{{"coords", coords}};
}

json to_json(const MultiIndex& index) {
  json arr = json::array();
  for (std::size_t a = 0; a < index.size(); ++a) arr.push_back(index[a]);
  return arr;
}

json to_json(const Poly& p) {
  json terms = json::array();
  for (const auto& [index, c] : p.terms())
    terms.push_back(
        {{"exp", to_json(index)}, {"coeff", rational_to_string(c)}});
  return json{{"terms", terms}};
}

json to_json(const Point& a) {
  json obj = json::object();
  for (const auto& [name, v] : a.values()) obj[name] = rational_to_string(v);
  return obj;
}

json to_json(const Bundle& bundle) {
  json fiber = json::array();
  for (const auto& g : bundle.fiber())
    fiber.push_back({{"name", g.name}, {"degree", g.degree}});
  return json{{"fiber", fiber}};
}

json to_json(const Section& s) {
  json comps = json::array();
  for (std::size_t lam = 0; lam < s.rank(); ++lam)
    comps.push_back(to_json(s.component(lam)));
  return json{{"components", comps}};
}

json to_json(const SymTensor& t) {
  json coeffs = json::array();
  for (const auto& [index, c] : t.coeffs())
    coeffs.push_back({{"index", to_json(index)}, {"poly", to_json(c)}});
  return json{{"arity", t.arity()},
              {"variance",
               t.variance() == Variance::Form ? "form" : "multivector"},
              {"coeffs", coeffs}};
}

json to_json(const DiffOp& d) {
  json coeffs = json::array();
  for (const auto& [key, c] : d.coeffs())
    coeffs.push_back({{"index", to_json(key.index)},
                      {"mu", d.bundle()->fiber_name(key.mu)},
                      {"lambda", d.bundle()->fiber_name(key.lambda)},
                      {"poly", to_json(c)}});
  return json{{"order", d.order()}, {"degree", d.degree()}, {"coeffs", coeffs}};
}

json to_json(const SymbolMap& f) {
  json table = json::array();
  for (const auto& [key, c] : f.table())
    table.push_back({{"index", to_json(key.index)},
                     {"mu", f.bundle()->fiber_name(key.mu)},
                     {"lambda", f.bundle()->fiber_name(key.lambda)},
                     {"poly", to_json(c)}});
  return json{{"arity", f.arity()}, {"degree", f.degree()}, {"table", table}};
}

json to_json(const Connection& c) {
  json gamma = json::array();
  const auto& bundle = *c.bundle();
  for (const auto& [key, v] : c.table())
    gamma.push_back({{"coord", bundle.context()->name(std::get<0>(key))},
                     {"mu", bundle.fiber_name(std::get<1>(key))},
                     {"lambda", bundle.fiber_name(std::get<2>(key))},
                     {"poly", to_json(v)}});
  return json{{"gamma", gamma}};
}

json to_json(const JetVector& j) {
  json coeffs = json::array();
  for (const auto& [key, c] : j.coeffs())
    coeffs.push_back({{"index", to_json(key.first)},
                      {"lambda", j.bundle()->fiber_name(key.second)},
                      {"poly", to_json(c)}});
  return json{{"order", j.order()}, {"coeffs", coeffs}};
}

json to_json(const JetAtPoint& j) {
  json values = json::array();
  for (const auto& [key, v] : j.values())
    values.push_back({{"index", to_json(key.first)},
                      {"lambda", j.bundle()->fiber_name(key.second)},
                      {"value", rational_to_string(v)}});
  return json{
      {"order", j.order()}, {"point", to_json(j.base())}, {"values", values}};
}

json rank_to_json(const std::map<int, long>& rank) {
  json obj = json::object();
  long total = 0;
  for (const auto& [deg, count] : rank) {
    obj[std::to_string(deg)] = count;
    total += count;
  }
  return json{{"by_degree", obj}, {"total", total}};
}

ContextPtr context_from_json(const json& j) {
  const json& coords = get_field(j, "coords");
  if (!coords.is_array()) throw InputError("coords must be an array");
  std::vector<Coordinate> cs;
  for (const auto& c : coords)
    cs.push_back(Coordinate{get_string(c, "name"), get_int(c, "degree")});
  return make_context(std::move(cs));
}

MultiIndex multi_index_from_json(const json& j, std::size_t dim) {
  if (!j.is_array()) throw InputError("multi-index must be an array");
  std::vector<int> exps;
  for (const auto& e : j) {
    if (!e.is_number_integer() || e.get<int>() < 0)
      throw InputError("multi-index entries must be non-negative integers");
    exps.push_back(e.get<int>());
  }
  if (exps.size() != dim)
    throw InputError("multi-index length does not match the context");
  return MultiIndex(std::move(exps));
}

Poly poly_from_json(const json& j, const ContextPtr& ctx) {
  const json& terms = get_field(j, "terms");
  if (!terms.is_array()) throw InputError("terms must be an array");
  Poly p(ctx);
  for (const auto& t : terms) {
    MultiIndex index = multi_index_from_json(get_field(t, "exp"), ctx->dim());
    Rational c = rational_from_string(get_string(t, "coeff"));
    p += Poly::monomial(ctx, index, c);
  }
  return p;
}

Point point_from_json(const json& j) {
  if (!j.is_object()) throw InputError("point must be an object");
  std::map<std::string, Rational> values;
  for (const auto& [name, v] : j.items()) {
    if (!v.is_string()) throw InputError("point values must be strings");
    values[name] = rational_from_string(v.get<std::string>());
  }
  return Point(std::move(values));
}

BundlePtr bundle_from_json(const json& j, const ContextPtr& ctx) {
  const json& fiber = get_field(j, "fiber");
  if (!fiber.is_array()) throw InputError("fiber must be an array");
  std::vector<FiberGenerator> gens;
  for (const auto& g : fiber)
    gens.push_back(FiberGenerator{get_string(g, "name"), get_int(g, "degree")});
  return make_bundle(ctx, std::move(gens));
}

Section section_from_json(const json& j, const BundlePtr& bundle) {
  const json& comps = get_field(j, "components");
  if (!comps.is_array() || comps.size() != bundle->rank())
    throw InputError("section components must match the bundle rank");
  std::vector<Poly> ps;
  for (const auto& c : comps)
    ps.push_back(poly_from_json(c, bundle->context()));
  return Section(bundle, std::move(ps));
}

SymTensor tensor_from_json(const json& j, const ContextPtr& ctx) {
  const std::string variance = get_string(j, "variance");
  if (variance != "form" && variance != "multivector")
    throw InputError("variance must be 'form' or 'multivector'");
  SymTensor t(ctx, get_int(j, "arity"),
              variance == "form" ? Variance::Form : Variance::Multivector);
  for (const auto& c : get_field(j, "coeffs")) {
    MultiIndex index = multi_index_from_json(get_field(c, "index"), ctx->dim());
    t.set_coeff(index, poly_from_json(get_field(c, "poly"), ctx));
  }
  return t;
}

DiffOp operator_from_json(const json& j, const BundlePtr& bundle) {
  DiffOp d(bundle, get_int(j, "order"), get_int(j, "degree"));
  for (const auto& c : get_field(j, "coeffs")) {
    MultiIndex index = multi_index_from_json(get_field(c, "index"),
                                             bundle->context()->dim());
    const std::size_t mu = bundle->index_of(get_string(c, "mu"));
    const std::size_t lam = bundle->index_of(get_string(c, "lambda"));
    Poly p = poly_from_json(get_field(c, "poly"), bundle->context());
    Poly existing = d.coeff(index, mu, lam);
    d.set_coeff(index, mu, lam, existing + p);
  }
  return d;
}

Connection connection_from_json(const json& j, const BundlePtr& bundle) {
  Connection conn(bundle);
  for (const auto& g : get_field(j, "gamma")) {
    const std::size_t a =
        bundle->context()->index_of(get_string(g, "coord"));
    const std::size_t mu = bundle->index_of(get_string(g, "mu"));
    const std::size_t lam = bundle->index_of(get_string(g, "lambda"));
    conn.set_gamma(a, mu, lam,
                   poly_from_json(get_field(g, "poly"), bundle->context()));
  }
  return conn;
}

JetVector jet_from_json(const json& j, const BundlePtr& bundle) {
  JetVector jet(bundle, get_int(j, "order"));
  for (const auto& c : get_field(j, "coeffs")) {
    MultiIndex index = multi_index_from_json(get_field(c, "index"),
                                             bundle->context()->dim());
    const std::size_t lam = bundle->index_of(get_string(c, "lambda"));
    jet.set_coeff(index, lam,
                  poly_from_json(get_field(c, "poly"), bundle->context()));
  }
  return jet;
}

}  // namespace gjet::io
