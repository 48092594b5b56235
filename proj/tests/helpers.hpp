#pragma once

#include <initializer_list>

#include "gjet/jets.hpp"
#include "gjet/symbol.hpp"

namespace testutil {

using namespace gjet;

inline ContextPtr ctx_x() { return make_context({{"x", 0}}); }
inline ContextPtr ctx_xth() { return make_context({{"x", 0}, {"th", 1}}); }
inline ContextPtr ctx_xthp() {
  return make_context({{"x", 0}, {"th", 1}, {"p", 2}});
}
inline ContextPtr ctx_th12() {
  return make_context({{"th1", 1}, {"th2", 1}});
}
inline ContextPtr ctx_xtheta() {
  return make_context({{"x", 0}, {"th", 1}, {"eta", -1}});
}
inline ContextPtr ctx_xy() { return make_context({{"x", 0}, {"y", 0}}); }

inline BundlePtr line(const ContextPtr& ctx) {
  return make_bundle(ctx, {{"e", 0}});
}
inline BundlePtr rank2(const ContextPtr& ctx) {
  return make_bundle(ctx, {{"e0", 0}, {"e1", 1}});
}

inline MultiIndex mi(std::initializer_list<int> exps) {
  return MultiIndex(std::vector<int>(exps));
}

inline Poly mono(const ContextPtr& ctx, std::initializer_list<int> exps,
                 long num, long den = 1) {
  Rational c(num, den);
  c.canonicalize();
  return Poly::monomial(ctx, mi(exps), c);
}

inline Poly con(const ContextPtr& ctx, long value) {
  return Poly::constant(ctx, Rational(value));
}

inline Point pt(std::initializer_list<std::pair<const char*, long>> values) {
  std::map<std::string, Rational> m;
  for (const auto& [name, v] : values) m[name] = Rational(v);
  return Point(std::move(m));
}

}  // namespace testutil
