#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gjet/jets.hpp"
#include "gjet/symbol.hpp"

namespace gjet::checks {

/// Deterministic generator (splitmix64); identical across platforms so that
/// seeded runs are byte-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  long uniform(long lo, long hi);  // inclusive
  bool flip() { return uniform(0, 1) == 1; }
  Rational small_rational();       // nonzero, numerator in [-9,9]

 private:
  std::uint64_t state_;
};

// Bounded input grammar shared by the seeded suites: at most 4 coordinates
// with degrees in [-3,3], fiber ranks at most 2 with degrees in [-2,2],
// sparse polynomials of weight <= 4 with small rational coefficients, and
// operator orders <= 3.
ContextPtr random_context(Rng& rng, std::size_t max_dim = 4);
BundlePtr random_bundle(Rng& rng, const ContextPtr& ctx);
Poly random_poly(Rng& rng, const ContextPtr& ctx, int max_weight = 3);
Poly random_homogeneous_poly(Rng& rng, const ContextPtr& ctx,
                             int max_weight = 3);
Poly random_homogeneous_poly_of_degree(Rng& rng, const ContextPtr& ctx,
                                       int degree, int max_weight = 3);
Section random_section(Rng& rng, const BundlePtr& bundle, int max_weight = 3);
DiffOp random_operator(Rng& rng, const BundlePtr& bundle, int order);
SymTensor random_multivector(Rng& rng, const ContextPtr& ctx, int arity,
                             int max_weight = 2);
DiffOp random_scalar_symbol_operator(Rng& rng, const BundlePtr& bundle,
                                     int order);
Connection random_connection(Rng& rng, const BundlePtr& bundle);
Point random_point(Rng& rng, const ContextPtr& ctx);

/// Replaceable primitives, used by the unit tests to inject deliberate
/// mutations and confirm the checker reports them.
struct CheckHooks {
  std::function<Poly(const Poly&, std::size_t)> partial_right;
  static CheckHooks defaults();
};

struct CheckFailure {
  long case_index = 0;
  std::string property;
  std::string witness;
};

struct CheckReport {
  std::string suite;
  std::uint64_t seed = 0;
  long cases_run = 0;
  std::vector<CheckFailure> failures;
  double elapsed_seconds = 0.0;
  bool ok() const { return failures.empty(); }
};

const std::vector<std::string>& suite_names();  // algebra, diffop, symbol, jets

CheckReport run_suite(const std::string& suite, std::uint64_t seed, long cases,
                      const CheckHooks& hooks = CheckHooks::defaults());

}  // namespace gjet::checks
