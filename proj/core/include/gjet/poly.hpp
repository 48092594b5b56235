#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "gjet/context.hpp"

namespace gjet {

using Rational = mpq_class;

/// Parses "p" or "p/q" into a canonical rational.
Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& r);

/// Evaluation point: values for degree-0 coordinates; missing entries are 0.
class Point {
 public:
  Point() = default;
  explicit Point(std::map<std::string, Rational> values)
      : values_(std::move(values)) {}

  const std::map<std::string, Rational>& values() const { return values_; }
  /// Throws InputError when a named coordinate is unknown or carries a
  /// nonzero degree.
  void validate(const Context& ctx) const;
  Rational value_of(const Context& ctx, std::size_t a) const;

 private:
  std::map<std::string, Rational> values_;
};

/// Sparse graded-commutative polynomial over a context: a map from admissible
/// multi-indices to nonzero rational coefficients. Immutable after
/// construction in the sense that all operations return new values.
class Poly {
 public:
  Poly() = default;
  explicit Poly(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static Poly constant(ContextPtr ctx, Rational c);
  static Poly coordinate(ContextPtr ctx, std::size_t a);
  static Poly monomial(ContextPtr ctx, const MultiIndex& index, Rational c);

  const ContextPtr& context() const { return ctx_; }
  const std::map<MultiIndex, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  Poly operator-() const;
  Poly operator*(const Poly& rhs) const;
  friend Poly operator*(const Rational& c, const Poly& p);
  bool operator==(const Poly& rhs) const;

  /// True also for the zero polynomial.
  bool is_homogeneous() const;
  /// Degree of a nonzero homogeneous polynomial.
  std::optional<int> homogeneous_degree() const;
  std::map<int, Poly> homogeneous_parts() const;

  Poly partial_left(std::size_t a) const;
  Poly partial_right(std::size_t a) const;
  /// d_{A_1...A_q} = d_{A_1} o ... o d_{A_q}; the last letter acts first.
  Poly partial_word_left(std::span<const std::size_t> word) const;
  Poly partial_word_right(std::span<const std::size_t> word) const;
  /// d^op_I = (d_n)^{i_n} o ... o (d_1)^{i_1}.
  Poly partial_multi_op(const MultiIndex& index) const;
  /// Right-derivative companion (d<_1)^{i_1} o ... o (d<_n)^{i_n}.
  Poly partial_multi_right(const MultiIndex& index) const;

  Rational body_at(const Point& a) const;
  /// Exact split f = T + R with T of order <= q in the coordinates shifted
  /// at a, and every shifted monomial of R of order >= q+1.
  std::pair<Poly, Poly> taylor_split(const Point& a, int order) const;

  /// Canonical rendering: terms in ascending lexicographic index order.
  std::string str() const;

 private:
  void add_term(const MultiIndex& index, const Rational& c);

  ContextPtr ctx_;
  std::map<MultiIndex, Rational> terms_;

  friend Poly leibniz_multi(const MultiIndex&, const Poly&, const Poly&);
};

/// Right-hand side of the multi-index Leibniz expansion of d^op_I(f*g).
Poly leibniz_multi(const MultiIndex& I, const Poly& f, const Poly& g);

}  // namespace gjet
