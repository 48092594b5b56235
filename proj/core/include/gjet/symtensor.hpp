#pragma once

#include <map>
#include <span>
#include <string>

#include "gjet/poly.hpp"

namespace gjet {

enum class Variance { Form, Multivector };

/// Completely symmetric tensor of a fixed arity: a coefficient table over the
/// weight-k admissible multi-indices. Coefficients sit to the left of the
/// frame symbols and carry the 1/I! normalization, i.e. the tensor is
///   sum_I (1/I!) c_I dz^I        (forms, ascending frame words)
///   sum_I (1/I!) c_I d^op_I      (multivectors, descending frame words);
/// the 1/I! is folded into the pairing, never into the stored table.
class SymTensor {
 public:
  SymTensor() = default;
  SymTensor(ContextPtr ctx, int arity, Variance variance);

  static SymTensor scalar(ContextPtr ctx, const Poly& f, Variance variance);
  /// The frame tensor dz^I or d^op_I (stored coefficient I!).
  static SymTensor frame(ContextPtr ctx, const MultiIndex& index,
                         Variance variance);
  static SymTensor coordinate_form(ContextPtr ctx, std::size_t a);
  static SymTensor coordinate_field(ContextPtr ctx, std::size_t a);

  const ContextPtr& context() const { return ctx_; }
  int arity() const { return arity_; }
  Variance variance() const { return variance_; }
  const std::map<MultiIndex, Poly>& coeffs() const { return coeffs_; }
  /// Stored coefficient, or the zero polynomial over this context.
  Poly coeff(const MultiIndex& index) const;

  void set_coeff(const MultiIndex& index, Poly value);
  bool is_zero() const { return coeffs_.empty(); }

  SymTensor& operator+=(const SymTensor& rhs);
  SymTensor& operator-=(const SymTensor& rhs);
  friend SymTensor operator+(SymTensor lhs, const SymTensor& rhs) {
    return lhs += rhs;
  }
  friend SymTensor operator-(SymTensor lhs, const SymTensor& rhs) {
    return lhs -= rhs;
  }
  SymTensor operator-() const;
  friend SymTensor operator*(const Rational& c, const SymTensor& t);
  /// Coefficient-wise product with a function from the left (f . T = f o T).
  friend SymTensor operator*(const Poly& f, const SymTensor& t);
  bool operator==(const SymTensor& rhs) const;

  /// Total degree of a homogeneous tensor: |c_I| + |z^I| for forms,
  /// |c_I| - |z^I| for multivectors.
  std::optional<int> homogeneous_degree() const;
  std::map<int, SymTensor> homogeneous_parts() const;

  std::string str() const;

 private:
  ContextPtr ctx_;
  int arity_ = 0;
  Variance variance_ = Variance::Form;
  std::map<MultiIndex, Poly> coeffs_;
};

/// Graded symmetric product; arity-additive, same variance required.
SymTensor sym_product(const SymTensor& s, const SymTensor& t);

/// Frame pairing dz^I(d^op_J) = I! delta with coefficients extended from the
/// left; both arguments must share arity and context.
Poly sym_pair(const SymTensor& form, const SymTensor& multivector);

/// The 1-form df with coefficients (df)_A = d_A f in the frame dz^A; the
/// convention is fixed by the operator-side identities (see interior()).
SymTensor differential(const Poly& f);

/// Interior product of an arity-1 form with an arity >= 1 multivector.
SymTensor interior(const SymTensor& omega, const SymTensor& X);

/// Evaluation X(df_1, ..., df_k) of a k-multivector on exact 1-forms,
/// defined by the recursion X(df, ...) = (-1)^{|f||X|} (j_df X)(...).
Poly mv_eval_on_exact_forms(const SymTensor& X, std::span<const Poly> fs);

/// Derivation action X(f) = X^A d_A(f) of an arity-1 multivector.
Poly vf_action(const SymTensor& X, const Poly& f);

/// Graded commutator of two arity-1 multivectors.
SymTensor vf_commutator(const SymTensor& X, const SymTensor& Y);

}  // namespace gjet
