#pragma once

#include <optional>
#include <tuple>

#include "gjet/diffop.hpp"
#include "gjet/symtensor.hpp"

namespace gjet {

/// Value of the symbol map at arity k: a table F^I^mu_lam over the weight-k
/// multi-indices prescribing the order-0 operator assigned to each frame
/// k-form, sigma(D)(dz^I) = F^I^mu_lam P_0^lam_mu.
class SymbolMap {
 public:
  SymbolMap() = default;
  SymbolMap(BundlePtr bundle, int arity, int degree);

  const BundlePtr& bundle() const { return bundle_; }
  int arity() const { return arity_; }
  int degree() const { return degree_; }

  void set_entry(const MultiIndex& index, std::size_t mu, std::size_t lambda,
                 Poly value);
  Poly entry(const MultiIndex& index, std::size_t mu, std::size_t lambda) const;
  const std::map<OpKey, Poly>& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }
  bool operator==(const SymbolMap& rhs) const;

  std::string str() const;

 private:
  BundlePtr bundle_;
  int arity_ = 0;
  int degree_ = 0;
  std::map<OpKey, Poly> table_;
};

/// Principal symbol of D at its declared order.
SymbolMap symbol_of(const DiffOp& d);

/// The k-vector field l_(k)(D) when sigma(D) factors through the canonical
/// embedding (each sigma(D)(dz^I) a scalar multiple of the identity);
/// nullopt when the operator is not of scalar-symbol type.
std::optional<SymTensor> scalar_symbol(const DiffOp& d);

/// Canonical embedding I_(k): S^k(TM) -> Hom(S^k(T*M), D^0):
/// [I_(k)(X)](w) = (-1)^{|X||w|} lambda_{w(X)}.
SymbolMap i_embed(const SymTensor& X, const BundlePtr& bundle);

/// The operator D with sigma(D) = F built from the frame table (the symbol
/// surjectivity witness).
DiffOp operator_with_symbol(const SymbolMap& F);

/// Schouten-Nijenhuis bracket of completely symmetric multivector fields,
/// computed by structural recursion on the interior-product, skew-symmetry
/// and product-Leibniz properties; the Jacobi identity is a tested property.
SymTensor sn_bracket(const SymTensor& X, const SymTensor& Y);

struct CommutatorSymbolResult {
  DiffOp commutator;  // verified of order <= k+m-1
  SymTensor lhs;      // l_(k+m-1)([D, D'])
  SymTensor rhs;      // [l_(k)(D), l_(m)(D')]_S
};

/// Both routes of the commutator-symbol theorem; inputs must pass
/// scalar_symbol. Equality of lhs and rhs is the caller's tested contract.
CommutatorSymbolResult commutator_symbol_check(const DiffOp& d,
                                               const DiffOp& e);

/// Connection data: Christoffel tables on coordinate fields and frames,
/// nabla_{d_A} Phi_lam = Gamma^mu_{A lam} Phi_mu.
class Connection {
 public:
  explicit Connection(BundlePtr bundle);

  const BundlePtr& bundle() const { return bundle_; }
  void set_gamma(std::size_t a, std::size_t mu, std::size_t lambda,
                 Poly value);
  Poly gamma(std::size_t a, std::size_t mu, std::size_t lambda) const;
  const std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Poly>&
  table() const {
    return gamma_;
  }

 private:
  BundlePtr bundle_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Poly> gamma_;
};

Section covariant_derivative(const Connection& conn, const SymTensor& X,
                             const Section& psi);
/// nabla_X as a first-order operator; X must be homogeneous.
DiffOp covariant_operator(const Connection& conn, const SymTensor& X);
/// R(X,Y) = [nabla_X, nabla_Y] - nabla_{[X,Y]}, certified of order 0 through
/// extraction; an extraction failure here is an internal error.
DiffOp curvature(const Connection& conn, const SymTensor& X,
                 const SymTensor& Y);

}  // namespace gjet
