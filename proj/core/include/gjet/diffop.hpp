#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <variant>

#include "gjet/bundle.hpp"

namespace gjet {

struct OpKey {
  MultiIndex index;
  std::size_t mu = 0;
  std::size_t lambda = 0;
  auto operator<=>(const OpKey&) const = default;
};

/// A k-th order operator stored through its canonical frame coefficients:
/// D = sum_{w(I)<=k} (1/I!) [D^I]^mu_lam P_I^lam_mu, where
/// P_I^lam_mu(psi) = (-1)^{(|th_mu|-|th_lam|)(|psi^lam|-|z^I|)} (d^op_I psi^lam) Phi_mu.
/// Every stored coefficient is homogeneous of degree
/// |D| + |z^I| + |th_lam| - |th_mu|; zero coefficients are pruned, and
/// equality is table equality.
class DiffOp {
 public:
  DiffOp() = default;
  DiffOp(BundlePtr bundle, int order, int degree);

  /// The frame operator P_I^lam_mu (single table entry I! at (I, mu, lam)).
  static DiffOp frame_op(BundlePtr bundle, const MultiIndex& index,
                         std::size_t lambda, std::size_t mu);
  /// Multiplication operator lambda_f for homogeneous f.
  static DiffOp multiplication(BundlePtr bundle, const Poly& f);

  const BundlePtr& bundle() const { return bundle_; }
  int order() const { return order_; }
  int degree() const { return degree_; }
  /// Max weight carrying a nonzero coefficient; -1 for the zero operator.
  int effective_order() const;

  void set_coeff(const MultiIndex& index, std::size_t mu, std::size_t lambda,
                 Poly value);
  Poly coeff(const MultiIndex& index, std::size_t mu, std::size_t lambda) const;
  const std::map<OpKey, Poly>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Section apply(const Section& psi) const;

  /// Same table re-declared at a (not smaller) order.
  DiffOp at_order(int order) const;

  DiffOp& operator+=(const DiffOp& rhs);
  DiffOp& operator-=(const DiffOp& rhs);
  friend DiffOp operator+(DiffOp lhs, const DiffOp& rhs) { return lhs += rhs; }
  friend DiffOp operator-(DiffOp lhs, const DiffOp& rhs) { return lhs -= rhs; }
  DiffOp operator-() const;
  friend DiffOp operator*(const Rational& c, const DiffOp& d);
  /// f . D (homogeneous f), acting as (f.D)(psi) = f.(D(psi)).
  friend DiffOp operator*(const Poly& f, const DiffOp& d);
  bool operator==(const DiffOp& rhs) const;

  std::string str() const;

 private:
  BundlePtr bundle_;
  int order_ = 0;
  int degree_ = 0;
  std::map<OpKey, Poly> coeffs_;
};

/// A black-box graded R-linear map of declared degree, probed finitely.
struct LinearOracle {
  BundlePtr bundle;
  int degree = 0;
  std::function<Section(const Section&)> map;
};

LinearOracle as_oracle(const DiffOp& op);

/// D^{(j)}_{(f_1..f_j)}(psi) for the left-nested commutators
/// [[..[D,l_{f1}],..],l_{fj}]; the f_i must be homogeneous.
Section nested_left(const LinearOracle& oracle, std::span<const Poly> fs,
                    const Section& psi);
/// Right-nested flavor [l_{f1},[..,[l_{fj},D]..]].
Section nested_right(const LinearOracle& oracle, std::span<const Poly> fs,
                     const Section& psi);

struct ExtractFailure {
  enum class Kind { OrderViolation, DegreeMismatch };
  Kind kind = Kind::OrderViolation;
  std::string witness;
};

using ExtractResult = std::variant<DiffOp, ExtractFailure>;

/// Normalizes a black-box map into its canonical coefficient table at the
/// declared order. Probes frame sections and monomial-times-frame sections;
/// verifies the (k+1)-fold commutators vanish on the weight-(k+1) coordinate
/// tuples, and that the table reproduces the oracle on every probe.
ExtractResult extract_coeffs(const LinearOracle& oracle, int order);
/// For call sites where failure indicates a bug, not an input.
DiffOp extract_or_throw(const LinearOracle& oracle, int order);

DiffOp compose(const DiffOp& d, const DiffOp& e);
DiffOp commutator(const DiffOp& d, const DiffOp& e);
/// [D, lambda_f]; order drops by one (order 0 yields the zero operator).
DiffOp bracket_mult(const DiffOp& d, const Poly& f);

enum class BracketFlavor { Left, Right };
DiffOp iterated_bracket(const DiffOp& d, std::span<const Poly> fs,
                        BracketFlavor flavor);

/// K^J^kap_rho(P_I^lam_mu), computed through the iterated commutators. The
/// result is an integer, J! delta^J_I delta^kap_mu delta^lam_rho.
Rational dual_pairing(const BundlePtr& bundle, const MultiIndex& J,
                      std::size_t kappa, std::size_t rho, const MultiIndex& I,
                      std::size_t lambda, std::size_t mu);

/// Graded rank of the bundle of order-k operators: degree -> count of
/// triples (I, mu, lam) with |th_mu| - |th_lam| - |z^I| = degree, w(I) <= k.
std::map<int, long> diff_rank(const Bundle& bundle, int order);

/// Pullback of operators along an endomorphism-type bundle map:
/// [(D^k F)(D')](psi) = (-1)^{|F||D'|} D'(F(psi)).
DiffOp op_pullback(const BundleMap& F, const DiffOp& Dp);

}  // namespace gjet
