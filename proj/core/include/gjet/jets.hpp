#pragma once

#include <map>
#include <utility>

#include "gjet/diffop.hpp"

namespace gjet {

/// A k-th order jet in the canonical frame: coefficients j^I_lam for
/// w(I) <= k, so that the jet is sum_{I,lam} j^I_lam |> delta^I_lam. The
/// prolongation of a section carries j^I_lam = (-1)^{w(I)} (1/I!) d<_I(psi^lam).
class JetVector {
 public:
  JetVector() = default;
  JetVector(BundlePtr bundle, int order);

  const BundlePtr& bundle() const { return bundle_; }
  int order() const { return order_; }

  void set_coeff(const MultiIndex& index, std::size_t lambda, Poly value);
  Poly coeff(const MultiIndex& index, std::size_t lambda) const;
  const std::map<std::pair<MultiIndex, std::size_t>, Poly>& coeffs() const {
    return coeffs_;
  }
  bool is_zero() const { return coeffs_.empty(); }

  JetVector& operator+=(const JetVector& rhs);
  JetVector& operator-=(const JetVector& rhs);
  friend JetVector operator+(JetVector lhs, const JetVector& rhs) {
    return lhs += rhs;
  }
  friend JetVector operator-(JetVector lhs, const JetVector& rhs) {
    return lhs -= rhs;
  }
  friend JetVector operator*(const Rational& c, const JetVector& j);
  bool operator==(const JetVector& rhs) const;

  std::string str() const;

 private:
  BundlePtr bundle_;
  int order_ = 0;
  std::map<std::pair<MultiIndex, std::size_t>, Poly> coeffs_;
};

/// Rational table (d^op_I psi^lam)(a) over w(I) <= k: the k-jet at a point.
class JetAtPoint {
 public:
  JetAtPoint() = default;
  JetAtPoint(BundlePtr bundle, int order, Point base);

  const BundlePtr& bundle() const { return bundle_; }
  int order() const { return order_; }
  const Point& base() const { return base_; }
  const std::map<std::pair<MultiIndex, std::size_t>, Rational>& values()
      const {
    return values_;
  }
  Rational value(const MultiIndex& index, std::size_t lambda) const;
  void set_value(const MultiIndex& index, std::size_t lambda, Rational v);
  bool operator==(const JetAtPoint& rhs) const;

 private:
  BundlePtr bundle_;
  int order_ = 0;
  Point base_;
  std::map<std::pair<MultiIndex, std::size_t>, Rational> values_;
};

/// k-th order jet prolongation of a section.
JetVector prolong(const Section& psi, int order);

/// Truncation pi^{k,l}; requires l <= k.
JetVector project(const JetVector& jet, int order);

/// The factorized operator j^k[D] applied to a jet; for every section,
/// operator_on_jet(D, prolong(psi, k)) = D(psi).
Section operator_on_jet(const DiffOp& d, const JetVector& jet);

JetAtPoint jet_at_point(const Section& psi, int order, const Point& a);

/// Graded rank of the k-th jet bundle: degree -> count of pairs (I, lam)
/// with |z^I| + |th_lam| = degree, w(I) <= k.
std::map<int, long> jet_rank(const Bundle& bundle, int order);

/// Graded rank of Hom(S^k(TM), E), the kernel of pi^{k,k-1}.
std::map<int, long> hom_sk_rank(const Bundle& bundle, int order);

/// Functorial pushforward along a bundle map, computed on the frame
/// generators through prolongation; commutes with prolong by contract.
JetVector jet_pushforward(const BundleMap& F, const JetVector& jet);

}  // namespace gjet
