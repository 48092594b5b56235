#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gjet/poly.hpp"

namespace gjet {

struct FiberGenerator {
  std::string name;
  int degree = 0;
};

/// A trivialized graded vector bundle over a fixed chart: the context plus an
/// ordered fiber basis with degrees.
class Bundle {
 public:
  Bundle(ContextPtr ctx, std::vector<FiberGenerator> fiber);

  const ContextPtr& context() const { return ctx_; }
  std::size_t rank() const { return fiber_.size(); }
  int fiber_degree(std::size_t lam) const { return fiber_.at(lam).degree; }
  const std::string& fiber_name(std::size_t lam) const {
    return fiber_.at(lam).name;
  }
  const std::vector<FiberGenerator>& fiber() const { return fiber_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;

  std::map<int, long> graded_rank() const;

  friend bool operator==(const Bundle& a, const Bundle& b);

 private:
  ContextPtr ctx_;
  std::vector<FiberGenerator> fiber_;
};

using BundlePtr = std::shared_ptr<const Bundle>;

BundlePtr make_bundle(ContextPtr ctx, std::vector<FiberGenerator> fiber);
void require_same_bundle(const BundlePtr& a, const BundlePtr& b);

/// A section psi = psi^lam Phi_lam, stored componentwise.
class Section {
 public:
  Section() = default;
  explicit Section(BundlePtr bundle);
  Section(BundlePtr bundle, std::vector<Poly> components);

  static Section frame(BundlePtr bundle, std::size_t lam);

  const BundlePtr& bundle() const { return bundle_; }
  std::size_t rank() const { return comps_.size(); }
  const Poly& component(std::size_t lam) const { return comps_.at(lam); }
  Poly& component(std::size_t lam) { return comps_.at(lam); }

  bool is_zero() const;
  Section& operator+=(const Section& rhs);
  Section& operator-=(const Section& rhs);
  friend Section operator+(Section lhs, const Section& rhs) {
    return lhs += rhs;
  }
  friend Section operator-(Section lhs, const Section& rhs) {
    return lhs -= rhs;
  }
  Section operator-() const;
  /// Module action f . psi (componentwise graded product from the left).
  friend Section operator*(const Poly& f, const Section& s);
  friend Section operator*(const Rational& c, const Section& s);
  bool operator==(const Section& rhs) const;

  /// Total degree |psi| when every nonzero component satisfies
  /// |psi^lam| = |psi| - |theta_lam|; nullopt when mixed. Zero -> nullopt.
  std::optional<int> homogeneous_degree() const;
  std::map<int, Section> homogeneous_parts() const;

  std::string str() const;

 private:
  BundlePtr bundle_;
  std::vector<Poly> comps_;
};

Section section_action(const Poly& f, const Section& s);

/// A C^inf-linear bundle map F: E -> E' of a declared degree, stored through
/// its frame matrix F(Phi_lam) = F^kap_lam Psi_kap with homogeneous entries
/// |F^kap_lam| = |F| + |theta_lam| - |theta'_kap|.
class BundleMap {
 public:
  BundleMap(BundlePtr domain, BundlePtr codomain, int degree);

  static BundleMap identity(BundlePtr bundle);
  /// lambda_g as a bundle map; g must be homogeneous.
  static BundleMap scalar(BundlePtr bundle, const Poly& g);

  void set_entry(std::size_t kap, std::size_t lam, Poly value);
  const Poly& entry(std::size_t kap, std::size_t lam) const;

  const BundlePtr& domain() const { return domain_; }
  const BundlePtr& codomain() const { return codomain_; }
  int degree() const { return degree_; }

  Section apply(const Section& psi) const;
  /// this o inner.
  BundleMap compose(const BundleMap& inner) const;

 private:
  BundlePtr domain_, codomain_;
  int degree_ = 0;
  std::vector<Poly> entries_;  // row-major [kap][lam]
};

}  // namespace gjet
