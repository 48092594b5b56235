#include "gjet/jets.hpp"

#include <sstream>

namespace gjet {

JetVector::JetVector(BundlePtr bundle, int order)
    : bundle_(std::move(bundle)), order_(order) {
  if (order_ < 0) throw InputError("jet order must be non-negative");
}

void JetVector::set_coeff(const MultiIndex& index, std::size_t lambda,
                          Poly value) {
  if (!index.admissible(*bundle_->context()) || index.weight() > order_)
    throw InputError("jet coefficient index out of range");
  if (lambda >= bundle_->rank())
    throw InputError("jet coefficient fiber index out of range");
  require_same_context(value.context(), bundle_->context());
  const auto key = std::make_pair(index, lambda);
  if (value.is_zero())
    coeffs_.erase(key);
  else
    coeffs_[key] = std::move(value);
}

Poly JetVector::coeff(const MultiIndex& index, std::size_t lambda) const {
  auto it = coeffs_.find(std::make_pair(index, lambda));
  return it == coeffs_.end() ? Poly(bundle_->context()) : it->second;
}

JetVector& JetVector::operator+=(const JetVector& rhs) {
  require_same_bundle(bundle_, rhs.bundle_);
  if (order_ != rhs.order_) throw InputError("jet order mismatch");
  for (const auto& [key, c] : rhs.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  return *this;
}

JetVector& JetVector::operator-=(const JetVector& rhs) {
  JetVector neg = Rational(-1) * rhs;
  return *this += neg;
}

JetVector operator*(const Rational& c, const JetVector& j) {
  JetVector out(j.bundle_, j.order_);
  if (c == 0) return out;
  for (const auto& [key, v] : j.coeffs_) out.coeffs_.emplace(key, c * v);
  return out;
}

bool JetVector::operator==(const JetVector& rhs) const {
  require_same_bundle(bundle_, rhs.bundle_);
  return order_ == rhs.order_ && coeffs_ == rhs.coeffs_;
}

std::string JetVector::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : coeffs_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ") delta[";
    for (std::size_t a = 0; a < key.first.size(); ++a) {
      if (a) os << ",";
      os << key.first[a];
    }
    os << "]_" << bundle_->fiber_name(key.second);
    first = false;
  }
  return os.str();
}

JetAtPoint::JetAtPoint(BundlePtr bundle, int order, Point base)
    : bundle_(std::move(bundle)), order_(order), base_(std::move(base)) {
  base_.validate(*bundle_->context());
}

Rational JetAtPoint::value(const MultiIndex& index, std::size_t lambda) const {
  auto it = values_.find(std::make_pair(index, lambda));
  return it == values_.end() ? Rational(0) : it->second;
}

void JetAtPoint::set_value(const MultiIndex& index, std::size_t lambda,
                           Rational v) {
  const auto key = std::make_pair(index, lambda);
  if (v == 0)
    values_.erase(key);
  else
    values_[key] = std::move(v);
}

bool JetAtPoint::operator==(const JetAtPoint& rhs) const {
  require_same_bundle(bundle_, rhs.bundle_);
  return order_ == rhs.order_ && values_ == rhs.values_;
}

JetVector prolong(const Section& psi, int order) {
  const BundlePtr& bundle = psi.bundle();
  JetVector jet(bundle, order);
  for (const MultiIndex& I : multi_indices_up_to(*bundle->context(), order)) {
    const Rational scale(sign_pow(I.weight()),
                         static_cast<unsigned long>(I.factorial()));
    for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
      Poly c = scale * psi.component(lam).partial_multi_right(I);
      jet.set_coeff(I, lam, std::move(c));
    }
  }
  return jet;
}

JetVector project(const JetVector& jet, int order) {
  if (order > jet.order() || order < 0)
    throw InputError("project: target order must satisfy 0 <= l <= k");
  JetVector out(jet.bundle(), order);
  for (const auto& [key, c] : jet.coeffs())
    if (key.first.weight() <= order) out.set_coeff(key.first, key.second, c);
  return out;
}

Section operator_on_jet(const DiffOp& d, const JetVector& jet) {
  require_same_bundle(d.bundle(), jet.bundle());
  if (d.order() > jet.order())
    throw InputError("operator_on_jet: operator order exceeds jet order");
  const BundlePtr& bundle = d.bundle();
  Section out(bundle);
  // j^k[D] is |>-linear of degree |D| and sends delta^I_lam to
  // (-1)^{w(I)} [D^I]^mu_lam Phi_mu.
  for (const auto& [key, c] : jet.coeffs()) {
    const MultiIndex& I = key.first;
    const std::size_t lam = key.second;
    for (std::size_t mu = 0; mu < bundle->rank(); ++mu) {
      const Poly dI = d.coeff(I, mu, lam);
      if (dI.is_zero()) continue;
      for (const auto& [dc, piece] : c.homogeneous_parts()) {
        const int sign = sign_pow(long(d.degree()) * dc + I.weight());
        out.component(mu) += Rational(sign) * (piece * dI);
      }
    }
  }
  return out;
}

JetAtPoint jet_at_point(const Section& psi, int order, const Point& a) {
  const BundlePtr& bundle = psi.bundle();
  JetAtPoint jet(bundle, order, a);
  for (const MultiIndex& I : multi_indices_up_to(*bundle->context(), order))
    for (std::size_t lam = 0; lam < bundle->rank(); ++lam)
      jet.set_value(I, lam,
                    psi.component(lam).partial_multi_op(I).body_at(a));
  return jet;
}

std::map<int, long> jet_rank(const Bundle& bundle, int order) {
  std::map<int, long> rk;
  for (const MultiIndex& I : multi_indices_up_to(*bundle.context(), order)) {
    const int dz = I.z_degree(*bundle.context());
    for (std::size_t lam = 0; lam < bundle.rank(); ++lam)
      rk[dz + bundle.fiber_degree(lam)] += 1;
  }
  return rk;
}

std::map<int, long> hom_sk_rank(const Bundle& bundle, int order) {
  std::map<int, long> rk;
  for (const MultiIndex& I : multi_indices(*bundle.context(), order)) {
    const int dz = I.z_degree(*bundle.context());
    for (std::size_t lam = 0; lam < bundle.rank(); ++lam)
      rk[dz + bundle.fiber_degree(lam)] += 1;
  }
  return rk;
}

namespace {

// delta_{z^a} acting on a frame-coordinate jet: delta_{z^a}(delta^J_kap) is
// zero past the order cap or on an odd repeat, and otherwise reorders into
// the ascending word with the Koszul sign of moving z^a left of word(J).
JetVector delta_coordinate(std::size_t a, const JetVector& v) {
  const BundlePtr& bundle = v.bundle();
  const Context& ctx = *bundle->context();
  const int da = ctx.degree(a);
  JetVector out(bundle, v.order());
  for (const auto& [key, h] : v.coeffs()) {
    const MultiIndex& J = key.first;
    if (J.weight() == v.order()) continue;  // delta^{(k+1)} vanishes
    const MultiIndex J2 = J.plus(a);
    if (!J2.admissible(ctx)) continue;  // odd repeat
    long prefix = 0;
    for (std::size_t b = 0; b < a; ++b) prefix += long(J[b]) * ctx.degree(b);
    const int reorder = sign_pow(long(da) * prefix);
    for (const auto& [dh, piece] : h.homogeneous_parts()) {
      const int sign = reorder * sign_pow(long(da) * dh);
      JetVector term(bundle, v.order());
      term.set_coeff(J2, key.second, Rational(sign) * piece);
      out += term;
    }
  }
  return out;
}

}  // namespace

JetVector jet_pushforward(const BundleMap& F, const JetVector& jet) {
  require_same_bundle(jet.bundle(), F.domain());
  const BundlePtr& target = F.codomain();
  const Context& ctx = *F.domain()->context();
  const int k = jet.order();
  // Images of the domain frame delta^I_lam: push 1 (x) Phi_lam through F and
  // prolong, then apply the coordinate delta word (z^n first, z^1 last).
  JetVector out(target, k);
  for (const auto& [key, c] : jet.coeffs()) {
    const MultiIndex& I = key.first;
    const std::size_t lam = key.second;
    JetVector image =
        prolong(F.apply(Section::frame(F.domain(), lam)), k);
    const auto word = I.word_ascending();
    for (std::size_t i = word.size(); i-- > 0;)
      image = delta_coordinate(word[i], image);
    const int base_sign = sign_pow(long(F.degree()) * I.z_degree(ctx));
    for (const auto& [dc, piece] : c.homogeneous_parts()) {
      const int sign = base_sign * sign_pow(long(F.degree()) * dc);
      // |>-linearity of the pushforward: coefficients multiply from the left.
      for (const auto& [key2, c2] : image.coeffs()) {
        JetVector term(target, k);
        term.set_coeff(key2.first, key2.second,
                       Rational(sign) * (piece * c2));
        out += term;
      }
    }
  }
  return out;
}

}  // namespace gjet
