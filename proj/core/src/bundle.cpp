#include "gjet/bundle.hpp"

#include <set>
#include <sstream>

namespace gjet {

Bundle::Bundle(ContextPtr ctx, std::vector<FiberGenerator> fiber)
    : ctx_(std::move(ctx)), fiber_(std::move(fiber)) {
  if (!ctx_) throw InputError("bundle requires a context");
  if (fiber_.empty()) throw InputError("bundle fiber must be non-empty");
  std::set<std::string> seen;
  for (const auto& g : fiber_) {
    if (g.name.empty()) throw InputError("fiber generator name must be non-empty");
    if (!seen.insert(g.name).second)
      throw InputError("duplicate fiber generator name: " + g.name);
    if (g.degree > Context::kMaxAbsDegree || g.degree < -Context::kMaxAbsDegree)
      throw InputError("fiber degree out of range: " + g.name);
  }
}

std::optional<std::size_t> Bundle::find(std::string_view name) const {
  for (std::size_t lam = 0; lam < fiber_.size(); ++lam)
    if (fiber_[lam].name == name) return lam;
  return std::nullopt;
}

std::size_t Bundle::index_of(std::string_view name) const {
  if (auto lam = find(name)) return *lam;
  throw InputError("unknown fiber generator: " + std::string(name));
}

std::map<int, long> Bundle::graded_rank() const {
  std::map<int, long> rk;
  for (const auto& g : fiber_) rk[g.degree] += 1;
  return rk;
}

bool operator==(const Bundle& a, const Bundle& b) {
  if (!(*a.ctx_ == *b.ctx_)) return false;
  if (a.fiber_.size() != b.fiber_.size()) return false;
  for (std::size_t i = 0; i < a.fiber_.size(); ++i)
    if (a.fiber_[i].name != b.fiber_[i].name ||
        a.fiber_[i].degree != b.fiber_[i].degree)
      return false;
  return true;
}

BundlePtr make_bundle(ContextPtr ctx, std::vector<FiberGenerator> fiber) {
  return std::make_shared<const Bundle>(std::move(ctx), std::move(fiber));
}

void require_same_bundle(const BundlePtr& a, const BundlePtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !(*a == *b)) throw InputError("bundle mismatch");
}

Section::Section(BundlePtr bundle) : bundle_(std::move(bundle)) {
  comps_.assign(bundle_->rank(), Poly(bundle_->context()));
}

Section::Section(BundlePtr bundle, std::vector<Poly> components)
    : bundle_(std::move(bundle)), comps_(std::move(components)) {
  if (comps_.size() != bundle_->rank())
    throw InputError("section component count does not match bundle rank");
  for (const auto& p : comps_)
    require_same_context(p.context(), bundle_->context());
}

Section Section::frame(BundlePtr bundle, std::size_t lam) {
  Section s(bundle);
  s.comps_.at(lam) = Poly::constant(bundle->context(), Rational(1));
  return s;
}

bool Section::is_zero() const {
  for (const auto& p : comps_)
    if (!p.is_zero()) return false;
  return true;
}

Section& Section::operator+=(const Section& rhs) {
  require_same_bundle(bundle_, rhs.bundle_);
  for (std::size_t lam = 0; lam < comps_.size(); ++lam)
    comps_[lam] += rhs.comps_[lam];
  return *this;
}

Section& Section::operator-=(const Section& rhs) {
  require_same_bundle(bundle_, rhs.bundle_);
  for (std::size_t lam = 0; lam < comps_.size(); ++lam)
    comps_[lam] -= rhs.comps_[lam];
  return *this;
}

Section Section::operator-() const {
  Section s(bundle_);
  for (std::size_t lam = 0; lam < comps_.size(); ++lam)
    s.comps_[lam] = -comps_[lam];
  return s;
}

Section operator*(const Poly& f, const Section& s) {
  require_same_context(f.context(), s.bundle_->context());
  Section out(s.bundle_);
  for (std::size_t lam = 0; lam < s.comps_.size(); ++lam)
    out.comps_[lam] = f * s.comps_[lam];
  return out;
}

Section operator*(const Rational& c, const Section& s) {
  Section out(s.bundle_);
  for (std::size_t lam = 0; lam < s.comps_.size(); ++lam)
    out.comps_[lam] = c * s.comps_[lam];
  return out;
}

bool Section::operator==(const Section& rhs) const {
  require_same_bundle(bundle_, rhs.bundle_);
  return comps_ == rhs.comps_;
}

std::optional<int> Section::homogeneous_degree() const {
  std::optional<int> total;
  for (std::size_t lam = 0; lam < comps_.size(); ++lam) {
    if (comps_[lam].is_zero()) continue;
    auto d = comps_[lam].homogeneous_degree();
    if (!d) return std::nullopt;
    const int t = *d + bundle_->fiber_degree(lam);
    if (total && *total != t) return std::nullopt;
    total = t;
  }
  return total;
}

std::map<int, Section> Section::homogeneous_parts() const {
  std::map<int, Section> parts;
  for (std::size_t lam = 0; lam < comps_.size(); ++lam) {
    for (const auto& [d, piece] : comps_[lam].homogeneous_parts()) {
      const int total = d + bundle_->fiber_degree(lam);
      auto [it, inserted] = parts.try_emplace(total, Section(bundle_));
      it->second.comps_[lam] += piece;
    }
  }
  return parts;
}

std::string Section::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t lam = 0; lam < comps_.size(); ++lam) {
    if (comps_[lam].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << comps_[lam].str() << ")*" << bundle_->fiber_name(lam);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Section section_action(const Poly& f, const Section& s) { return f * s; }

BundleMap::BundleMap(BundlePtr domain, BundlePtr codomain, int degree)
    : domain_(std::move(domain)), codomain_(std::move(codomain)),
      degree_(degree) {
  require_same_context(domain_->context(), codomain_->context());
  entries_.assign(domain_->rank() * codomain_->rank(),
                  Poly(domain_->context()));
}

BundleMap BundleMap::identity(BundlePtr bundle) {
  BundleMap f(bundle, bundle, 0);
  for (std::size_t lam = 0; lam < bundle->rank(); ++lam)
    f.set_entry(lam, lam, Poly::constant(bundle->context(), Rational(1)));
  return f;
}

BundleMap BundleMap::scalar(BundlePtr bundle, const Poly& g) {
  auto d = g.homogeneous_degree();
  if (!g.is_zero() && !d)
    throw InputError("scalar bundle map requires a homogeneous function");
  BundleMap f(bundle, bundle, d.value_or(0));
  for (std::size_t lam = 0; lam < bundle->rank(); ++lam)
    f.set_entry(lam, lam, g);
  return f;
}

void BundleMap::set_entry(std::size_t kap, std::size_t lam, Poly value) {
  require_same_context(value.context(), domain_->context());
  if (!value.is_zero()) {
    const int want =
        degree_ + domain_->fiber_degree(lam) - codomain_->fiber_degree(kap);
    auto d = value.homogeneous_degree();
    if (!d || *d != want)
      throw InputError("bundle map entry has inconsistent degree");
  }
  entries_.at(kap * domain_->rank() + lam) = std::move(value);
}

const Poly& BundleMap::entry(std::size_t kap, std::size_t lam) const {
  return entries_.at(kap * domain_->rank() + lam);
}

Section BundleMap::apply(const Section& psi) const {
  require_same_bundle(psi.bundle(), domain_);
  Section out(codomain_);
  for (std::size_t lam = 0; lam < domain_->rank(); ++lam) {
    for (const auto& [d, piece] : psi.component(lam).homogeneous_parts()) {
      const int sign = sign_pow(long(degree_) * d);
      for (std::size_t kap = 0; kap < codomain_->rank(); ++kap) {
        const Poly& f = entry(kap, lam);
        if (f.is_zero()) continue;
        out.component(kap) += Rational(sign) * (piece * f);
      }
    }
  }
  return out;
}

BundleMap BundleMap::compose(const BundleMap& inner) const {
  require_same_bundle(inner.codomain_, domain_);
  BundleMap out(inner.domain_, codomain_, degree_ + inner.degree_);
  for (std::size_t lam = 0; lam < inner.domain_->rank(); ++lam) {
    const Section col = apply(inner.apply(Section::frame(inner.domain_, lam)));
    for (std::size_t rho = 0; rho < codomain_->rank(); ++rho)
      out.set_entry(rho, lam, col.component(rho));
  }
  return out;
}

}  // namespace gjet
