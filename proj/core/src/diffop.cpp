#include "gjet/diffop.hpp"

#include <sstream>

namespace gjet {

namespace {

int require_homogeneous_degree(const Poly& f, const char* what) {
  auto d = f.homogeneous_degree();
  if (!d) throw InputError(std::string(what) + " must be homogeneous");
  return *d;
}

std::vector<Poly> coordinate_tuple(const ContextPtr& ctx,
                                   const MultiIndex& index) {
  std::vector<Poly> fs;
  for (std::size_t a : index.word_ascending())
    fs.push_back(Poly::coordinate(ctx, a));
  return fs;
}

std::string index_str(const MultiIndex& index) {
  std::ostringstream os;
  os << "(";
  for (std::size_t a = 0; a < index.size(); ++a) {
    if (a) os << ",";
    os << index[a];
  }
  os << ")";
  return os.str();
}

}  // namespace

DiffOp::DiffOp(BundlePtr bundle, int order, int degree)
    : bundle_(std::move(bundle)), order_(order), degree_(degree) {
  if (order_ < 0) throw InputError("operator order must be non-negative");
}

DiffOp DiffOp::frame_op(BundlePtr bundle, const MultiIndex& index,
                        std::size_t lambda, std::size_t mu) {
  if (!index.admissible(*bundle->context()))
    throw InputError("frame_op: inadmissible multi-index");
  if (lambda >= bundle->rank() || mu >= bundle->rank())
    throw InputError("frame_op: fiber index out of range");
  const int degree = bundle->fiber_degree(mu) - bundle->fiber_degree(lambda) -
                     index.z_degree(*bundle->context());
  DiffOp d(bundle, index.weight(), degree);
  d.set_coeff(index, mu, lambda,
              Poly::constant(bundle->context(), Rational(index.factorial())));
  return d;
}

DiffOp DiffOp::multiplication(BundlePtr bundle, const Poly& f) {
  require_same_context(f.context(), bundle->context());
  int degree = 0;
  if (!f.is_zero()) degree = require_homogeneous_degree(f, "lambda_f symbol");
  DiffOp d(bundle, 0, degree);
  const MultiIndex zero = MultiIndex::zero(bundle->context()->dim());
  for (std::size_t lam = 0; lam < bundle->rank(); ++lam)
    d.set_coeff(zero, lam, lam, f);
  return d;
}

int DiffOp::effective_order() const {
  int w = -1;
  for (const auto& [key, c] : coeffs_) w = std::max(w, key.index.weight());
  return w;
}

void DiffOp::set_coeff(const MultiIndex& index, std::size_t mu,
                       std::size_t lambda, Poly value) {
  if (!index.admissible(*bundle_->context()))
    throw InputError("operator coefficient index violates the odd cap");
  if (index.weight() > order_)
    throw InputError("operator coefficient weight exceeds declared order");
  if (mu >= bundle_->rank() || lambda >= bundle_->rank())
    throw InputError("operator coefficient fiber index out of range");
  require_same_context(value.context(), bundle_->context());
  OpKey key{index, mu, lambda};
  if (value.is_zero()) {
    coeffs_.erase(key);
    return;
  }
  const int want = degree_ + index.z_degree(*bundle_->context()) +
                   bundle_->fiber_degree(lambda) - bundle_->fiber_degree(mu);
  auto d = value.homogeneous_degree();
  if (!d || *d != want)
    throw InputError("operator coefficient has inconsistent degree");
  coeffs_[key] = std::move(value);
}

Poly DiffOp::coeff(const MultiIndex& index, std::size_t mu,
                   std::size_t lambda) const {
  auto it = coeffs_.find(OpKey{index, mu, lambda});
  return it == coeffs_.end() ? Poly(bundle_->context()) : it->second;
}

Section DiffOp::apply(const Section& psi) const {
  require_same_bundle(psi.bundle(), bundle_);
  const Context& ctx = *bundle_->context();
  Section out(bundle_);
  for (const auto& [key, c] : coeffs_) {
    const Rational inv_fact(1,
                            static_cast<unsigned long>(key.index.factorial()));
    const int dz = key.index.z_degree(ctx);
    const int dmu = bundle_->fiber_degree(key.mu);
    const int dlam = bundle_->fiber_degree(key.lambda);
    for (const auto& [dp, piece] :
         psi.component(key.lambda).homogeneous_parts()) {
      const Poly deriv = piece.partial_multi_op(key.index);
      if (deriv.is_zero()) continue;
      const int sign = sign_pow(long(dmu - dlam) * (dp - dz));
      out.component(key.mu) += (inv_fact * sign) * (c * deriv);
    }
  }
  return out;
}

DiffOp DiffOp::at_order(int order) const {
  if (order < effective_order())
    throw InputError("at_order: declared order below effective order");
  DiffOp d(bundle_, order, degree_);
  d.coeffs_ = coeffs_;
  return d;
}

DiffOp& DiffOp::operator+=(const DiffOp& rhs) {
  require_same_bundle(bundle_, rhs.bundle_);
  if (!rhs.coeffs_.empty() && !coeffs_.empty() && degree_ != rhs.degree_)
    throw InputError("operator sum requires matching degrees");
  if (coeffs_.empty()) degree_ = rhs.degree_;
  order_ = std::max(order_, rhs.order_);
  for (const auto& [key, c] : rhs.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& rhs) { return *this += -rhs; }

DiffOp DiffOp::operator-() const {
  DiffOp d(bundle_, order_, degree_);
  for (const auto& [key, c] : coeffs_) d.coeffs_.emplace(key, -c);
  return d;
}

DiffOp operator*(const Rational& c, const DiffOp& d) {
  DiffOp out(d.bundle_, d.order_, d.degree_);
  if (c == 0) return out;
  for (const auto& [key, v] : d.coeffs_) out.coeffs_.emplace(key, c * v);
  return out;
}

DiffOp operator*(const Poly& f, const DiffOp& d) {
  if (f.is_zero()) return DiffOp(d.bundle_, d.order_, d.degree_);
  const int df = require_homogeneous_degree(f, "operator scalar");
  DiffOp out(d.bundle_, d.order_, d.degree_ + df);
  for (const auto& [key, v] : d.coeffs_)
    out.set_coeff(key.index, key.mu, key.lambda, f * v);
  return out;
}

bool DiffOp::operator==(const DiffOp& rhs) const {
  require_same_bundle(bundle_, rhs.bundle_);
  return coeffs_ == rhs.coeffs_;
}

std::string DiffOp::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : coeffs_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")/" << key.index.factorial() << " P"
       << index_str(key.index) << "^" << bundle_->fiber_name(key.lambda) << "_"
       << bundle_->fiber_name(key.mu);
    first = false;
  }
  return os.str();
}

LinearOracle as_oracle(const DiffOp& op) {
  return LinearOracle{op.bundle(), op.degree(),
                      [op](const Section& psi) { return op.apply(psi); }};
}

namespace {

Section nested_left_impl(const LinearOracle& oracle, std::span<const Poly> fs,
                         std::span<const int> degs, const Section& psi) {
  if (fs.empty()) return oracle.map(psi);
  const Poly& f = fs.back();
  long deg_rest = oracle.degree;
  for (std::size_t i = 0; i + 1 < degs.size(); ++i) deg_rest += degs[i];
  const int sign = sign_pow(deg_rest * degs.back());
  const auto inner_f = fs.first(fs.size() - 1);
  const auto inner_d = degs.first(degs.size() - 1);
  return nested_left_impl(oracle, inner_f, inner_d, f * psi) -
         Rational(sign) * (f * nested_left_impl(oracle, inner_f, inner_d, psi));
}

Section nested_right_impl(const LinearOracle& oracle, std::span<const Poly> fs,
                          std::span<const int> degs, const Section& psi) {
  if (fs.empty()) return oracle.map(psi);
  const Poly& f = fs.front();
  long deg_inner = oracle.degree;
  for (std::size_t i = 1; i < degs.size(); ++i) deg_inner += degs[i];
  const int sign = sign_pow(long(degs.front()) * deg_inner);
  const auto inner_f = fs.subspan(1);
  const auto inner_d = degs.subspan(1);
  return f * nested_right_impl(oracle, inner_f, inner_d, psi) -
         Rational(sign) * nested_right_impl(oracle, inner_f, inner_d, f * psi);
}

std::vector<int> tuple_degrees(std::span<const Poly> fs, bool& any_zero) {
  std::vector<int> degs;
  degs.reserve(fs.size());
  any_zero = false;
  for (const Poly& f : fs) {
    if (f.is_zero()) {
      any_zero = true;
      degs.push_back(0);
      continue;
    }
    degs.push_back(require_homogeneous_degree(f, "bracket argument"));
  }
  return degs;
}

}  // namespace

Section nested_left(const LinearOracle& oracle, std::span<const Poly> fs,
                    const Section& psi) {
  bool any_zero = false;
  auto degs = tuple_degrees(fs, any_zero);
  if (any_zero) return Section(oracle.bundle);
  return nested_left_impl(oracle, fs, degs, psi);
}

Section nested_right(const LinearOracle& oracle, std::span<const Poly> fs,
                     const Section& psi) {
  bool any_zero = false;
  auto degs = tuple_degrees(fs, any_zero);
  if (any_zero) return Section(oracle.bundle);
  return nested_right_impl(oracle, fs, degs, psi);
}

ExtractResult extract_coeffs(const LinearOracle& oracle, int order) {
  const BundlePtr& bundle = oracle.bundle;
  const ContextPtr& ctx = bundle->context();
  DiffOp result(bundle, order, oracle.degree);
  for (const MultiIndex& I : multi_indices_up_to(*ctx, order)) {
    const auto fs = coordinate_tuple(ctx, I);
    const int dz = I.z_degree(*ctx);
    for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
      const Section probe =
          nested_left(oracle, fs, Section::frame(bundle, lam));
      for (std::size_t mu = 0; mu < bundle->rank(); ++mu) {
        const Poly& value = probe.component(mu);
        if (value.is_zero()) continue;
        const int want = oracle.degree + dz + bundle->fiber_degree(lam) -
                         bundle->fiber_degree(mu);
        auto d = value.homogeneous_degree();
        if (!d || *d != want)
          return ExtractFailure{
              ExtractFailure::Kind::DegreeMismatch,
              "coefficient at I=" + index_str(I) + ", lambda=" +
                  bundle->fiber_name(lam) + ", mu=" + bundle->fiber_name(mu) +
                  " is not homogeneous of the declared degree"};
        result.set_coeff(I, mu, lam, value);
      }
    }
  }
  // The (k+1)-fold commutators on the coordinate tuples must vanish on frames.
  for (const MultiIndex& I : multi_indices(*ctx, order + 1)) {
    const auto fs = coordinate_tuple(ctx, I);
    for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
      const Section probe =
          nested_left(oracle, fs, Section::frame(bundle, lam));
      if (!probe.is_zero())
        return ExtractFailure{
            ExtractFailure::Kind::OrderViolation,
            "D^{(k+1)} at z^I with I=" + index_str(I) + " applied to " +
                bundle->fiber_name(lam) + " gives " + probe.str()};
    }
  }
  // The table must reproduce the oracle on the whole probe family.
  for (const MultiIndex& J : multi_indices_up_to(*ctx, order + 1)) {
    const Poly zJ = Poly::monomial(ctx, J, Rational(1));
    for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
      const Section probe = zJ * Section::frame(bundle, lam);
      if (!(result.apply(probe) == oracle.map(probe)))
        return ExtractFailure{
            ExtractFailure::Kind::OrderViolation,
            "table does not reproduce the map on z^" + index_str(J) + " * " +
                bundle->fiber_name(lam)};
    }
  }
  return result;
}

DiffOp extract_or_throw(const LinearOracle& oracle, int order) {
  auto r = extract_coeffs(oracle, order);
  if (auto* failure = std::get_if<ExtractFailure>(&r))
    throw std::logic_error("extraction failed unexpectedly: " +
                           failure->witness);
  return std::get<DiffOp>(std::move(r));
}

DiffOp compose(const DiffOp& d, const DiffOp& e) {
  require_same_bundle(d.bundle(), e.bundle());
  LinearOracle oracle{d.bundle(), d.degree() + e.degree(),
                      [&d, &e](const Section& psi) {
                        return d.apply(e.apply(psi));
                      }};
  return extract_or_throw(oracle, d.order() + e.order());
}

DiffOp commutator(const DiffOp& d, const DiffOp& e) {
  require_same_bundle(d.bundle(), e.bundle());
  const int sign = sign_pow(long(d.degree()) * e.degree());
  LinearOracle oracle{d.bundle(), d.degree() + e.degree(),
                      [&d, &e, sign](const Section& psi) {
                        return d.apply(e.apply(psi)) -
                               Rational(sign) * e.apply(d.apply(psi));
                      }};
  return extract_or_throw(oracle, d.order() + e.order());
}

DiffOp bracket_mult(const DiffOp& d, const Poly& f) {
  require_same_context(f.context(), d.bundle()->context());
  const int target = std::max(d.order() - 1, 0);
  if (f.is_zero()) return DiffOp(d.bundle(), target, d.degree());
  const int df = require_homogeneous_degree(f, "bracket_mult argument");
  const int sign = sign_pow(long(d.degree()) * df);
  LinearOracle oracle{d.bundle(), d.degree() + df,
                      [&d, &f, sign](const Section& psi) {
                        return d.apply(f * psi) -
                               Rational(sign) * (f * d.apply(psi));
                      }};
  return extract_or_throw(oracle, target);
}

DiffOp iterated_bracket(const DiffOp& d, std::span<const Poly> fs,
                        BracketFlavor flavor) {
  int total_deg = d.degree();
  for (const Poly& f : fs) {
    if (f.is_zero())
      return DiffOp(d.bundle(),
                    std::max<int>(d.order() - int(fs.size()), 0), d.degree());
    total_deg += require_homogeneous_degree(f, "bracket argument");
  }
  const int target = std::max<int>(d.order() - int(fs.size()), 0);
  std::vector<Poly> tuple(fs.begin(), fs.end());
  const LinearOracle base = as_oracle(d);
  LinearOracle oracle{
      d.bundle(), total_deg,
      [base, tuple, flavor](const Section& psi) {
        return flavor == BracketFlavor::Left ? nested_left(base, tuple, psi)
                                             : nested_right(base, tuple, psi);
      }};
  return extract_or_throw(oracle, target);
}

Rational dual_pairing(const BundlePtr& bundle, const MultiIndex& J,
                      std::size_t kappa, std::size_t rho, const MultiIndex& I,
                      std::size_t lambda, std::size_t mu) {
  const DiffOp frame = DiffOp::frame_op(bundle, I, lambda, mu);
  const auto fs = coordinate_tuple(bundle->context(), J);
  const Section probe =
      nested_left(as_oracle(frame), fs, Section::frame(bundle, rho));
  const Poly& value = probe.component(kappa);
  if (value.is_zero()) return Rational(0);
  if (value.terms().size() != 1 || !value.terms().begin()->first.is_zero())
    throw std::logic_error("dual pairing produced a non-constant value: " +
                           value.str());
  return value.terms().begin()->second;
}

std::map<int, long> diff_rank(const Bundle& bundle, int order) {
  std::map<int, long> rk;
  for (const MultiIndex& I : multi_indices_up_to(*bundle.context(), order)) {
    const int dz = I.z_degree(*bundle.context());
    for (std::size_t mu = 0; mu < bundle.rank(); ++mu)
      for (std::size_t lam = 0; lam < bundle.rank(); ++lam)
        rk[bundle.fiber_degree(mu) - bundle.fiber_degree(lam) - dz] += 1;
  }
  return rk;
}

DiffOp op_pullback(const BundleMap& F, const DiffOp& Dp) {
  if (!(*F.domain() == *F.codomain()))
    throw InputError("op_pullback: bundle chain mismatch "
                     "(only endomorphism-type maps are supported)");
  require_same_bundle(Dp.bundle(), F.codomain());
  const int sign = sign_pow(long(F.degree()) * Dp.degree());
  LinearOracle oracle{F.domain(), F.degree() + Dp.degree(),
                      [&F, &Dp, sign](const Section& psi) {
                        return Rational(sign) * Dp.apply(F.apply(psi));
                      }};
  return extract_or_throw(oracle, Dp.order());
}

}  // namespace gjet
