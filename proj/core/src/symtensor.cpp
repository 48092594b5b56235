#include "gjet/symtensor.hpp"

#include <sstream>

namespace gjet {

SymTensor::SymTensor(ContextPtr ctx, int arity, Variance variance)
    : ctx_(std::move(ctx)), arity_(arity), variance_(variance) {
  if (arity_ < 0) throw InputError("tensor arity must be non-negative");
}

SymTensor SymTensor::scalar(ContextPtr ctx, const Poly& f, Variance variance) {
  SymTensor t(ctx, 0, variance);
  t.set_coeff(MultiIndex::zero(ctx->dim()), f);
  return t;
}

SymTensor SymTensor::frame(ContextPtr ctx, const MultiIndex& index,
                           Variance variance) {
  SymTensor t(ctx, index.weight(), variance);
  t.set_coeff(index,
              Poly::constant(ctx, Rational(index.factorial())));
  return t;
}

SymTensor SymTensor::coordinate_form(ContextPtr ctx, std::size_t a) {
  return frame(ctx, MultiIndex::unit(ctx->dim(), a), Variance::Form);
}

SymTensor SymTensor::coordinate_field(ContextPtr ctx, std::size_t a) {
  return frame(ctx, MultiIndex::unit(ctx->dim(), a), Variance::Multivector);
}

Poly SymTensor::coeff(const MultiIndex& index) const {
  auto it = coeffs_.find(index);
  return it == coeffs_.end() ? Poly(ctx_) : it->second;
}

void SymTensor::set_coeff(const MultiIndex& index, Poly value) {
  if (index.weight() != arity_)
    throw InputError("tensor coefficient weight does not match arity");
  if (!index.admissible(*ctx_))
    throw InputError("tensor coefficient index violates the odd cap");
  require_same_context(value.context(), ctx_);
  if (value.is_zero())
    coeffs_.erase(index);
  else
    coeffs_[index] = std::move(value);
}

SymTensor& SymTensor::operator+=(const SymTensor& rhs) {
  require_same_context(ctx_, rhs.ctx_);
  // The zero tensor is arity-polymorphic (brackets of functions truncate to
  // it), so a vanishing summand never forces an arity match.
  if (rhs.coeffs_.empty()) return *this;
  if (coeffs_.empty() && variance_ == rhs.variance_) {
    arity_ = rhs.arity_;
    coeffs_ = rhs.coeffs_;
    return *this;
  }
  if (arity_ != rhs.arity_ || variance_ != rhs.variance_)
    throw InputError("tensor arity/variance mismatch");
  for (const auto& [index, c] : rhs.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(index, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& rhs) {
  return *this += -rhs;
}

SymTensor SymTensor::operator-() const {
  SymTensor t(ctx_, arity_, variance_);
  for (const auto& [index, c] : coeffs_) t.coeffs_.emplace(index, -c);
  return t;
}

SymTensor operator*(const Rational& c, const SymTensor& t) {
  SymTensor out(t.ctx_, t.arity_, t.variance_);
  if (c == 0) return out;
  for (const auto& [index, v] : t.coeffs_) out.coeffs_.emplace(index, c * v);
  return out;
}

SymTensor operator*(const Poly& f, const SymTensor& t) {
  SymTensor out(t.ctx_, t.arity_, t.variance_);
  for (const auto& [index, v] : t.coeffs_) {
    Poly prod = f * v;
    if (!prod.is_zero()) out.coeffs_.emplace(index, std::move(prod));
  }
  return out;
}

bool SymTensor::operator==(const SymTensor& rhs) const {
  require_same_context(ctx_, rhs.ctx_);
  if (coeffs_.empty() && rhs.coeffs_.empty())
    return variance_ == rhs.variance_;
  return arity_ == rhs.arity_ && variance_ == rhs.variance_ &&
         coeffs_ == rhs.coeffs_;
}

std::optional<int> SymTensor::homogeneous_degree() const {
  std::optional<int> total;
  const int s = variance_ == Variance::Form ? 1 : -1;
  for (const auto& [index, c] : coeffs_) {
    auto d = c.homogeneous_degree();
    if (!d) return std::nullopt;
    const int t = *d + s * index.z_degree(*ctx_);
    if (total && *total != t) return std::nullopt;
    total = t;
  }
  return total;
}

std::map<int, SymTensor> SymTensor::homogeneous_parts() const {
  std::map<int, SymTensor> parts;
  const int s = variance_ == Variance::Form ? 1 : -1;
  for (const auto& [index, c] : coeffs_) {
    const int dz = s * index.z_degree(*ctx_);
    for (const auto& [d, piece] : c.homogeneous_parts()) {
      auto [it, inserted] =
          parts.try_emplace(d + dz, SymTensor(ctx_, arity_, variance_));
      SymTensor term(ctx_, arity_, variance_);
      term.set_coeff(index, piece);
      it->second += term;
    }
  }
  return parts;
}

std::string SymTensor::str() const {
  std::ostringstream os;
  const char* frame = variance_ == Variance::Form ? "dz" : "dop";
  bool first = true;
  for (const auto& [index, c] : coeffs_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")/" << index.factorial() << " " << frame << "[";
    for (std::size_t a = 0; a < index.size(); ++a) {
      if (a) os << ",";
      os << index[a];
    }
    os << "]";
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

SymTensor sym_product(const SymTensor& s, const SymTensor& t) {
  require_same_context(s.context(), t.context());
  if (s.variance() != t.variance())
    throw InputError("sym_product requires matching variance");
  const Context& ctx = *s.context();
  SymTensor out(s.context(), s.arity() + t.arity(), s.variance());
  const bool forms = s.variance() == Variance::Form;
  for (const auto& [I, cI] : s.coeffs()) {
    for (const auto& [J, cJ] : t.coeffs()) {
      const MultiIndex K = I.plus(J);
      if (!K.admissible(ctx)) continue;
      const int kappa = forms ? merge_sign_ascending(ctx, I, J)
                              : merge_sign_descending(ctx, I, J);
      const long scale = multi_binomial(K, I);
      const int dzI = I.z_degree(ctx);
      // Move the right coefficient past the left frame word.
      for (const auto& [dJ, piece] : cJ.homogeneous_parts()) {
        const int sign = kappa * sign_pow(long(dJ) * dzI);
        Poly contrib = (Rational(scale) * sign) * (cI * piece);
        if (contrib.is_zero()) continue;
        SymTensor term(s.context(), out.arity(), out.variance());
        term.set_coeff(K, contrib);
        out += term;
      }
    }
  }
  return out;
}

Poly sym_pair(const SymTensor& form, const SymTensor& multivector) {
  require_same_context(form.context(), multivector.context());
  if (form.variance() != Variance::Form ||
      multivector.variance() != Variance::Multivector)
    throw InputError("sym_pair expects (form, multivector)");
  if (form.arity() != multivector.arity())
    throw InputError("sym_pair arity mismatch");
  const Context& ctx = *form.context();
  Poly out(form.context());
  for (const auto& [I, wI] : form.coeffs()) {
    auto it = multivector.coeffs().find(I);
    if (it == multivector.coeffs().end()) continue;
    const int dzI = I.z_degree(ctx);
    const Rational inv_fact(1, static_cast<unsigned long>(I.factorial()));
    for (const auto& [dX, piece] : it->second.homogeneous_parts()) {
      const int sign = sign_pow(long(dX) * dzI);
      out += (inv_fact * sign) * (wI * piece);
    }
  }
  return out;
}

SymTensor differential(const Poly& f) {
  SymTensor df(f.context(), 1, Variance::Form);
  const std::size_t n = f.context()->dim();
  for (std::size_t a = 0; a < n; ++a)
    df.set_coeff(MultiIndex::unit(n, a), f.partial_left(a));
  return df;
}

namespace {

// Interior product on homogeneous pieces: j_w(X)^L picks up the sign of
// commuting w through the frame letters that precede the contracted slot.
SymTensor interior_h(const SymTensor& omega, int d_omega, const SymTensor& X,
                     int d_X) {
  const Context& ctx = *X.context();
  SymTensor out(X.context(), X.arity() - 1, Variance::Multivector);
  for (const auto& [J, XJ] : X.coeffs()) {
    for (std::size_t a = 0; a < ctx.dim(); ++a) {
      if (J[a] == 0) continue;
      const Poly& wa = omega.coeff(MultiIndex::unit(ctx.dim(), a));
      if (wa.is_zero()) continue;
      const MultiIndex L = J.minus(a);
      long tail = 0;  // sum_{B>a} l_B |z^B|
      for (std::size_t b = a + 1; b < ctx.dim(); ++b)
        tail += long(L[b]) * ctx.degree(b);
      const long expo = long(d_omega) * (1 + d_X) +
                        long(d_omega) * L.z_degree(ctx) +
                        long(ctx.degree(a)) * tail;
      Poly contrib = Rational(sign_pow(expo)) * (XJ * wa);
      if (contrib.is_zero()) continue;
      SymTensor term(X.context(), out.arity(), Variance::Multivector);
      term.set_coeff(L, contrib);
      out += term;
    }
  }
  return out;
}

}  // namespace

SymTensor interior(const SymTensor& omega, const SymTensor& X) {
  require_same_context(omega.context(), X.context());
  if (omega.variance() != Variance::Form || omega.arity() != 1)
    throw InputError("interior expects an arity-1 form");
  if (X.variance() != Variance::Multivector || X.arity() < 1)
    throw InputError("interior expects a multivector of arity >= 1");
  SymTensor out(X.context(), X.arity() - 1, Variance::Multivector);
  for (const auto& [dw, wp] : omega.homogeneous_parts())
    for (const auto& [dx, xp] : X.homogeneous_parts())
      out += interior_h(wp, dw, xp, dx);
  return out;
}

Poly mv_eval_on_exact_forms(const SymTensor& X, std::span<const Poly> fs) {
  if (static_cast<int>(fs.size()) != X.arity())
    throw InputError("mv_eval: argument count must equal arity");
  if (fs.empty()) {
    Poly out(X.context());
    auto it = X.coeffs().find(MultiIndex::zero(X.context()->dim()));
    if (it != X.coeffs().end()) out = it->second;
    return out;
  }
  Poly out(X.context());
  for (const auto& [df_deg, fp] : fs.front().homogeneous_parts()) {
    for (const auto& [dx, xp] : X.homogeneous_parts()) {
      const int sign = sign_pow(long(df_deg) * dx);
      SymTensor contracted = interior(differential(fp), xp);
      out += Rational(sign) *
             mv_eval_on_exact_forms(contracted, fs.subspan(1));
    }
  }
  return out;
}

Poly vf_action(const SymTensor& X, const Poly& f) {
  if (X.variance() != Variance::Multivector || X.arity() != 1)
    throw InputError("vf_action expects an arity-1 multivector");
  require_same_context(X.context(), f.context());
  Poly out(f.context());
  for (const auto& [index, XA] : X.coeffs()) {
    const std::size_t a = index.word_ascending().front();
    out += XA * f.partial_left(a);
  }
  return out;
}

SymTensor vf_commutator(const SymTensor& X, const SymTensor& Y) {
  require_same_context(X.context(), Y.context());
  if (X.arity() != 1 || Y.arity() != 1 ||
      X.variance() != Variance::Multivector ||
      Y.variance() != Variance::Multivector)
    throw InputError("vf_commutator expects arity-1 multivectors");
  const std::size_t n = X.context()->dim();
  SymTensor out(X.context(), 1, Variance::Multivector);
  for (const auto& [dx, xp] : X.homogeneous_parts()) {
    for (const auto& [dy, yp] : Y.homogeneous_parts()) {
      const int sign = sign_pow(long(dx) * dy);
      for (std::size_t a = 0; a < n; ++a) {
        const MultiIndex ea = MultiIndex::unit(n, a);
        Poly comp = vf_action(xp, yp.coeff(ea)) -
                    Rational(sign) * vf_action(yp, xp.coeff(ea));
        if (comp.is_zero()) continue;
        SymTensor term(X.context(), 1, Variance::Multivector);
        term.set_coeff(ea, comp);
        out += term;
      }
    }
  }
  return out;
}

}  // namespace gjet
