#include "gjet/poly.hpp"

#include <sstream>

namespace gjet {

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw InputError("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw InputError("malformed rational literal: " + s);
  if (q.get_den() == 0) throw InputError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

void Point::validate(const Context& ctx) const {
  for (const auto& [name, value] : values_) {
    auto a = ctx.find(name);
    if (!a) throw InputError("point names unknown coordinate: " + name);
    if (ctx.degree(*a) != 0)
      throw InputError("point assigns a value to nonzero-degree coordinate: " +
                       name);
  }
}

Rational Point::value_of(const Context& ctx, std::size_t a) const {
  auto it = values_.find(ctx.name(a));
  return it == values_.end() ? Rational(0) : it->second;
}

Poly Poly::constant(ContextPtr ctx, Rational c) {
  Poly p(std::move(ctx));
  p.add_term(MultiIndex::zero(p.ctx_->dim()), c);
  return p;
}

Poly Poly::coordinate(ContextPtr ctx, std::size_t a) {
  Poly p(ctx);
  p.add_term(MultiIndex::unit(ctx->dim(), a), Rational(1));
  return p;
}

Poly Poly::monomial(ContextPtr ctx, const MultiIndex& index, Rational c) {
  if (index.size() != ctx->dim())
    throw InputError("monomial exponent length does not match context");
  if (!index.admissible(*ctx))
    throw InputError("monomial violates the odd-exponent cap");
  Poly p(std::move(ctx));
  p.add_term(index, c);
  return p;
}

void Poly::add_term(const MultiIndex& index, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(index, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& rhs) {
  require_same_context(ctx_, rhs.ctx_);
  for (const auto& [index, c] : rhs.terms_) add_term(index, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  require_same_context(ctx_, rhs.ctx_);
  for (const auto& [index, c] : rhs.terms_) add_term(index, -c);
  return *this;
}

Poly Poly::operator-() const {
  Poly p(ctx_);
  for (const auto& [index, c] : terms_) p.terms_.emplace(index, -c);
  return p;
}

Poly Poly::operator*(const Poly& rhs) const {
  require_same_context(ctx_, rhs.ctx_);
  Poly out(ctx_);
  for (const auto& [I, cI] : terms_) {
    for (const auto& [J, cJ] : rhs.terms_) {
      const MultiIndex K = I.plus(J);
      if (!K.admissible(*ctx_)) continue;  // odd square vanishes
      const int sign = merge_sign_ascending(*ctx_, I, J);
      out.add_term(K, sign * cI * cJ);
    }
  }
  return out;
}

Poly operator*(const Rational& c, const Poly& p) {
  Poly out(p.ctx_);
  if (c == 0) return out;
  for (const auto& [index, v] : p.terms_) out.terms_.emplace(index, c * v);
  return out;
}

bool Poly::operator==(const Poly& rhs) const {
  if (ctx_ && rhs.ctx_) require_same_context(ctx_, rhs.ctx_);
  return terms_ == rhs.terms_;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = terms_.begin()->first.z_degree(*ctx_);
  for (const auto& [index, c] : terms_)
    if (index.z_degree(*ctx_) != d) return false;
  return true;
}

std::optional<int> Poly::homogeneous_degree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return terms_.begin()->first.z_degree(*ctx_);
}

std::map<int, Poly> Poly::homogeneous_parts() const {
  std::map<int, Poly> parts;
  for (const auto& [index, c] : terms_) {
    const int d = index.z_degree(*ctx_);
    auto [it, inserted] = parts.try_emplace(d, Poly(ctx_));
    it->second.add_term(index, c);
  }
  return parts;
}

Poly Poly::partial_left(std::size_t a) const {
  if (a >= ctx_->dim()) throw InputError("partial: coordinate out of range");
  Poly out(ctx_);
  for (const auto& [I, c] : terms_) {
    if (I[a] == 0) continue;
    // Pass d/dz^a through the letters preceding z^a in the ascending word.
    long prefix = 0;
    for (std::size_t b = 0; b < a; ++b) prefix += long(I[b]) * ctx_->degree(b);
    const int sign = sign_pow(long(ctx_->degree(a)) * prefix);
    out.add_term(I.minus(a), Rational(I[a]) * sign * c);
  }
  return out;
}

Poly Poly::partial_right(std::size_t a) const {
  Poly out(ctx_);
  const int da = ctx_->degree(a);
  for (const auto& [d, part] : homogeneous_parts()) {
    const int sign = sign_pow(long(da) * (1 + d));
    out += Rational(sign) * part.partial_left(a);
  }
  return out;
}

Poly Poly::partial_word_left(std::span<const std::size_t> word) const {
  Poly out = *this;
  for (std::size_t i = word.size(); i-- > 0;) out = out.partial_left(word[i]);
  return out;
}

Poly Poly::partial_word_right(std::span<const std::size_t> word) const {
  Poly out = *this;
  for (std::size_t i = word.size(); i-- > 0;) out = out.partial_right(word[i]);
  return out;
}

Poly Poly::partial_multi_op(const MultiIndex& index) const {
  // Rightmost factor (d_1)^{i_1} acts first.
  Poly out = *this;
  for (std::size_t a : index.word_ascending()) out = out.partial_left(a);
  return out;
}

Poly Poly::partial_multi_right(const MultiIndex& index) const {
  // Rightmost factor (d<_n)^{i_n} acts first.
  Poly out = *this;
  for (std::size_t a : index.word_descending()) out = out.partial_right(a);
  return out;
}

Rational Poly::body_at(const Point& a) const {
  a.validate(*ctx_);
  Rational total(0);
  for (const auto& [I, c] : terms_) {
    Rational term = c;
    bool vanished = false;
    for (std::size_t b = 0; b < I.size() && !vanished; ++b) {
      if (I[b] == 0) continue;
      if (ctx_->degree(b) != 0) {
        vanished = true;
        break;
      }
      Rational v = a.value_of(*ctx_, b);
      for (int e = 0; e < I[b]; ++e) term *= v;
    }
    if (!vanished) total += term;
  }
  return total;
}

std::pair<Poly, Poly> Poly::taylor_split(const Point& a, int order) const {
  a.validate(*ctx_);
  if (order < 0) throw InputError("taylor_split: negative order");
  // Re-expand every term in the shifted generators u_A = z^A - z^A(a); only
  // degree-0 coordinates shift. The shifted exponent tables reuse MultiIndex
  // since the shifts commute with everything.
  std::map<MultiIndex, Rational> shifted;
  for (const auto& [I, c] : terms_) {
    std::map<MultiIndex, Rational> acc{{MultiIndex::zero(I.size()), c}};
    for (std::size_t b = 0; b < I.size(); ++b) {
      if (I[b] == 0) continue;
      if (ctx_->degree(b) != 0) {
        // Nonzero-degree coordinates are their own shifted generators.
        std::map<MultiIndex, Rational> next;
        for (const auto& [K, v] : acc) {
          MultiIndex K2 = K;
          for (int e = 0; e < I[b]; ++e) K2 = K2.plus(b);
          next[K2] += v;
        }
        acc = std::move(next);
        continue;
      }
      const Rational ab = a.value_of(*ctx_, b);
      std::map<MultiIndex, Rational> next;
      for (const auto& [K, v] : acc) {
        // (u_b + a_b)^{i_b}
        for (int e = 0; e <= I[b]; ++e) {
          Rational coeff = v * binomial(I[b], e);
          for (int t = 0; t < I[b] - e; ++t) coeff *= ab;
          if (coeff == 0) continue;
          MultiIndex K2 = K;
          for (int t = 0; t < e; ++t) K2 = K2.plus(b);
          next[K2] += coeff;
        }
      }
      acc = std::move(next);
    }
    for (const auto& [K, v] : acc)
      if (v != 0) {
        shifted[K] += v;
        if (shifted[K] == 0) shifted.erase(K);
      }
  }
  // Split by shifted order and substitute back u_A = z^A - z^A(a).
  Poly taylor(ctx_), remainder(ctx_);
  for (const auto& [K, v] : shifted) {
    Poly monom = Poly::constant(ctx_, v);
    for (std::size_t b = 0; b < K.size(); ++b) {
      Poly gen = Poly::coordinate(ctx_, b);
      if (ctx_->degree(b) == 0)
        gen -= Poly::constant(ctx_, a.value_of(*ctx_, b));
      for (int e = 0; e < K[b]; ++e) monom = monom * gen;
    }
    if (K.weight() <= order)
      taylor += monom;
    else
      remainder += monom;
  }
  return {taylor, remainder};
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [I, c] : terms_) {
    Rational abs = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool printed = false;
    if (abs != 1 || I.is_zero()) {
      os << rational_to_string(abs);
      printed = true;
    }
    for (std::size_t a = 0; a < I.size(); ++a) {
      if (I[a] == 0) continue;
      if (printed) os << "*";
      os << ctx_->name(a);
      if (I[a] > 1) os << "^" << I[a];
      printed = true;
    }
  }
  return os.str();
}

Poly leibniz_multi(const MultiIndex& I, const Poly& f, const Poly& g) {
  require_same_context(f.context(), g.context());
  const Context& ctx = *f.context();
  if (!I.admissible(ctx)) throw InputError("leibniz_multi: bad multi-index");
  Poly out(f.context());
  // Enumerate K <= I componentwise.
  std::vector<int> k(I.size(), 0);
  while (true) {
    MultiIndex K(k);
    const MultiIndex IK = I.minus(K);
    const long b = multi_binomial(I, K);
    const int s_sigma = sigma_sign(ctx, I, K);
    const int dIK = IK.z_degree(ctx);
    for (const auto& [df, fp] : f.homogeneous_parts()) {
      const int sign = s_sigma * sign_pow(long(df) * dIK);
      out += (Rational(b) * sign) *
             (fp.partial_multi_op(K) * g.partial_multi_op(IK));
    }
    // next K
    std::size_t a = 0;
    while (a < k.size()) {
      if (k[a] < I[a]) {
        ++k[a];
        break;
      }
      k[a] = 0;
      ++a;
    }
    if (a == k.size()) break;
  }
  return out;
}

}  // namespace gjet
