#include "gjet/checks.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <set>
#include <sstream>

namespace gjet::checks {

std::uint64_t Rng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw std::logic_error("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

Rational Rng::small_rational() {
  long num = uniform(1, 9) * (flip() ? 1 : -1);
  long den = uniform(1, 3);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

ContextPtr random_context(Rng& rng, std::size_t max_dim) {
  const std::size_t n = std::size_t(rng.uniform(1, long(max_dim)));
  std::vector<Coordinate> coords;
  for (std::size_t a = 0; a < n; ++a)
    coords.push_back(Coordinate{"c" + std::to_string(a),
                                int(rng.uniform(-3, 3))});
  return make_context(std::move(coords));
}

BundlePtr random_bundle(Rng& rng, const ContextPtr& ctx) {
  const std::size_t r = std::size_t(rng.uniform(1, 2));
  std::vector<FiberGenerator> fiber;
  for (std::size_t lam = 0; lam < r; ++lam)
    fiber.push_back(
        FiberGenerator{"e" + std::to_string(lam), int(rng.uniform(-2, 2))});
  return make_bundle(ctx, std::move(fiber));
}

Poly random_poly(Rng& rng, const ContextPtr& ctx, int max_weight) {
  Poly p(ctx);
  const auto monomials = multi_indices_up_to(*ctx, max_weight);
  const long picks = rng.uniform(1, 3);
  for (long i = 0; i < picks; ++i) {
    const auto& index = monomials[std::size_t(
        rng.uniform(0, long(monomials.size()) - 1))];
    p += Poly::monomial(ctx, index, rng.small_rational());
  }
  return p;
}

Poly random_homogeneous_poly_of_degree(Rng& rng, const ContextPtr& ctx,
                                       int degree, int max_weight) {
  std::vector<MultiIndex> pool;
  for (const auto& index : multi_indices_up_to(*ctx, max_weight))
    if (index.z_degree(*ctx) == degree) pool.push_back(index);
  Poly p(ctx);
  if (pool.empty()) return p;
  const long picks = rng.uniform(1, 2);
  for (long i = 0; i < picks; ++i)
    p += Poly::monomial(ctx, pool[std::size_t(rng.uniform(0, long(pool.size()) - 1))],
                        rng.small_rational());
  return p;
}

namespace {

std::vector<int> achievable_degrees(const Context& ctx, int max_weight) {
  std::set<int> degs;
  for (const auto& index : multi_indices_up_to(ctx, max_weight))
    degs.insert(index.z_degree(ctx));
  return {degs.begin(), degs.end()};
}

int pick_degree(Rng& rng, const ContextPtr& ctx, int max_weight) {
  const auto degs = achievable_degrees(*ctx, max_weight);
  return degs[std::size_t(rng.uniform(0, long(degs.size()) - 1))];
}

}  // namespace

Poly random_homogeneous_poly(Rng& rng, const ContextPtr& ctx, int max_weight) {
  return random_homogeneous_poly_of_degree(rng, ctx,
                                           pick_degree(rng, ctx, max_weight),
                                           max_weight);
}

Section random_section(Rng& rng, const BundlePtr& bundle, int max_weight) {
  std::vector<Poly> comps;
  for (std::size_t lam = 0; lam < bundle->rank(); ++lam)
    comps.push_back(random_poly(rng, bundle->context(), max_weight));
  return Section(bundle, std::move(comps));
}

DiffOp random_operator(Rng& rng, const BundlePtr& bundle, int order) {
  const ContextPtr& ctx = bundle->context();
  const auto all = multi_indices_up_to(*ctx, order);
  // Anchor the operator degree so that at least one coefficient family is
  // non-empty.
  const auto& I0 = all[std::size_t(rng.uniform(0, long(all.size()) - 1))];
  const std::size_t mu0 = std::size_t(rng.uniform(0, long(bundle->rank()) - 1));
  const std::size_t lam0 =
      std::size_t(rng.uniform(0, long(bundle->rank()) - 1));
  const int m = pick_degree(rng, ctx, 3);
  const int degree = m - I0.z_degree(*ctx) - bundle->fiber_degree(lam0) +
                     bundle->fiber_degree(mu0);
  DiffOp d(bundle, order, degree);
  for (const auto& index : all) {
    for (std::size_t mu = 0; mu < bundle->rank(); ++mu)
      for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
        if (rng.uniform(0, 2) != 0) continue;  // keep tables sparse
        const int want = degree + index.z_degree(*ctx) +
                         bundle->fiber_degree(lam) - bundle->fiber_degree(mu);
        Poly c = random_homogeneous_poly_of_degree(rng, ctx, want, 3);
        if (!c.is_zero()) d.set_coeff(index, mu, lam, c);
      }
  }
  return d;
}

SymTensor random_multivector(Rng& rng, const ContextPtr& ctx, int arity,
                             int max_weight) {
  const auto keys = multi_indices(*ctx, arity);
  SymTensor X(ctx, arity, Variance::Multivector);
  if (keys.empty()) return X;
  const auto& I0 = keys[std::size_t(rng.uniform(0, long(keys.size()) - 1))];
  const int tensor_degree =
      pick_degree(rng, ctx, max_weight) - I0.z_degree(*ctx);
  for (const auto& index : keys) {
    if (rng.uniform(0, 2) == 2 && !(index == I0)) continue;
    Poly c = random_homogeneous_poly_of_degree(
        rng, ctx, tensor_degree + index.z_degree(*ctx), max_weight);
    if (!c.is_zero()) X.set_coeff(index, c);
  }
  if (X.is_zero())
    X = SymTensor::frame(ctx, keys.front(), Variance::Multivector);
  return X;
}

DiffOp random_scalar_symbol_operator(Rng& rng, const BundlePtr& bundle,
                                     int order) {
  const ContextPtr& ctx = bundle->context();
  SymTensor X = random_multivector(rng, ctx, order);
  DiffOp top = operator_with_symbol(i_embed(X, bundle));
  if (order == 0) return top;
  // Add an arbitrary lower-order tail of the same degree.
  const int degree = top.degree();
  DiffOp tail(bundle, order, degree);
  for (const auto& index : multi_indices_up_to(*ctx, order - 1)) {
    for (std::size_t mu = 0; mu < bundle->rank(); ++mu)
      for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
        if (rng.uniform(0, 2) != 0) continue;
        const int want = degree + index.z_degree(*ctx) +
                         bundle->fiber_degree(lam) - bundle->fiber_degree(mu);
        Poly c = random_homogeneous_poly_of_degree(rng, ctx, want, 2);
        if (!c.is_zero()) tail.set_coeff(index, mu, lam, c);
      }
  }
  return top + tail;
}

Connection random_connection(Rng& rng, const BundlePtr& bundle) {
  Connection conn(bundle);
  const ContextPtr& ctx = bundle->context();
  for (std::size_t a = 0; a < ctx->dim(); ++a)
    for (std::size_t mu = 0; mu < bundle->rank(); ++mu)
      for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
        if (rng.uniform(0, 1) != 0) continue;
        const int want = bundle->fiber_degree(lam) - bundle->fiber_degree(mu) -
                         ctx->degree(a);
        Poly g = random_homogeneous_poly_of_degree(rng, ctx, want, 2);
        if (!g.is_zero()) conn.set_gamma(a, mu, lam, g);
      }
  return conn;
}

Point random_point(Rng& rng, const ContextPtr& ctx) {
  std::map<std::string, Rational> values;
  for (std::size_t a = 0; a < ctx->dim(); ++a) {
    if (ctx->degree(a) != 0 || !rng.flip()) continue;
    values[ctx->name(a)] = Rational(rng.uniform(-3, 3));
  }
  return Point(std::move(values));
}

CheckHooks CheckHooks::defaults() {
  CheckHooks h;
  h.partial_right = [](const Poly& p, std::size_t a) {
    return p.partial_right(a);
  };
  return h;
}

namespace {

using Witness = std::optional<std::string>;

std::string describe(const Poly& p) { return p.str(); }

Witness ok() { return std::nullopt; }

Witness fail(const std::string& msg) { return msg; }

// ---------------------------------------------------------------- algebra

Witness prop_multi_indices(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng);
  const int j = int(rng.uniform(0, 4));
  const auto found = multi_indices(*ctx, j);
  // Independent count: odometer over capped exponent ranges.
  long count = 0;
  std::vector<int> e(ctx->dim(), 0);
  const auto cap = [&](std::size_t a) { return ctx->is_odd(a) ? 1 : j; };
  while (true) {
    int w = 0;
    for (int v : e) w += v;
    if (w == j) ++count;
    std::size_t a = 0;
    while (a < e.size() && e[a] == cap(a)) e[a++] = 0;
    if (a == e.size()) break;
    ++e[a];
  }
  if (long(found.size()) != count)
    return fail("multi_indices count mismatch at weight " + std::to_string(j));
  for (const auto& index : found) {
    if (!index.admissible(*ctx) || index.weight() != j)
      return fail("multi_indices emitted an inadmissible index");
  }
  if (!std::is_sorted(found.begin(), found.end()))
    return fail("multi_indices enumeration is not sorted");
  return ok();
}

Witness prop_normalize_word(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng);
  const long len = rng.uniform(0, 6);
  std::vector<std::size_t> word;
  for (long i = 0; i < len; ++i)
    word.push_back(std::size_t(rng.uniform(0, long(ctx->dim()) - 1)));
  const auto norm = normalize_word(*ctx, word);
  if (norm) {
    // Idempotence on the sorted word.
    const auto again = normalize_word(*ctx, norm->index.word_ascending());
    if (!again || again->sign != 1 || !(again->index == norm->index))
      return fail("normalize_word is not idempotent on a normal word");
  }
  // Appending a letter commutes with normalizing first.
  const std::size_t extra = std::size_t(rng.uniform(0, long(ctx->dim()) - 1));
  auto extended = word;
  extended.push_back(extra);
  const auto direct = normalize_word(*ctx, extended);
  if (!norm) {
    if (direct) return fail("extension of a vanishing word did not vanish");
    return ok();
  }
  auto sorted_ext = norm->index.word_ascending();
  sorted_ext.push_back(extra);
  const auto staged = normalize_word(*ctx, sorted_ext);
  if (!direct != !staged)
    return fail("normalize_word extension consistency (vanishing) failed");
  if (direct && (direct->sign != norm->sign * staged->sign ||
                 !(direct->index == staged->index)))
    return fail("normalize_word extension consistency failed");
  return ok();
}

Witness prop_sigma_sign(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng);
  // Random K <= I of weight <= 4.
  std::vector<int> iv(ctx->dim()), kv(ctx->dim());
  for (std::size_t a = 0; a < ctx->dim(); ++a) {
    iv[a] = int(rng.uniform(0, ctx->is_odd(a) ? 1 : 2));
    kv[a] = int(rng.uniform(0, iv[a]));
  }
  const MultiIndex I(iv), K(kv);
  // Oracle: move the derivative letters of I-K one at a time through the
  // letters of K, counting odd-odd crossings.
  const auto kw = K.word_descending();
  const auto dw = I.minus(K).word_descending();
  std::vector<std::size_t> word = kw;
  word.insert(word.end(), dw.begin(), dw.end());
  long crossings = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = i + 1; j < word.size(); ++j)
      if (word[i] < word[j] && ctx->is_odd(word[i]) && ctx->is_odd(word[j]))
        ++crossings;
  const int expected = sign_pow(crossings);
  if (sigma_sign(*ctx, I, K) != expected)
    return fail("sigma_sign disagrees with the letter-moving oracle");
  if (sigma_sign(*ctx, I, MultiIndex::zero(ctx->dim())) != 1)
    return fail("sigma_sign(I, 0) != +1");
  if (sigma_sign(*ctx, I, I) != 1) return fail("sigma_sign(I, I) != +1");
  return ok();
}

Witness prop_graded_commutativity(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng);
  const Poly f = random_homogeneous_poly(rng, ctx);
  const Poly g = random_homogeneous_poly(rng, ctx);
  if (f.is_zero() || g.is_zero()) return ok();
  const int sign =
      sign_pow(long(*f.homogeneous_degree()) * *g.homogeneous_degree());
  if (!(f * g == Rational(sign) * (g * f)))
    return fail("graded commutativity failed for f=" + describe(f) +
                ", g=" + describe(g));
  return ok();
}

Witness prop_partial_right_leibniz(Rng& rng, const CheckHooks& hooks) {
  const ContextPtr ctx = random_context(rng);
  const Poly f = random_homogeneous_poly(rng, ctx);
  const Poly g = random_homogeneous_poly(rng, ctx);
  const std::size_t a = std::size_t(rng.uniform(0, long(ctx->dim()) - 1));
  const int dg = g.is_zero() ? 0 : *g.homogeneous_degree();
  const Poly lhs = hooks.partial_right(f * g, a);
  const Poly rhs = f * hooks.partial_right(g, a) +
                   Rational(sign_pow(long(ctx->degree(a)) * dg)) *
                       (hooks.partial_right(f, a) * g);
  if (!(lhs == rhs))
    return fail("right-derivative Leibniz failed at coordinate " +
                ctx->name(a) + " for f=" + describe(f) + ", g=" + describe(g));
  return ok();
}

Witness prop_sign_bridge(Rng& rng, const CheckHooks& hooks) {
  const ContextPtr ctx = random_context(rng);
  const Poly f = random_homogeneous_poly(rng, ctx);
  if (f.is_zero()) return ok();
  const long len = rng.uniform(1, 3);
  std::vector<std::size_t> word;
  long degsum = 0;
  for (long i = 0; i < len; ++i) {
    word.push_back(std::size_t(rng.uniform(0, long(ctx->dim()) - 1)));
    degsum += ctx->degree(word.back());
  }
  Poly lhs = f;
  for (std::size_t i = word.size(); i-- > 0;)
    lhs = hooks.partial_right(lhs, word[i]);
  std::vector<std::size_t> reversed(word.rbegin(), word.rend());
  const Poly rhs = Rational(sign_pow(degsum * (*f.homogeneous_degree() + 1))) *
                   f.partial_word_left(reversed);
  if (!(lhs == rhs)) {
    std::ostringstream os;
    os << "partial-derivative sign bridge failed for f=" << describe(f)
       << ", word=";
    for (std::size_t a : word) os << ctx->name(a) << " ";
    os << "; expected " << describe(rhs) << ", got " << describe(lhs);
    return fail(os.str());
  }
  return ok();
}

Witness prop_leibniz_multi(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng);
  const Poly f = random_homogeneous_poly(rng, ctx);
  const Poly g = random_homogeneous_poly(rng, ctx);
  std::vector<int> iv(ctx->dim(), 0);
  int budget = int(rng.uniform(0, 3));
  for (std::size_t a = 0; a < ctx->dim() && budget > 0; ++a) {
    const int e = int(rng.uniform(0, ctx->is_odd(a) ? 1 : budget));
    iv[a] = e;
    budget -= e;
  }
  const MultiIndex I(iv);
  const Poly expansion = leibniz_multi(I, f, g);
  const Poly direct = (f * g).partial_multi_op(I);
  if (!(expansion == direct))
    return fail("multi-index Leibniz disagrees with direct differentiation: "
                "f=" + describe(f) + ", g=" + describe(g) + ", expected " +
                describe(direct) + ", got " + describe(expansion));
  return ok();
}

Witness prop_taylor_split(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng);
  const Poly f = random_poly(rng, ctx, 4);
  const Point a = random_point(rng, ctx);
  const int q = int(rng.uniform(0, 3));
  const auto [taylor, rem] = f.taylor_split(a, q);
  if (!(taylor + rem == f)) return fail("taylor_split does not reconstruct f");
  // The remainder has no shifted component of order <= q.
  const auto [r_low, r_high] = rem.taylor_split(a, q);
  if (!r_low.is_zero())
    return fail("taylor_split remainder has low-order shifted terms");
  const auto [t_low, t_high] = taylor.taylor_split(a, q);
  if (!t_high.is_zero())
    return fail("taylor_split polynomial part exceeds the order bound");
  return ok();
}

Witness prop_sym_product(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng);
  const Variance var = rng.flip() ? Variance::Form : Variance::Multivector;
  const auto mk = [&](int arity) {
    SymTensor t(ctx, arity, var);
    for (const auto& index : multi_indices(*ctx, arity))
      if (rng.uniform(0, 1) == 0) {
        Poly c = random_homogeneous_poly(rng, ctx, 2);
        if (!c.is_zero()) t.set_coeff(index, c);
      }
    return t;
  };
  const SymTensor s = mk(int(rng.uniform(0, 2)));
  const SymTensor t = mk(int(rng.uniform(0, 2)));
  const SymTensor u = mk(int(rng.uniform(0, 1)));
  if (!(sym_product(sym_product(s, t), u) == sym_product(s, sym_product(t, u))))
    return fail("sym_product associativity failed");
  for (const auto& [ds, sp] : s.homogeneous_parts())
    for (const auto& [dt, tp] : t.homogeneous_parts()) {
      const int sign = sign_pow(long(ds) * dt);
      if (!(sym_product(sp, tp) == Rational(sign) * sym_product(tp, sp)))
        return fail("sym_product graded symmetry failed");
    }
  return ok();
}

Witness prop_gram_matrix(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng);
  const int k = int(rng.uniform(0, 3));
  for (const auto& I : multi_indices(*ctx, k))
    for (const auto& J : multi_indices(*ctx, k)) {
      const Poly value =
          sym_pair(SymTensor::frame(ctx, I, Variance::Form),
                   SymTensor::frame(ctx, J, Variance::Multivector));
      Poly expect(ctx);
      if (I == J)
        expect = Poly::constant(ctx, Rational(I.factorial()));
      if (!(value == expect)) return fail("frame Gram matrix is not I! delta");
    }
  return ok();
}

Witness prop_section_degrees(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const Section psi = random_section(rng, bundle);
  for (const auto& [d, part] : psi.homogeneous_parts()) {
    auto check = part.homogeneous_degree();
    if (!check || *check != d)
      return fail("homogeneous split violates |psi^lam| = |psi| - |th_lam|");
    for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
      if (part.component(lam).is_zero()) continue;
      auto dc = part.component(lam).homogeneous_degree();
      if (!dc || *dc != d - bundle->fiber_degree(lam))
        return fail("component degree mismatch in homogeneous section");
    }
  }
  return ok();
}

// ---------------------------------------------------------------- diffop

Witness prop_decomposition_roundtrip(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 3));
  const DiffOp d = random_operator(rng, bundle, k);
  auto r = extract_coeffs(as_oracle(d), k);
  if (auto* failure = std::get_if<ExtractFailure>(&r))
    return fail("extraction failed on a table operator: " + failure->witness);
  if (!(std::get<DiffOp>(r) == d))
    return fail("extract(apply(D)) did not reproduce the table");
  return ok();
}

std::vector<Section> probe_family(const BundlePtr& bundle, int max_weight) {
  std::vector<Section> probes;
  for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
    probes.push_back(Section::frame(bundle, lam));
    for (const auto& J : multi_indices_up_to(*bundle->context(), max_weight)) {
      if (J.is_zero()) continue;
      probes.push_back(Poly::monomial(bundle->context(), J, Rational(1)) *
                       Section::frame(bundle, lam));
    }
  }
  return probes;
}

Witness prop_iterated_leibniz(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const DiffOp d = random_operator(rng, bundle, int(rng.uniform(1, 2)));
  const LinearOracle oracle = as_oracle(d);
  const Poly f = random_homogeneous_poly(rng, ctx, 2);
  const Poly g = random_homogeneous_poly(rng, ctx, 2);
  if (f.is_zero() || g.is_zero()) return ok();
  const int j = int(rng.uniform(1, 2));
  std::vector<Poly> rest;
  for (int i = 1; i < j; ++i) {
    Poly h = random_homogeneous_poly(rng, ctx, 2);
    if (h.is_zero()) h = Poly::constant(ctx, Rational(1));
    rest.push_back(h);
  }
  const int sign = sign_pow(long(*f.homogeneous_degree()) *
                            *g.homogeneous_degree());
  auto with_front = [&rest](const Poly& front, const Poly* second = nullptr) {
    std::vector<Poly> fs{front};
    if (second) fs.push_back(*second);
    fs.insert(fs.end(), rest.begin(), rest.end());
    return fs;
  };
  for (const Section& probe : probe_family(bundle, 1)) {
    const Section lhs = nested_right(oracle, with_front(f * g), probe);
    const Section rhs =
        f * nested_right(oracle, with_front(g), probe) +
        Rational(sign) * (g * nested_right(oracle, with_front(f), probe)) -
        nested_right(oracle, with_front(f, &g), probe);
    if (!(lhs == rhs)) return fail("iterated-bracket Leibniz rule failed");
  }
  return ok();
}

Witness prop_kmap_linearity(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 2));
  const DiffOp d = random_operator(rng, bundle, k);
  const Poly f = random_homogeneous_poly(rng, ctx, 2);
  if (f.is_zero()) return ok();
  const DiffOp fd = f * d;
  const auto indices = multi_indices_up_to(*ctx, k);
  const auto& J = indices[std::size_t(rng.uniform(0, long(indices.size()) - 1))];
  std::vector<Poly> fs;
  for (std::size_t a : J.word_ascending())
    fs.push_back(Poly::coordinate(ctx, a));
  for (std::size_t rho = 0; rho < bundle->rank(); ++rho) {
    const Section lhs =
        nested_left(as_oracle(fd), fs, Section::frame(bundle, rho));
    const Section rhs =
        f * nested_left(as_oracle(d), fs, Section::frame(bundle, rho));
    if (!(lhs == rhs)) return fail("K-map C^inf-linearity failed");
  }
  return ok();
}

Witness prop_compose(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const DiffOp d = random_operator(rng, bundle, int(rng.uniform(0, 2)));
  const DiffOp e = random_operator(rng, bundle, int(rng.uniform(0, 1)));
  const DiffOp de = compose(d, e);
  if (de.effective_order() > d.order() + e.order())
    return fail("compose exceeded the order bound");
  if (!de.is_zero() && de.degree() != d.degree() + e.degree())
    return fail("compose degree bookkeeping failed");
  const Section psi = random_section(rng, bundle, 2);
  if (!(de.apply(psi) == d.apply(e.apply(psi))))
    return fail("compose does not act as the composition");
  return ok();
}

Witness prop_reduction_formula(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(1, 3));
  const DiffOp d = random_operator(rng, bundle, k);
  const LinearOracle oracle = as_oracle(d);
  const int j = int(rng.uniform(0, k - 1));
  const Poly f = random_homogeneous_poly(rng, ctx, 2);
  if (f.is_zero()) return ok();
  std::vector<Poly> gs;
  for (int i = 2; i <= k - j; ++i) {
    Poly g = random_homogeneous_poly(rng, ctx, 2);
    if (g.is_zero()) g = Poly::constant(ctx, Rational(1));
    gs.push_back(g);
  }
  for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
    std::vector<Poly> tuple{f};
    tuple.insert(tuple.end(), gs.begin(), gs.end());
    const Section lhs =
        nested_right(oracle, tuple, Section::frame(bundle, lam));
    Section rhs(bundle);
    for (int q = 1; q <= j + 1; ++q) {
      // Sum over all words (A_1..A_q).
      std::vector<std::size_t> word(std::size_t(q), 0);
      Rational inv_qfact(1);
      for (int t = 2; t <= q; ++t) inv_qfact /= t;
      while (true) {
        const Poly df = f.partial_word_right(word);
        if (!df.is_zero()) {
          std::vector<Poly> zs;
          for (std::size_t a : word) zs.push_back(Poly::coordinate(ctx, a));
          zs.insert(zs.end(), gs.begin(), gs.end());
          const Section inner =
              nested_right(oracle, zs, Section::frame(bundle, lam));
          rhs += (Rational(sign_pow(q + 1)) * inv_qfact) * (df * inner);
        }
        std::size_t pos = 0;
        while (pos < word.size() && word[pos] + 1 == ctx->dim())
          word[pos++] = 0;
        if (pos == word.size()) break;
        ++word[pos];
      }
    }
    if (!(lhs == rhs)) return fail("coefficient reduction formula failed");
  }
  return ok();
}

Witness prop_flavor_relation(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const DiffOp d = random_operator(rng, bundle, int(rng.uniform(0, 2)));
  const LinearOracle oracle = as_oracle(d);
  const int j = int(rng.uniform(1, 3));
  std::vector<Poly> fs;
  long degsum = 0;
  for (int i = 0; i < j; ++i) {
    Poly f = random_homogeneous_poly(rng, ctx, 2);
    if (f.is_zero()) f = Poly::coordinate(ctx, 0);
    degsum += *f.homogeneous_degree();
    fs.push_back(f);
  }
  const int sign = sign_pow(j + long(d.degree()) * degsum);
  for (const Section& probe : probe_family(bundle, 1)) {
    if (!(nested_left(oracle, fs, probe) ==
          Rational(sign) * nested_right(oracle, fs, probe)))
      return fail("left/right bracket flavor relation failed");
  }
  return ok();
}

BundleMap random_endomap(Rng& rng, const BundlePtr& bundle) {
  const ContextPtr& ctx = bundle->context();
  const int degree = int(rng.uniform(-1, 1));
  BundleMap F(bundle, bundle, degree);
  for (std::size_t kap = 0; kap < bundle->rank(); ++kap)
    for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
      const int want =
          degree + bundle->fiber_degree(lam) - bundle->fiber_degree(kap);
      Poly c = random_homogeneous_poly_of_degree(rng, ctx, want, 2);
      if (!c.is_zero()) F.set_entry(kap, lam, c);
    }
  return F;
}

Witness prop_pullback(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const DiffOp d = random_operator(rng, bundle, int(rng.uniform(0, 2)));
  if (!(op_pullback(BundleMap::identity(bundle), d) == d))
    return fail("pullback along the identity changed the operator");
  const BundleMap F = random_endomap(rng, bundle);
  const BundleMap G = random_endomap(rng, bundle);
  // Composition law of the operator functor; the twist by |D'| makes an
  // odd-odd pair of maps contribute the Koszul sign of their transposition.
  const int swap = sign_pow(long(F.degree()) * G.degree());
  const DiffOp lhs = op_pullback(G.compose(F), d);
  const DiffOp rhs =
      Rational(swap) * op_pullback(F, op_pullback(G, d));
  if (!(lhs == rhs)) return fail("pullback functoriality failed");
  const DiffOp fd = op_pullback(F, d);
  if (!fd.is_zero() && fd.degree() != F.degree() + d.degree())
    return fail("pullback degree bookkeeping failed");
  return ok();
}

Witness prop_dual_pairing(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const auto indices = multi_indices_up_to(*ctx, 2);
  const auto pick_index = [&]() {
    return indices[std::size_t(rng.uniform(0, long(indices.size()) - 1))];
  };
  const auto pick_fiber = [&]() {
    return std::size_t(rng.uniform(0, long(bundle->rank()) - 1));
  };
  const MultiIndex J = pick_index(), I = pick_index();
  const std::size_t kap = pick_fiber(), rho = pick_fiber(), lam = pick_fiber(),
                    mu = pick_fiber();
  const Rational value = dual_pairing(bundle, J, kap, rho, I, lam, mu);
  const Rational expect =
      (J == I && kap == mu && lam == rho) ? Rational(J.factorial()) : Rational(0);
  if (value != expect)
    return fail("dual pairing K^J(P_I) != J! delta delta delta");
  return ok();
}

Witness prop_bracket_mult(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 2));
  const DiffOp d = random_operator(rng, bundle, k);
  const Poly f = random_homogeneous_poly(rng, ctx, 2);
  const DiffOp br = bracket_mult(d, f);
  if (br.effective_order() > k - 1)
    return fail("[D, lambda_f] did not drop the order");
  const Poly g = random_homogeneous_poly(rng, ctx, 2);
  if (!g.is_zero()) {
    const DiffOp lg = DiffOp::multiplication(bundle, g);
    if (!f.is_zero() && !bracket_mult(lg, f).is_zero())
      return fail("[lambda_g, lambda_f] != 0");
  }
  return ok();
}

// ---------------------------------------------------------------- symbol

Witness prop_symbol_surjectivity(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 2));
  // Random symbol table with a consistent degree pattern. The weight-k
  // index set can be empty (few odd coordinates); the zero table is the
  // only symbol then and the round trip is vacuous.
  const auto keys = multi_indices(*ctx, k);
  if (keys.empty()) return ok();
  const auto& I0 = keys[std::size_t(rng.uniform(0, long(keys.size()) - 1))];
  const int m = pick_degree(rng, ctx, 2);
  const int degree = m - I0.z_degree(*ctx);
  SymbolMap F(bundle, k, degree);
  for (const auto& index : keys)
    for (std::size_t mu = 0; mu < bundle->rank(); ++mu)
      for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
        if (rng.uniform(0, 1) != 0) continue;
        const int want = degree + index.z_degree(*ctx) +
                         bundle->fiber_degree(lam) - bundle->fiber_degree(mu);
        Poly c = random_homogeneous_poly_of_degree(rng, ctx, want, 2);
        if (!c.is_zero()) F.set_entry(index, mu, lam, c);
      }
  if (!(symbol_of(operator_with_symbol(F)) == F))
    return fail("sigma(build(F)) != F");
  return ok();
}

Witness prop_symbol_kernel(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(1, 3));
  DiffOp d = rng.flip() ? random_operator(rng, bundle, k)
                        : random_operator(rng, bundle, k - 1).at_order(k);
  const bool low_order = d.effective_order() <= k - 1;
  if (symbol_of(d).is_zero() != low_order)
    return fail("symbol kernel is not exactly the lower-order operators");
  return ok();
}

Witness prop_sn_skew(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const SymTensor X = random_multivector(rng, ctx, int(rng.uniform(0, 2)));
  const SymTensor Y = random_multivector(rng, ctx, int(rng.uniform(0, 2)));
  if (X.arity() + Y.arity() == 0) return ok();
  for (const auto& [dx, xp] : X.homogeneous_parts())
    for (const auto& [dy, yp] : Y.homogeneous_parts()) {
      const int sign = sign_pow(long(dx) * dy);
      if (!(sn_bracket(xp, yp) == Rational(-sign) * sn_bracket(yp, xp)))
        return fail("SN bracket skew-symmetry failed");
    }
  return ok();
}

Witness prop_sn_leibniz(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const SymTensor X = random_multivector(rng, ctx, int(rng.uniform(0, 2)));
  const SymTensor Y = random_multivector(rng, ctx, int(rng.uniform(0, 1)));
  const SymTensor Z = random_multivector(rng, ctx, int(rng.uniform(0, 1)));
  if (X.arity() + Y.arity() + Z.arity() == 0) return ok();
  for (const auto& [dx, xp] : X.homogeneous_parts())
    for (const auto& [dy, yp] : Y.homogeneous_parts())
      for (const auto& [dz, zp] : Z.homogeneous_parts()) {
        const SymTensor lhs = sn_bracket(xp, sym_product(yp, zp));
        const SymTensor rhs =
            sym_product(sn_bracket(xp, yp), zp) +
            Rational(sign_pow(long(dx) * dy)) *
                sym_product(yp, sn_bracket(xp, zp));
        if (!(lhs == rhs)) return fail("SN bracket product-Leibniz failed");
      }
  return ok();
}

Witness prop_sn_jacobi(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const SymTensor X = random_multivector(rng, ctx, int(rng.uniform(0, 2)));
  const SymTensor Y = random_multivector(rng, ctx, int(rng.uniform(0, 2)));
  const SymTensor Z = random_multivector(rng, ctx, int(rng.uniform(0, 2)));
  for (const auto& [dx, xp] : X.homogeneous_parts())
    for (const auto& [dy, yp] : Y.homogeneous_parts())
      for (const auto& [dz, zp] : Z.homogeneous_parts()) {
        const SymTensor lhs = sn_bracket(xp, sn_bracket(yp, zp));
        const SymTensor rhs =
            sn_bracket(sn_bracket(xp, yp), zp) +
            Rational(sign_pow(long(dx) * dy)) *
                sn_bracket(yp, sn_bracket(xp, zp));
        if (!(lhs == rhs)) return fail("SN bracket Jacobi identity failed");
      }
  return ok();
}

Witness prop_commutator_symbol(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 2));
  const int m = int(rng.uniform(0, std::min(2, 3 - k)));
  const DiffOp d = random_scalar_symbol_operator(rng, bundle, k);
  const DiffOp e = random_scalar_symbol_operator(rng, bundle, m);
  const auto result = commutator_symbol_check(d, e);
  if (!(result.lhs == result.rhs))
    return fail("commutator-symbol theorem failed: l([D,D']) != [lD,lD']_S");
  if (result.commutator.effective_order() > k + m - 1 &&
      !result.commutator.is_zero())
    return fail("[D,D'] exceeded order k+m-1 on scalar-symbol inputs");
  return ok();
}

Witness prop_atiyah_leibniz(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const DiffOp d = random_scalar_symbol_operator(rng, bundle, 1);
  const DiffOp e = random_scalar_symbol_operator(rng, bundle, 1);
  const Poly f = random_homogeneous_poly(rng, ctx, 2);
  if (f.is_zero()) return ok();
  const auto X = scalar_symbol(d);
  if (!X) return fail("generated operator is not scalar-symbol");
  const DiffOp lhs = commutator(d, f * e);
  const Poly xf = vf_action(*X, f);
  DiffOp rhs = Rational(sign_pow(long(d.degree()) * *f.homogeneous_degree())) *
               (f * commutator(d, e));
  if (!xf.is_zero()) rhs += xf * e;
  if (!(lhs == rhs)) return fail("Atiyah graded Leibniz rule failed");
  return ok();
}

Witness prop_curvature(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const Connection conn = random_connection(rng, bundle);
  const std::size_t a = std::size_t(rng.uniform(0, long(ctx->dim()) - 1));
  const std::size_t b = std::size_t(rng.uniform(0, long(ctx->dim()) - 1));
  const SymTensor Xa = SymTensor::coordinate_field(ctx, a);
  const SymTensor Xb = SymTensor::coordinate_field(ctx, b);
  const DiffOp R = curvature(conn, Xa, Xb);  // order-0 certificate built in
  const Poly f = random_homogeneous_poly(rng, ctx, 2);
  if (!f.is_zero() && !bracket_mult(R, f).is_zero())
    return fail("[R(X,Y), lambda_f] != 0");
  const Connection flat(bundle);
  if (!curvature(flat, Xa, Xb).is_zero())
    return fail("flat connection has nonzero curvature");
  return ok();
}

Witness prop_i_embed_roundtrip(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 2));
  const SymTensor X = random_multivector(rng, ctx, k);
  const DiffOp d = operator_with_symbol(i_embed(X, bundle));
  const auto back = scalar_symbol(d);
  if (!back || !(*back == X))
    return fail("scalar_symbol(i_embed(X)) != X");
  return ok();
}

Witness prop_covariant_rules(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const Connection conn = random_connection(rng, bundle);
  const SymTensor X = random_multivector(rng, ctx, 1);
  const Section psi = random_section(rng, bundle, 2);
  const Poly f = random_homogeneous_poly(rng, ctx, 2);
  // C^inf-linearity in X.
  if (!(covariant_derivative(conn, f * X, psi) ==
        f * covariant_derivative(conn, X, psi)))
    return fail("nabla_{f X} psi != f nabla_X psi");
  if (f.is_zero()) return ok();
  const int df = *f.homogeneous_degree();
  for (const auto& [dx, xp] : X.homogeneous_parts()) {
    const Section lhs = covariant_derivative(conn, xp, f * psi);
    const Section rhs = vf_action(xp, f) * psi +
                        Rational(sign_pow(long(dx) * df)) *
                            (f * covariant_derivative(conn, xp, psi));
    if (!(lhs == rhs)) return fail("covariant derivative Leibniz rule failed");
  }
  return ok();
}

Witness prop_scalar_symbol_display(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 2));
  const DiffOp d = random_scalar_symbol_operator(rng, bundle, k);
  const auto X = scalar_symbol(d);
  if (!X) return fail("generated operator is not scalar-symbol");
  std::vector<Poly> fs;
  long degsum = 0;
  for (int i = 0; i < k; ++i) {
    Poly f = random_homogeneous_poly(rng, ctx, 2);
    if (f.is_zero()) f = Poly::coordinate(ctx, 0);
    degsum += *f.homogeneous_degree();
    fs.push_back(f);
  }
  // D^{(k)}_{(f_1..f_k)} = (-1)^{sum |f_i|} [l_k(D)](df_1,..,df_k) . 1.
  const Poly value = mv_eval_on_exact_forms(*X, fs);
  const Poly scaled = Rational(sign_pow(degsum)) * value;
  for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
    const Section lhs =
        nested_left(as_oracle(d), fs, Section::frame(bundle, lam));
    const Section rhs = scaled * Section::frame(bundle, lam);
    if (!(lhs == rhs))
      return fail("l_(k) determining formula failed on a frame section");
  }
  return ok();
}

// ---------------------------------------------------------------- jets

Witness prop_jet_factorization(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 3));
  const DiffOp d = random_operator(rng, bundle, int(rng.uniform(0, k)));
  const Section psi = random_section(rng, bundle, 3);
  if (!(operator_on_jet(d, prolong(psi, k)) == d.apply(psi)))
    return fail("operator_on_jet(D, prolong(psi)) != D(psi)");
  return ok();
}

Witness prop_project_prolong(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 3));
  const int l = int(rng.uniform(0, k));
  const Section psi = random_section(rng, bundle, 3);
  if (!(project(prolong(psi, k), l) == prolong(psi, l)))
    return fail("pi^{k,l} o prolong_k != prolong_l");
  return ok();
}

JetVector random_jet(Rng& rng, const BundlePtr& bundle, int order) {
  JetVector jet(bundle, order);
  for (const auto& index : multi_indices_up_to(*bundle->context(), order))
    for (std::size_t lam = 0; lam < bundle->rank(); ++lam)
      if (rng.uniform(0, 1) == 0)
        jet.set_coeff(index, lam, random_poly(rng, bundle->context(), 2));
  return jet;
}

Witness prop_transition_maps(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 3));
  const int l = int(rng.uniform(0, k));
  const int q = int(rng.uniform(0, l));
  const JetVector jet = random_jet(rng, bundle, k);
  if (!(project(jet, k) == jet)) return fail("pi^{k,k} != id");
  if (!(project(project(jet, l), q) == project(jet, q)))
    return fail("transition composition pi^{l,q} o pi^{k,l} != pi^{k,q}");
  return ok();
}

Witness prop_point_symbolic(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 3));
  const Section psi = random_section(rng, bundle, 3);
  const Point a = random_point(rng, ctx);
  const JetVector jet = prolong(psi, k);
  const JetAtPoint at = jet_at_point(psi, k, a);
  for (const auto& index : multi_indices_up_to(*ctx, k)) {
    const Rational scale =
        Rational(sign_pow(index.weight())) * Rational(index.factorial());
    for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
      const Rational lhs = scale * jet.coeff(index, lam).body_at(a);
      if (lhs != at.value(index, lam))
        return fail("prolongation body values disagree with jet_at_point");
    }
  }
  return ok();
}

Witness prop_same_jet_ideal(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 2));
  const Point a = random_point(rng, ctx);
  const Section psi = random_section(rng, bundle, 3);
  Section phi = random_section(rng, bundle, 3);
  if (rng.flip()) {
    // Construct an equal-jet pair: add a section with components in the
    // (k+1)-st power of the vanishing ideal at a.
    phi = psi;
    for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
      Poly bump = Poly::constant(ctx, Rational(1));
      for (int i = 0; i <= k; ++i) {
        const std::size_t b = std::size_t(rng.uniform(0, long(ctx->dim()) - 1));
        Poly gen = Poly::coordinate(ctx, b);
        if (ctx->degree(b) == 0)
          gen -= Poly::constant(ctx, a.value_of(*ctx, b));
        bump = bump * gen;
      }
      phi.component(lam) += bump;
    }
  }
  const bool same_jet = jet_at_point(psi, k, a) == jet_at_point(phi, k, a);
  bool in_ideal = true;
  for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
    const Poly diff = psi.component(lam) - phi.component(lam);
    if (!diff.taylor_split(a, k).first.is_zero()) in_ideal = false;
  }
  if (same_jet != in_ideal)
    return fail("same-jet criterion disagrees with ideal membership");
  return ok();
}

std::map<int, long> brute_jet_rank(const Bundle& bundle, int order) {
  // Independent odometer enumeration.
  const Context& ctx = *bundle.context();
  std::map<int, long> rk;
  std::vector<int> e(ctx.dim(), 0);
  const auto cap = [&](std::size_t a) { return ctx.is_odd(a) ? 1 : order; };
  while (true) {
    int w = 0, dz = 0;
    for (std::size_t a = 0; a < e.size(); ++a) {
      w += e[a];
      dz += e[a] * ctx.degree(a);
    }
    if (w <= order)
      for (std::size_t lam = 0; lam < bundle.rank(); ++lam)
        rk[dz + bundle.fiber_degree(lam)] += 1;
    std::size_t a = 0;
    while (a < e.size() && e[a] == cap(a)) e[a++] = 0;
    if (a == e.size()) break;
    ++e[a];
  }
  return rk;
}

std::map<int, long> brute_diff_rank(const Bundle& bundle, int order) {
  const Context& ctx = *bundle.context();
  std::map<int, long> rk;
  std::vector<int> e(ctx.dim(), 0);
  const auto cap = [&](std::size_t a) { return ctx.is_odd(a) ? 1 : order; };
  while (true) {
    int w = 0, dz = 0;
    for (std::size_t a = 0; a < e.size(); ++a) {
      w += e[a];
      dz += e[a] * ctx.degree(a);
    }
    if (w <= order)
      for (std::size_t mu = 0; mu < bundle.rank(); ++mu)
        for (std::size_t lam = 0; lam < bundle.rank(); ++lam)
          rk[bundle.fiber_degree(mu) - bundle.fiber_degree(lam) - dz] += 1;
    std::size_t a = 0;
    while (a < e.size() && e[a] == cap(a)) e[a++] = 0;
    if (a == e.size()) break;
    ++e[a];
  }
  return rk;
}

Witness prop_rank_accounting(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 3));
  if (jet_rank(*bundle, k) != brute_jet_rank(*bundle, k))
    return fail("jet_rank disagrees with brute-force enumeration");
  if (diff_rank(*bundle, k) != brute_diff_rank(*bundle, k))
    return fail("diff_rank disagrees with brute-force enumeration");
  if (k >= 1) {
    auto lhs = jet_rank(*bundle, k);
    auto rhs = jet_rank(*bundle, k - 1);
    for (const auto& [deg, count] : hom_sk_rank(*bundle, k)) rhs[deg] += count;
    if (lhs != rhs) return fail("jet rank SES additivity failed");
  }
  return ok();
}

Witness prop_allodd_stabilization(Rng& rng, const CheckHooks&) {
  const long n = rng.uniform(1, 3);
  std::vector<Coordinate> coords;
  for (long a = 0; a < n; ++a) {
    int deg = int(rng.uniform(-1, 1));
    if (deg % 2 == 0) deg = 1;
    coords.push_back(Coordinate{"t" + std::to_string(a), deg});
  }
  const ContextPtr ctx = make_context(std::move(coords));
  const BundlePtr bundle = random_bundle(rng, ctx);
  const auto base = jet_rank(*bundle, int(n));
  for (int k = int(n); k <= int(n) + 2; ++k)
    if (jet_rank(*bundle, k) != base)
      return fail("all-odd jet ranks did not stabilize past k = n");
  return ok();
}

Witness prop_pushforward(Rng& rng, const CheckHooks&) {
  const ContextPtr ctx = random_context(rng, 3);
  const BundlePtr bundle = random_bundle(rng, ctx);
  const int k = int(rng.uniform(0, 2));
  const Section psi = random_section(rng, bundle, 2);
  const BundleMap F = random_endomap(rng, bundle);
  if (!(jet_pushforward(F, prolong(psi, k)) == prolong(F.apply(psi), k)))
    return fail("pushforward does not commute with prolongation");
  const JetVector jet = random_jet(rng, bundle, k);
  if (!(jet_pushforward(BundleMap::identity(bundle), jet) == jet))
    return fail("pushforward along the identity changed the jet");
  const BundleMap G = random_endomap(rng, bundle);
  if (!(jet_pushforward(G.compose(F), jet) ==
        jet_pushforward(G, jet_pushforward(F, jet))))
    return fail("pushforward functoriality failed");
  return ok();
}

using PropFn = Witness (*)(Rng&, const CheckHooks&);

struct Property {
  const char* name;
  PropFn fn;
};

const std::vector<Property>& suite_properties(const std::string& suite) {
  static const std::vector<Property> algebra = {
      {"multi_indices", prop_multi_indices},
      {"normalize_word", prop_normalize_word},
      {"sigma_sign", prop_sigma_sign},
      {"graded_commutativity", prop_graded_commutativity},
      {"partial_right_leibniz", prop_partial_right_leibniz},
      {"sign_bridge", prop_sign_bridge},
      {"leibniz_multi", prop_leibniz_multi},
      {"taylor_split", prop_taylor_split},
      {"sym_product", prop_sym_product},
      {"gram_matrix", prop_gram_matrix},
      {"section_degrees", prop_section_degrees},
  };
  static const std::vector<Property> diffop = {
      {"decomposition_roundtrip", prop_decomposition_roundtrip},
      {"iterated_leibniz", prop_iterated_leibniz},
      {"kmap_linearity", prop_kmap_linearity},
      {"compose", prop_compose},
      {"reduction_formula", prop_reduction_formula},
      {"flavor_relation", prop_flavor_relation},
      {"pullback", prop_pullback},
      {"dual_pairing", prop_dual_pairing},
      {"bracket_mult", prop_bracket_mult},
  };
  static const std::vector<Property> symbol = {
      {"symbol_surjectivity", prop_symbol_surjectivity},
      {"symbol_kernel", prop_symbol_kernel},
      {"sn_skew", prop_sn_skew},
      {"sn_leibniz", prop_sn_leibniz},
      {"sn_jacobi", prop_sn_jacobi},
      {"commutator_symbol", prop_commutator_symbol},
      {"atiyah_leibniz", prop_atiyah_leibniz},
      {"curvature", prop_curvature},
      {"i_embed_roundtrip", prop_i_embed_roundtrip},
      {"covariant_rules", prop_covariant_rules},
      {"scalar_symbol_display", prop_scalar_symbol_display},
  };
  static const std::vector<Property> jets = {
      {"jet_factorization", prop_jet_factorization},
      {"project_prolong", prop_project_prolong},
      {"transition_maps", prop_transition_maps},
      {"point_symbolic", prop_point_symbolic},
      {"same_jet_ideal", prop_same_jet_ideal},
      {"rank_accounting", prop_rank_accounting},
      {"allodd_stabilization", prop_allodd_stabilization},
      {"pushforward", prop_pushforward},
  };
  if (suite == "algebra") return algebra;
  if (suite == "diffop") return diffop;
  if (suite == "symbol") return symbol;
  if (suite == "jets") return jets;
  throw InputError("unknown suite: " + suite);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"algebra", "diffop", "symbol",
                                                 "jets"};
  return names;
}

CheckReport run_suite(const std::string& suite, std::uint64_t seed, long cases,
                      const CheckHooks& hooks) {
  const auto start = std::chrono::steady_clock::now();
  const auto& props = suite_properties(suite);
  CheckReport report;
  report.suite = suite;
  report.seed = seed;
  for (long i = 0; i < cases; ++i) {
    const auto& prop = props[std::size_t(i) % props.size()];
    // Per-case stream derived from the seed, suite and case index.
    std::uint64_t mix = seed;
    for (char c : suite) mix = mix * 1099511628211ULL + std::uint64_t(c);
    Rng rng(mix ^ (0x9e3779b97f4a7c15ULL * std::uint64_t(i + 1)));
    try {
      if (auto witness = prop.fn(rng, hooks))
        report.failures.push_back(CheckFailure{i, prop.name, *witness});
    } catch (const std::exception& err) {
      report.failures.push_back(
          CheckFailure{i, prop.name, std::string("exception: ") + err.what()});
    }
    ++report.cases_run;
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace gjet::checks
