#include "gjet/context.hpp"

#include <algorithm>
#include <set>

namespace gjet {

Context::Context(std::vector<Coordinate> coords) : coords_(std::move(coords)) {
  std::set<std::string> seen;
  for (const auto& c : coords_) {
    if (c.name.empty()) throw InputError("coordinate name must be non-empty");
    if (!seen.insert(c.name).second)
      throw InputError("duplicate coordinate name: " + c.name);
    if (c.degree > kMaxAbsDegree || c.degree < -kMaxAbsDegree)
      throw InputError("coordinate degree out of range: " + c.name);
  }
}

std::optional<std::size_t> Context::find(std::string_view name) const {
  for (std::size_t a = 0; a < coords_.size(); ++a)
    if (coords_[a].name == name) return a;
  return std::nullopt;
}

std::size_t Context::index_of(std::string_view name) const {
  if (auto a = find(name)) return *a;
  throw InputError("unknown coordinate: " + std::string(name));
}

bool operator==(const Context& a, const Context& b) {
  if (a.coords_.size() != b.coords_.size()) return false;
  for (std::size_t i = 0; i < a.coords_.size(); ++i)
    if (a.coords_[i].name != b.coords_[i].name ||
        a.coords_[i].degree != b.coords_[i].degree)
      return false;
  return true;
}

ContextPtr make_context(std::vector<Coordinate> coords) {
  return std::make_shared<const Context>(std::move(coords));
}

void require_same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !(*a == *b)) throw InputError("context mismatch");
}

MultiIndex::MultiIndex(std::vector<int> exponents) : exp_(std::move(exponents)) {
  for (int e : exp_)
    if (e < 0) throw InputError("multi-index exponents must be non-negative");
}

MultiIndex MultiIndex::zero(std::size_t n) {
  return MultiIndex(std::vector<int>(n, 0));
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t a) {
  std::vector<int> e(n, 0);
  e.at(a) = 1;
  return MultiIndex(std::move(e));
}

int MultiIndex::weight() const {
  int w = 0;
  for (int e : exp_) w += e;
  return w;
}

long MultiIndex::factorial() const {
  long f = 1;
  for (int e : exp_)
    for (int i = 2; i <= e; ++i) f *= i;
  return f;
}

int MultiIndex::z_degree(const Context& ctx) const {
  int d = 0;
  for (std::size_t a = 0; a < exp_.size(); ++a) d += exp_[a] * ctx.degree(a);
  return d;
}

bool MultiIndex::admissible(const Context& ctx) const {
  if (exp_.size() != ctx.dim()) return false;
  for (std::size_t a = 0; a < exp_.size(); ++a)
    if (ctx.is_odd(a) && exp_[a] > 1) return false;
  return true;
}

bool MultiIndex::is_zero() const {
  return std::all_of(exp_.begin(), exp_.end(), [](int e) { return e == 0; });
}

bool MultiIndex::leq(const MultiIndex& other) const {
  if (exp_.size() != other.exp_.size()) return false;
  for (std::size_t a = 0; a < exp_.size(); ++a)
    if (exp_[a] > other.exp_[a]) return false;
  return true;
}

MultiIndex MultiIndex::plus(std::size_t a) const {
  auto e = exp_;
  e.at(a) += 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::minus(std::size_t a) const {
  auto e = exp_;
  if (e.at(a) == 0) throw std::logic_error("multi-index underflow");
  e[a] -= 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
  auto e = exp_;
  for (std::size_t a = 0; a < e.size(); ++a) e[a] += other.exp_.at(a);
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::minus(const MultiIndex& other) const {
  auto e = exp_;
  for (std::size_t a = 0; a < e.size(); ++a) {
    e[a] -= other.exp_.at(a);
    if (e[a] < 0) throw std::logic_error("multi-index underflow");
  }
  return MultiIndex(std::move(e));
}

std::vector<std::size_t> MultiIndex::word_ascending() const {
  std::vector<std::size_t> w;
  for (std::size_t a = 0; a < exp_.size(); ++a)
    for (int i = 0; i < exp_[a]; ++i) w.push_back(a);
  return w;
}

std::vector<std::size_t> MultiIndex::word_descending() const {
  auto w = word_ascending();
  std::reverse(w.begin(), w.end());
  return w;
}

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long multi_binomial(const MultiIndex& I, const MultiIndex& K) {
  if (!K.leq(I)) throw InputError("multi_binomial requires K <= I");
  long r = 1;
  for (std::size_t a = 0; a < I.size(); ++a) r *= binomial(I[a], K[a]);
  return r;
}

namespace {

void enumerate_rec(const Context& ctx, std::size_t a, int remaining,
                   std::vector<int>& acc, std::vector<MultiIndex>& out) {
  if (a == ctx.dim()) {
    if (remaining == 0) out.emplace_back(acc);
    return;
  }
  const int cap = ctx.is_odd(a) ? std::min(1, remaining) : remaining;
  for (int e = 0; e <= cap; ++e) {
    acc[a] = e;
    enumerate_rec(ctx, a + 1, remaining - e, acc, out);
  }
  acc[a] = 0;
}

}  // namespace

std::vector<MultiIndex> multi_indices(const Context& ctx, int weight) {
  if (weight < 0) throw InputError("multi_indices: negative weight");
  std::vector<MultiIndex> out;
  std::vector<int> acc(ctx.dim(), 0);
  enumerate_rec(ctx, 0, weight, acc, out);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(const Context& ctx, int max_weight) {
  std::vector<MultiIndex> out;
  for (int j = 0; j <= max_weight; ++j) {
    auto layer = multi_indices(ctx, j);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::optional<NormalWord> normalize_word(const Context& ctx,
                                         std::span<const std::size_t> letters) {
  std::vector<std::size_t> w(letters.begin(), letters.end());
  for (std::size_t a : w)
    if (a >= ctx.dim()) throw InputError("word letter out of range");
  long swaps_odd_odd = 0;
  // Insertion sort, counting transpositions of two odd-degree letters.
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::size_t j = i;
    while (j > 0 && w[j - 1] > w[j]) {
      if (ctx.is_odd(w[j - 1]) && ctx.is_odd(w[j])) ++swaps_odd_odd;
      std::swap(w[j - 1], w[j]);
      --j;
    }
  }
  std::vector<int> exps(ctx.dim(), 0);
  for (std::size_t a : w) {
    exps[a] += 1;
    if (ctx.is_odd(a) && exps[a] > 1) return std::nullopt;
  }
  return NormalWord{sign_pow(swaps_odd_odd), MultiIndex(std::move(exps))};
}

int sigma_sign(const Context& ctx, const MultiIndex& I, const MultiIndex& K) {
  if (!K.leq(I)) throw InputError("sigma_sign requires K <= I");
  long sigma = 0;
  long prefix = 0;  // k_1 |z^1| + ... + k_{A-1} |z^{A-1}|
  for (std::size_t a = 0; a < I.size(); ++a) {
    if (a > 0) sigma += long(I[a] - K[a]) * ctx.degree(a) * prefix;
    prefix += long(K[a]) * ctx.degree(a);
  }
  return sign_pow(sigma);
}

namespace {

int cross_sign(const Context& ctx, const MultiIndex& I, const MultiIndex& J,
               bool left_greater) {
  long pairs = 0;
  for (std::size_t a = 0; a < I.size(); ++a) {
    if (!ctx.is_odd(a) || I[a] == 0) continue;
    for (std::size_t b = 0; b < J.size(); ++b) {
      if (!ctx.is_odd(b) || J[b] == 0) continue;
      const bool crosses = left_greater ? (a > b) : (a < b);
      if (crosses) pairs += long(I[a]) * J[b];
    }
  }
  return sign_pow(pairs);
}

}  // namespace

int merge_sign_ascending(const Context& ctx, const MultiIndex& I,
                         const MultiIndex& J) {
  return cross_sign(ctx, I, J, /*left_greater=*/true);
}

int merge_sign_descending(const Context& ctx, const MultiIndex& I,
                          const MultiIndex& J) {
  return cross_sign(ctx, I, J, /*left_greater=*/false);
}

}  // namespace gjet
