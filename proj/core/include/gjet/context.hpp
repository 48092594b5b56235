#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gjet {

/// Raised on malformed user input (bad names, degrees out of range, schema
/// violations). The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Coordinate {
  std::string name;
  int degree = 0;
};

/// An ordered list of graded coordinates. The declaration order is canonical
/// and fixes every normal form downstream (monomials, multi-index
/// enumeration, all Koszul signs).
class Context {
 public:
  /// Degrees beyond this bound are rejected to keep degree sums far from
  /// integer overflow.
  static constexpr int kMaxAbsDegree = 64;

  explicit Context(std::vector<Coordinate> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  int degree(std::size_t a) const { return coords_.at(a).degree; }
  const std::string& name(std::size_t a) const { return coords_.at(a).name; }
  bool is_odd(std::size_t a) const { return degree(a) % 2 != 0; }
  const std::vector<Coordinate>& coords() const noexcept { return coords_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws InputError

  friend bool operator==(const Context& a, const Context& b);

 private:
  std::vector<Coordinate> coords_;
};

using ContextPtr = std::shared_ptr<const Context>;

ContextPtr make_context(std::vector<Coordinate> coords);

/// Two values over possibly distinct Context objects are compatible when the
/// contexts compare equal; operations requiring this throw otherwise.
void require_same_context(const ContextPtr& a, const ContextPtr& b);

/// Exponent tuple over a context, capped at 1 on odd-degree coordinates
/// (membership in the admissible set is checked via admissible()).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  static MultiIndex zero(std::size_t n);
  static MultiIndex unit(std::size_t n, std::size_t a);

  std::size_t size() const noexcept { return exp_.size(); }
  int operator[](std::size_t a) const { return exp_[a]; }
  const std::vector<int>& exponents() const noexcept { return exp_; }

  int weight() const;           // w(I)
  long factorial() const;       // I!
  int z_degree(const Context& ctx) const;  // |z^I|
  bool admissible(const Context& ctx) const;
  bool is_zero() const;
  bool leq(const MultiIndex& other) const;  // componentwise

  MultiIndex plus(std::size_t a) const;
  MultiIndex minus(std::size_t a) const;
  MultiIndex plus(const MultiIndex& other) const;
  MultiIndex minus(const MultiIndex& other) const;

  /// Letters in ascending coordinate order, each repeated by its exponent.
  std::vector<std::size_t> word_ascending() const;
  /// Letters in descending coordinate order.
  std::vector<std::size_t> word_descending() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> exp_;
};

long binomial(long n, long k);
/// Product of per-coordinate binomials binom(i_A, k_A); requires K <= I.
long multi_binomial(const MultiIndex& I, const MultiIndex& K);

/// All admissible multi-indices of the given weight, ascending lexicographic.
std::vector<MultiIndex> multi_indices(const Context& ctx, int weight);
/// Weights 0..max_weight, grouped by weight, ascending lexicographic within.
std::vector<MultiIndex> multi_indices_up_to(const Context& ctx, int max_weight);

/// Result of sorting a word of coordinate letters into context order.
struct NormalWord {
  int sign = 1;  // +1 or -1
  MultiIndex index;
};

/// Sorts the word into ascending coordinate order, accumulating (-1)^{d1 d2}
/// per transposition. Returns nullopt when an odd-degree letter repeats.
std::optional<NormalWord> normalize_word(const Context& ctx,
                                         std::span<const std::size_t> letters);

/// The sign (-1)^{sigma(I,K)} appearing in the multi-index Leibniz rule,
/// with sigma(I,K) = sum_{A>=2} (i_A-k_A)|z^A| (k_1|z^1|+...+k_{A-1}|z^{A-1}|).
/// Requires K <= I componentwise.
int sigma_sign(const Context& ctx, const MultiIndex& I, const MultiIndex& K);

/// Sign of z^I * z^J = sign * z^{I+J} for admissible I+J: the parity of odd
/// letter pairs that must cross when the concatenated ascending words merge.
int merge_sign_ascending(const Context& ctx, const MultiIndex& I,
                         const MultiIndex& J);
/// Same for descending words (the multivector frame order).
int merge_sign_descending(const Context& ctx, const MultiIndex& I,
                          const MultiIndex& J);

inline bool parity(long v) { return (v % 2) != 0; }
inline int sign_pow(long exponent) { return parity(exponent) ? -1 : 1; }

}  // namespace gjet
