#include <doctest.h>

#include <set>

#include "helpers.hpp"

using namespace gjet;
using namespace testutil;

namespace {

std::set<std::vector<int>> as_set(const std::vector<MultiIndex>& v) {
  std::set<std::vector<int>> out;
  for (const auto& index : v) out.insert(index.exponents());
  return out;
}

}  // namespace

TEST_CASE("context validation") {
  CHECK_THROWS_AS(Context({{"x", 0}, {"x", 1}}), InputError);
  CHECK_THROWS_AS(Context({{"x", 100}}), InputError);
  CHECK_THROWS_AS(Context({{"", 0}}), InputError);
  const auto ctx = ctx_xthp();
  CHECK(ctx->dim() == 3);
  CHECK(ctx->is_odd(1));
  CHECK_FALSE(ctx->is_odd(2));
  CHECK(ctx->index_of("p") == 2);
  CHECK_THROWS_AS(ctx->index_of("q"), InputError);
}

TEST_CASE("multi_indices enumerates the capped compositions") {
  const auto ctx = ctx_xthp();
  CHECK(as_set(multi_indices(*ctx, 2)) ==
        std::set<std::vector<int>>{{2, 0, 0},
                                   {1, 1, 0},
                                   {1, 0, 1},
                                   {0, 1, 1},
                                   {0, 0, 2}});
  CHECK(as_set(multi_indices(*ctx, 0)) ==
        std::set<std::vector<int>>{{0, 0, 0}});
  CHECK(as_set(multi_indices(*ctx_th12(), 2)) ==
        std::set<std::vector<int>>{{1, 1}});
  CHECK(multi_indices(*ctx_th12(), 3).empty());
  // Range flag variant concatenates the weight layers.
  CHECK(multi_indices_up_to(*ctx_th12(), 2).size() == 4);
}

TEST_CASE("normalize_word sorts with Koszul signs") {
  const auto xtp = ctx_xthp();
  const std::vector<std::size_t> th_x{1, 0};
  const auto norm = normalize_word(*xtp, th_x);
  REQUIRE(norm.has_value());
  CHECK(norm->sign == 1);
  CHECK(norm->index == mi({1, 1, 0}));

  const std::vector<std::size_t> th_th{1, 1};
  CHECK_FALSE(normalize_word(*xtp, th_th).has_value());

  const auto tt = ctx_th12();
  const std::vector<std::size_t> th2_th1{1, 0};
  const auto swapped = normalize_word(*tt, th2_th1);
  REQUIRE(swapped.has_value());
  CHECK(swapped->sign == -1);
  CHECK(swapped->index == mi({1, 1}));
}

TEST_CASE("sigma_sign matches the displayed sum") {
  const auto xtp = ctx_xthp();
  CHECK(sigma_sign(*xtp, mi({0, 1, 1}), mi({0, 1, 0})) == 1);
  CHECK(sigma_sign(*xtp, mi({2, 1, 1}), mi({0, 0, 0})) == 1);
  CHECK(sigma_sign(*ctx_th12(), mi({1, 1}), mi({1, 0})) == -1);
  CHECK_THROWS_AS(sigma_sign(*xtp, mi({0, 1, 0}), mi({0, 1, 1})), InputError);
}

TEST_CASE("index arithmetic") {
  const auto xtp = ctx_xthp();
  const MultiIndex I = mi({2, 0, 0});
  CHECK(I.weight() == 2);
  CHECK(I.factorial() == 2);
  CHECK(I.z_degree(*xtp) == 0);
  CHECK(mi({1, 0, 1}).z_degree(*xtp) == 2);
  CHECK(multi_binomial(mi({2, 0, 0}), mi({1, 0, 0})) == 2);
  CHECK_THROWS_AS(multi_binomial(mi({1, 0, 0}), mi({2, 0, 0})), InputError);
}
