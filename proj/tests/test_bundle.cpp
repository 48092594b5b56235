#include <doctest.h>

#include "helpers.hpp"

using namespace gjet;
using namespace testutil;

TEST_CASE("module action on sections") {
  const auto ctx = ctx_xthp();
  const auto b2 = rank2(ctx);
  const Poly x = Poly::coordinate(ctx, 0);
  const Poly th = Poly::coordinate(ctx, 1);

  const Section psi = th * Section::frame(b2, 0);
  CHECK(section_action(con(ctx, 1), psi) == psi);
  CHECK(section_action(th, psi).is_zero());
  CHECK(section_action(x, Section::frame(b2, 1)) ==
        x * Section::frame(b2, 1));
  CHECK(psi.homogeneous_degree() == 1);
}

TEST_CASE("frame pairing") {
  const auto ctx = ctx_xthp();
  const auto pair_at = [&](const MultiIndex& I, const MultiIndex& J) {
    return sym_pair(SymTensor::frame(ctx, I, Variance::Form),
                    SymTensor::frame(ctx, J, Variance::Multivector));
  };
  CHECK(pair_at(mi({1, 1, 0}), mi({1, 1, 0})) == con(ctx, 1));
  CHECK(pair_at(mi({2, 0, 0}), mi({2, 0, 0})) == con(ctx, 2));
  CHECK(pair_at(mi({1, 1, 0}), mi({1, 0, 1})).is_zero());
  CHECK_THROWS_AS(
      sym_pair(SymTensor::frame(ctx, mi({1, 0, 0}), Variance::Form),
               SymTensor::frame(ctx, mi({2, 0, 0}), Variance::Multivector)),
      InputError);
}

TEST_CASE("symmetric product") {
  const auto ctx = ctx_xthp();
  const SymTensor dx = SymTensor::coordinate_form(ctx, 0);
  const SymTensor dth = SymTensor::coordinate_form(ctx, 1);
  CHECK(sym_product(dth, dth).is_zero());
  CHECK(sym_product(dx, dth) == sym_product(dth, dx));
  CHECK(sym_product(dx, sym_product(dx, dth)).arity() == 3);
  CHECK_THROWS_AS(
      sym_product(dx, SymTensor::coordinate_field(ctx, 0)), InputError);
}

TEST_CASE("interior product") {
  const auto ctx = ctx_xthp();
  const SymTensor dx = SymTensor::coordinate_form(ctx, 0);
  const SymTensor dth = SymTensor::coordinate_form(ctx, 1);
  const SymTensor ddx = SymTensor::coordinate_field(ctx, 0);
  CHECK(interior(dx, ddx) ==
        SymTensor::scalar(ctx, con(ctx, 1), Variance::Multivector));
  CHECK(interior(dx, sym_product(ddx, ddx)) == Rational(2) * ddx);
  CHECK(interior(dth, ddx).is_zero());
  CHECK_THROWS_AS(interior(dx, dx), InputError);
  CHECK_THROWS_AS(
      interior(dx, SymTensor::scalar(ctx, con(ctx, 1), Variance::Multivector)),
      InputError);
}

TEST_CASE("bundle maps") {
  const auto ctx = ctx_xthp();
  const auto b2 = rank2(ctx);
  const Poly x = Poly::coordinate(ctx, 0);
  const BundleMap id = BundleMap::identity(b2);
  const Section psi = x * Section::frame(b2, 0) +
                      (x * x) * Section::frame(b2, 1);
  CHECK(id.apply(psi) == psi);
  const BundleMap lg = BundleMap::scalar(b2, x);
  CHECK(lg.apply(psi) == x * psi);
  CHECK(lg.compose(id).apply(psi) == x * psi);
  // Entries must be homogeneous of degree |F| + |th_lam| - |th_kap|.
  BundleMap f(b2, b2, 0);
  CHECK_THROWS_AS(f.set_entry(1, 0, x), InputError);
}
