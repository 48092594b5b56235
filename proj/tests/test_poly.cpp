#include <doctest.h>

#include "helpers.hpp"

using namespace gjet;
using namespace testutil;

TEST_CASE("graded product") {
  const auto ctx = ctx_xthp();
  const Poly x = Poly::coordinate(ctx, 0);
  const Poly th = Poly::coordinate(ctx, 1);
  const Poly p = Poly::coordinate(ctx, 2);
  CHECK(((x * th) * th).is_zero());
  CHECK(p * th == mono(ctx, {0, 1, 1}, 1));  // Koszul sign (-1)^{2*1} = +1
  CHECK(p * th == th * p);

  const auto tt = ctx_th12();
  const Poly t1 = Poly::coordinate(tt, 0);
  const Poly t2 = Poly::coordinate(tt, 1);
  CHECK(t2 * t1 == mono(tt, {1, 1}, -1));
  CHECK_THROWS_AS(x * t1, InputError);
}

TEST_CASE("left and right partial derivatives") {
  const auto ctx = ctx_xthp();
  const Poly x = Poly::coordinate(ctx, 0);
  const Poly th = Poly::coordinate(ctx, 1);
  const Poly xth = x * th;
  CHECK(xth.partial_left(1) == x);
  CHECK((x * x).partial_left(0) == Rational(2) * x);
  CHECK(Poly::coordinate(ctx, 2).partial_left(1).is_zero());

  CHECK(xth.partial_right(1) == x);
  CHECK((x * x).partial_right(0) == Rational(2) * x);
  // d<_A(z^B) = delta^B_A on every corpus context.
  for (const auto& ctx2 : {ctx_xthp(), ctx_th12(), ctx_xtheta(), ctx_xy()}) {
    for (std::size_t a = 0; a < ctx2->dim(); ++a)
      for (std::size_t b = 0; b < ctx2->dim(); ++b) {
        const Poly zb = Poly::coordinate(ctx2, b);
        const Poly want = a == b ? con(ctx2, 1) : Poly(ctx2);
        CHECK(zb.partial_right(a) == want);
      }
  }
}

TEST_CASE("multi-index derivative operator") {
  const auto ctx = ctx_xthp();
  // d^op_I(z^J) = I! delta_I^J on low weights (full sweep in acceptance).
  for (const auto& I : multi_indices_up_to(*ctx, 3))
    for (const auto& J : multi_indices_up_to(*ctx, 3)) {
      if (J.weight() > I.weight()) continue;
      const Poly zJ = Poly::monomial(ctx, J, Rational(1));
      Poly want(ctx);
      if (I == J) want = Rational(I.factorial()) * con(ctx, 1);
      CHECK(zJ.partial_multi_op(I) == want);
    }
  const Poly xth = Poly::coordinate(ctx, 0) * Poly::coordinate(ctx, 1);
  CHECK(xth.partial_multi_op(mi({1, 1, 0})) == con(ctx, 1));
  CHECK(Poly::coordinate(ctx, 0).partial_multi_op(mi({0, 1, 0})).is_zero());
}

TEST_CASE("multi-index Leibniz expansion") {
  const auto ctx = ctx_xthp();
  const Poly x = Poly::coordinate(ctx, 0);
  const Poly th = Poly::coordinate(ctx, 1);
  CHECK(leibniz_multi(mi({1, 0, 0}), x, x) == Rational(2) * x);
  CHECK(leibniz_multi(mi({0, 0, 0}), th, x) == th * x);
  CHECK(leibniz_multi(mi({1, 1, 0}), th, x) ==
        (th * x).partial_multi_op(mi({1, 1, 0})));
}

TEST_CASE("body evaluation") {
  const auto ctx = ctx_xthp();
  const Poly f = mono(ctx, {2, 0, 0}, 1) + mono(ctx, {0, 1, 1}, 1);
  CHECK(f.body_at(pt({{"x", 3}})) == Rational(9));
  CHECK(Poly::coordinate(ctx, 1).body_at(pt({{"x", 7}})) == Rational(0));
  CHECK(con(ctx, 5).body_at(pt({})) == Rational(5));
  CHECK_THROWS_AS(f.body_at(pt({{"th", 1}})), InputError);
  CHECK_THROWS_AS(f.body_at(pt({{"z", 1}})), InputError);
}

TEST_CASE("taylor split") {
  const auto ctx = ctx_xthp();
  const Poly x = Poly::coordinate(ctx, 0);
  const Poly th = Poly::coordinate(ctx, 1);
  const Point a = pt({{"x", 1}});

  const auto [t1, r1] = (x * x).taylor_split(a, 1);
  CHECK(t1 == Rational(2) * x - con(ctx, 1));  // 1 + 2(x-1)
  const Poly shifted = x - con(ctx, 1);
  CHECK(r1 == shifted * shifted);

  const auto [t2, r2] = (x * x).taylor_split(a, 5);
  CHECK(r2.is_zero());
  CHECK(t2 == x * x);

  const auto [t3, r3] = th.taylor_split(a, 0);
  CHECK(t3.is_zero());
  CHECK(r3 == th);
}

TEST_CASE("printing is canonical") {
  const auto ctx = ctx_xthp();
  const Poly f = mono(ctx, {2, 0, 0}, 1) + mono(ctx, {0, 1, 1}, -3, 2);
  CHECK(f.str() == "-3/2*th*p + x^2");
  CHECK(Poly(ctx).str() == "0");
}
