#include <doctest.h>

#include "helpers.hpp"

using namespace gjet;
using namespace testutil;

namespace {

DiffOp coordinate_derivative(const BundlePtr& bundle, std::size_t a) {
  // The operator d_a on a line bundle, as a frame operator.
  return DiffOp::frame_op(bundle,
                          MultiIndex::unit(bundle->context()->dim(), a), 0, 0);
}

}  // namespace

TEST_CASE("frame operators") {
  const auto ctx = ctx_xthp();
  const auto lb = line(ctx);
  const Poly x = Poly::coordinate(ctx, 0);
  const Poly th = Poly::coordinate(ctx, 1);

  const DiffOp p0 = DiffOp::frame_op(lb, mi({0, 0, 0}), 0, 0);
  const Section psi = (x * x + th) * Section::frame(lb, 0);
  CHECK(p0.apply(psi) == psi);

  const DiffOp dx = coordinate_derivative(lb, 0);
  CHECK(dx.apply((x * x) * Section::frame(lb, 0)) ==
        (Rational(2) * x) * Section::frame(lb, 0));
  CHECK(dx.degree() == 0);
  CHECK(coordinate_derivative(lb, 1).degree() == -1);

  // Off-diagonal order-0 frame operator on the rank-2 bundle:
  // P_0^{e0}_{e1}(psi) = (-1)^{|psi^0|} psi^0 e1.
  const auto b2 = rank2(ctx);
  const DiffOp swap = DiffOp::frame_op(b2, mi({0, 0, 0}), 0, 1);
  const Section arg = th * Section::frame(b2, 0) + x * Section::frame(b2, 1);
  const Section got = swap.apply(arg);
  CHECK(got.component(0).is_zero());
  CHECK(got.component(1) == Rational(-1) * th);
}

TEST_CASE("multiplication operators and brackets") {
  const auto ctx = ctx_xthp();
  const auto lb = line(ctx);
  const Poly x = Poly::coordinate(ctx, 0);
  const Poly th = Poly::coordinate(ctx, 1);
  CHECK_THROWS_AS(DiffOp::multiplication(lb, x + th), InputError);

  const DiffOp lam_x = DiffOp::multiplication(lb, x);
  const Section psi = (x * th) * Section::frame(lb, 0);
  CHECK(lam_x.apply(psi) == x * psi);

  // P_{(0,1,0)} strips the odd coordinate: (x th) e -> x e.
  const DiffOp dth = coordinate_derivative(lb, 1);
  CHECK(dth.apply(psi) == x * Section::frame(lb, 0));

  const DiffOp identity = DiffOp::frame_op(lb, mi({0, 0, 0}), 0, 0);
  CHECK(bracket_mult(coordinate_derivative(lb, 0), x) == identity);
  CHECK(bracket_mult(DiffOp::multiplication(lb, th), x).is_zero());
  CHECK(bracket_mult(coordinate_derivative(lb, 1), th) == identity);
}

TEST_CASE("iterated brackets") {
  const auto ctx = ctx_xthp();
  const auto lb = line(ctx);
  const Poly x = Poly::coordinate(ctx, 0);
  const Poly th = Poly::coordinate(ctx, 1);
  const DiffOp dx = coordinate_derivative(lb, 0);

  // A (k+1)-tuple annihilates an order-k operator.
  const std::vector<Poly> pair{x, x};
  CHECK(iterated_bracket(dx, pair, BracketFlavor::Left).is_zero());

  // Graded symmetry of the right-nested flavor.
  const DiffOp d2 = compose(dx, coordinate_derivative(lb, 1));
  const std::vector<Poly> fg{x, th};
  const std::vector<Poly> gf{th, x};
  CHECK(iterated_bracket(d2, fg, BracketFlavor::Right) ==
        iterated_bracket(d2, gf, BracketFlavor::Right));

  // Odd-odd arguments anticommute.
  const auto tt = ctx_th12();
  const auto lb2 = line(tt);
  const DiffOp d22 = compose(DiffOp::frame_op(lb2, mi({1, 0}), 0, 0),
                             DiffOp::frame_op(lb2, mi({0, 1}), 0, 0));
  const std::vector<Poly> t12{Poly::coordinate(tt, 0), Poly::coordinate(tt, 1)};
  const std::vector<Poly> t21{Poly::coordinate(tt, 1), Poly::coordinate(tt, 0)};
  CHECK(iterated_bracket(d22, t12, BracketFlavor::Right) ==
        Rational(-1) * iterated_bracket(d22, t21, BracketFlavor::Right));

  // Flavor relation D^{(j)} = (-1)^{j + |D| sum|f|} olD^{(j)}.
  const DiffOp left = iterated_bracket(dx, std::vector<Poly>{th},
                                       BracketFlavor::Left);
  const DiffOp right = iterated_bracket(dx, std::vector<Poly>{th},
                                        BracketFlavor::Right);
  CHECK(left == Rational(-1) * right);
}

TEST_CASE("extraction") {
  const auto ctx = ctx_xthp();
  const auto lb = line(ctx);
  const Poly x = Poly::coordinate(ctx, 0);
  const Poly f = x * x + Poly::constant(ctx, Rational(1, 2));

  // Multiplication operator at k = 0.
  LinearOracle mult{lb, 0, [&](const Section& s) { return f * s; }};
  const DiffOp m = extract_or_throw(mult, 0);
  CHECK(m.coeff(mi({0, 0, 0}), 0, 0) == f);

  // d_x at k = 1.
  const DiffOp dx = coordinate_derivative(lb, 0);
  LinearOracle dxo{lb, 0, [&](const Section& s) { return dx.apply(s); }};
  const DiffOp got = extract_or_throw(dxo, 1);
  CHECK(got == dx);
  CHECK(got.coeff(mi({1, 0, 0}), 0, 0) == con(ctx, 1));
  CHECK(got.coeff(mi({0, 0, 0}), 0, 0).is_zero());

  // d_x o d_x declared at k = 1 must report an order violation.
  LinearOracle too_low{lb, 0, [&](const Section& s) {
                         return dx.apply(dx.apply(s));
                       }};
  const auto r = extract_coeffs(too_low, 1);
  REQUIRE(std::holds_alternative<ExtractFailure>(r));
  CHECK(std::get<ExtractFailure>(r).kind ==
        ExtractFailure::Kind::OrderViolation);
}

TEST_CASE("composition and commutators") {
  const auto ctx = ctx_xthp();
  const auto lb = line(ctx);
  const Poly x = Poly::coordinate(ctx, 0);
  const DiffOp dx = coordinate_derivative(lb, 0);

  const DiffOp dxdx = compose(dx, dx);
  CHECK(dxdx.coeff(mi({2, 0, 0}), 0, 0) == con(ctx, 2));
  CHECK(dxdx.effective_order() == 2);
  CHECK_THROWS_AS(dxdx.at_order(1), InputError);

  const Poly th = Poly::coordinate(ctx, 1);
  CHECK(commutator(DiffOp::multiplication(lb, x),
                   DiffOp::multiplication(lb, th))
            .is_zero());

  const DiffOp x_dx = x * dx;
  CHECK(commutator(dx, compose(x_dx, con(ctx, 1) * dx) /*x dx dx*/)
            .effective_order() <= 2);
  const DiffOp c = commutator(dx, compose(DiffOp::multiplication(lb, x), dx));
  CHECK(c == dx);
  CHECK(c.effective_order() == 1);
}

TEST_CASE("dual pairing") {
  const auto ctx = ctx_xthp();
  const auto lb = line(ctx);
  CHECK(dual_pairing(lb, mi({1, 0, 0}), 0, 0, mi({1, 0, 0}), 0, 0) ==
        Rational(1));
  CHECK(dual_pairing(lb, mi({2, 0, 0}), 0, 0, mi({2, 0, 0}), 0, 0) ==
        Rational(2));
  CHECK(dual_pairing(lb, mi({1, 0, 0}), 0, 0, mi({0, 1, 0}), 0, 0) ==
        Rational(0));
  // Fiber deltas on the rank-2 bundle.
  const auto b2 = rank2(ctx);
  CHECK(dual_pairing(b2, mi({0, 0, 0}), 0, 1, mi({0, 0, 0}), 1, 0) ==
        Rational(1));
  CHECK(dual_pairing(b2, mi({0, 0, 0}), 0, 0, mi({0, 0, 0}), 1, 0) ==
        Rational(0));
}

TEST_CASE("operator rank tables") {
  const auto lb = line(ctx_xthp());
  const auto rk = diff_rank(*lb, 1);
  CHECK(rk == std::map<int, long>{{0, 2}, {-1, 1}, {-2, 1}});

  // k = 0 counts fiber-degree differences only.
  const auto b2 = rank2(ctx_xthp());
  CHECK(diff_rank(*b2, 0) == std::map<int, long>{{-1, 1}, {0, 2}, {1, 1}});

  // Ordinary case: total rank r binom(n+k, k) concentrated in degree 0.
  const auto flat = line(ctx_xy());
  CHECK(diff_rank(*flat, 2) == std::map<int, long>{{0, 6}});
}

TEST_CASE("operator pullback") {
  const auto ctx = ctx_xthp();
  const auto lb = line(ctx);
  const Poly x = Poly::coordinate(ctx, 0);
  const Poly g = x * x;
  const DiffOp dx = coordinate_derivative(lb, 0);

  CHECK(op_pullback(BundleMap::identity(lb), dx) == dx);

  const DiffOp pulled = op_pullback(BundleMap::scalar(lb, g), dx);
  const Section psi = (x * x * x) * Section::frame(lb, 0);
  CHECK(pulled.apply(psi) == dx.apply(g * psi));
  CHECK(pulled.degree() == dx.degree() + 0);

  const DiffOp shifted =
      op_pullback(BundleMap::scalar(lb, Poly::coordinate(ctx, 1)), dx);
  CHECK(shifted.degree() == 1 + dx.degree());
}
