// Acceptance suite: one criterion per line, exact (rational) equality
// throughout, each criterion bounded by its time budget. The CLI binary path
// is taken from argv[1] for the determinism criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "gjet/checks.hpp"
#include "gjet/json_io.hpp"

using namespace gjet;
using checks::Rng;

namespace {

std::string g_cli_path;

std::vector<ContextPtr> corpus_contexts() {
  return {
      make_context({{"x", 0}}),
      make_context({{"x", 0}, {"th", 1}}),
      make_context({{"x", 0}, {"th", 1}, {"p", 2}}),
      make_context({{"th1", 1}, {"th2", 1}}),
      make_context({{"x", 0}, {"th", 1}, {"eta", -1}}),
      make_context({{"x", 0}, {"y", 0}}),
  };
}

std::vector<BundlePtr> corpus_bundles() {
  std::vector<BundlePtr> out;
  for (const auto& ctx : corpus_contexts()) {
    out.push_back(make_bundle(ctx, {{"e", 0}}));
    out.push_back(make_bundle(ctx, {{"e0", 0}, {"e1", 1}}));
  }
  return out;
}

using Witness = std::optional<std::string>;

Witness ok() { return std::nullopt; }

// 1. d^op_I(z^J) = I! delta_I^J, all I, J with w <= 4 over the corpus.
Witness criterion_partial_op() {
  for (const auto& ctx : corpus_contexts()) {
    for (const auto& I : multi_indices_up_to(*ctx, 4))
      for (const auto& J : multi_indices_up_to(*ctx, 4)) {
        if (J.weight() > I.weight()) continue;
        const Poly got =
            Poly::monomial(ctx, J, Rational(1)).partial_multi_op(I);
        Poly want(ctx);
        if (I == J)
          want = Poly::constant(ctx, Rational(I.factorial()));
        if (!(got == want))
          return "d^op identity failed on " + ctx->name(0) + "-context";
      }
  }
  return ok();
}

// 2. Multi-index Leibniz vs brute-force differentiation, 200 seeded cases.
Witness criterion_leibniz() {
  Rng rng(2);
  const auto contexts = corpus_contexts();
  for (int c = 0; c < 200; ++c) {
    const auto& ctx = contexts[std::size_t(c) % contexts.size()];
    const Poly f = checks::random_homogeneous_poly(rng, ctx, 3);
    const Poly g = checks::random_homogeneous_poly(rng, ctx, 3);
    std::vector<int> iv(ctx->dim(), 0);
    int budget = int(rng.uniform(0, 3));
    for (std::size_t a = 0; a < ctx->dim() && budget > 0; ++a) {
      const int e = int(rng.uniform(0, ctx->is_odd(a) ? 1 : budget));
      iv[a] = e;
      budget -= e;
    }
    const MultiIndex I(iv);
    if (!(leibniz_multi(I, f, g) == (f * g).partial_multi_op(I)))
      return "Leibniz expansion failed at case " + std::to_string(c);
  }
  return ok();
}

// 3. Decomposition round-trip on 100 seeded random operators per bundle
//    shape, orders <= 3.
Witness criterion_decomposition() {
  Rng rng(3);
  const auto contexts = corpus_contexts();
  for (int shape = 0; shape < 2; ++shape) {
    for (int c = 0; c < 100; ++c) {
      const auto& ctx = contexts[std::size_t(c) % contexts.size()];
      const BundlePtr bundle =
          shape == 0
              ? make_bundle(ctx, {{"e", 0}})
              : make_bundle(ctx, {{"e0", 0}, {"e1", 1}});
      const int k = int(rng.uniform(0, 3));
      const DiffOp d = checks::random_operator(rng, bundle, k);
      auto r = extract_coeffs(as_oracle(d), k);
      if (std::holds_alternative<ExtractFailure>(r))
        return "extraction failed at case " + std::to_string(c) + ": " +
               std::get<ExtractFailure>(r).witness;
      if (!(std::get<DiffOp>(r) == d))
        return "round-trip mismatch at case " + std::to_string(c);
    }
  }
  return ok();
}

// 4. Dual pairing K^J(P_I^lam_mu) = J! ddd, all combinations with w <= 2.
Witness criterion_dual_pairing() {
  for (const auto& bundle : corpus_bundles()) {
    const auto indices = multi_indices_up_to(*bundle->context(), 2);
    for (const auto& J : indices)
      for (const auto& I : indices)
        for (std::size_t kap = 0; kap < bundle->rank(); ++kap)
          for (std::size_t rho = 0; rho < bundle->rank(); ++rho)
            for (std::size_t lam = 0; lam < bundle->rank(); ++lam)
              for (std::size_t mu = 0; mu < bundle->rank(); ++mu) {
                const Rational got =
                    dual_pairing(bundle, J, kap, rho, I, lam, mu);
                const Rational want = (J == I && kap == mu && lam == rho)
                                          ? Rational(J.factorial())
                                          : Rational(0);
                if (got != want) return std::string("dual pairing mismatch");
              }
  }
  return ok();
}

// 5. Symbol kernel and surjectivity round-trip, k <= 2.
Witness criterion_symbol() {
  Rng rng(5);
  for (const auto& bundle : corpus_bundles()) {
    for (int k = 1; k <= 3; ++k) {
      const DiffOp low =
          checks::random_operator(rng, bundle, k - 1).at_order(k);
      if (!symbol_of(low).is_zero())
        return "symbol of a lower-order operator did not vanish";
    }
    for (int k = 0; k <= 2; ++k) {
      const DiffOp d = checks::random_operator(rng, bundle, k);
      const bool low = d.effective_order() <= k - 1;
      if (symbol_of(d).is_zero() != low)
        return "symbol kernel is not exactly Dif^{k-1}";
      const SymbolMap F = symbol_of(d);
      if (!(symbol_of(operator_with_symbol(F)) == F))
        return "symbol surjectivity round-trip failed";
    }
  }
  return ok();
}

// 6. SN bracket skew-symmetry, product-Leibniz and Jacobi, 100 seeded
//    random triples of arity <= 2.
Witness criterion_sn_bracket() {
  Rng rng(6);
  const auto contexts = corpus_contexts();
  for (int c = 0; c < 100; ++c) {
    const auto& ctx = contexts[std::size_t(c) % contexts.size()];
    const SymTensor X =
        checks::random_multivector(rng, ctx, int(rng.uniform(0, 2)));
    const SymTensor Y =
        checks::random_multivector(rng, ctx, int(rng.uniform(0, 2)));
    const SymTensor Z =
        checks::random_multivector(rng, ctx, int(rng.uniform(0, 2)));
    for (const auto& [dx, xp] : X.homogeneous_parts())
      for (const auto& [dy, yp] : Y.homogeneous_parts())
        for (const auto& [dz, zp] : Z.homogeneous_parts()) {
          const int sxy = sign_pow(long(dx) * dy);
          if (!(sn_bracket(xp, yp) ==
                Rational(-sxy) * sn_bracket(yp, xp)))
            return "SN skew-symmetry failed at case " + std::to_string(c);
          if (!(sn_bracket(xp, sym_product(yp, zp)) ==
                sym_product(sn_bracket(xp, yp), zp) +
                    Rational(sxy) * sym_product(yp, sn_bracket(xp, zp))))
            return "SN product-Leibniz failed at case " + std::to_string(c);
          if (!(sn_bracket(xp, sn_bracket(yp, zp)) ==
                sn_bracket(sn_bracket(xp, yp), zp) +
                    Rational(sxy) * sn_bracket(yp, sn_bracket(xp, zp))))
            return "SN Jacobi failed at case " + std::to_string(c);
        }
  }
  return ok();
}

// 7. Commutator-symbol theorem on 100 seeded scalar-symbol pairs with
//    k+m <= 3, including the worked pair (x d_x, d_x) -> -d_x.
Witness criterion_commutator_symbol() {
  const auto ctx = make_context({{"x", 0}, {"th", 1}, {"p", 2}});
  const auto lb = make_bundle(ctx, {{"e", 0}});
  const Poly x = Poly::coordinate(ctx, 0);
  const DiffOp dx = DiffOp::frame_op(lb, MultiIndex::unit(3, 0), 0, 0);
  const auto worked = commutator_symbol_check(x * dx, dx);
  if (!(worked.commutator == Rational(-1) * dx) ||
      !(worked.lhs == worked.rhs) ||
      !(worked.lhs == Rational(-1) * SymTensor::coordinate_field(ctx, 0)))
    return std::string("worked pair (x d_x, d_x) -> -d_x failed");

  Rng rng(7);
  const auto bundles = corpus_bundles();
  for (int c = 0; c < 100; ++c) {
    const auto& bundle = bundles[std::size_t(c) % bundles.size()];
    const int k = int(rng.uniform(0, 2));
    const int m = int(rng.uniform(0, std::min(2L, 3L - k)));
    const DiffOp d = checks::random_scalar_symbol_operator(rng, bundle, k);
    const DiffOp e = checks::random_scalar_symbol_operator(rng, bundle, m);
    const auto result = commutator_symbol_check(d, e);
    if (!(result.lhs == result.rhs))
      return "commutator-symbol equality failed at case " + std::to_string(c);
    if (result.commutator.effective_order() > k + m - 1)
      return "commutator order bound failed at case " + std::to_string(c);
  }
  return ok();
}

// 8. Atiyah Leibniz identity, curvature order-0 certificate and the worked
//    curvature value R(d_th, d_eta) = 2 id on (x:0, th:1, eta:-1).
Witness criterion_atiyah_curvature() {
  const auto ctx = make_context({{"x", 0}, {"th", 1}, {"eta", -1}});
  const auto lb = make_bundle(ctx, {{"e", 0}});
  Connection conn(lb);
  conn.set_gamma(1, 0, 0, Poly::coordinate(ctx, 2));
  conn.set_gamma(2, 0, 0, Poly::coordinate(ctx, 1));
  const DiffOp R = curvature(conn, SymTensor::coordinate_field(ctx, 1),
                             SymTensor::coordinate_field(ctx, 2));
  if (!(R == Rational(2) *
                DiffOp::frame_op(lb, MultiIndex::zero(3), 0, 0)))
    return std::string("worked curvature R(d_th, d_eta) != 2 id");
  if (!curvature(conn, SymTensor::coordinate_field(ctx, 0),
                 SymTensor::coordinate_field(ctx, 1))
           .is_zero())
    return std::string("worked curvature R(d_x, d_th) != 0");

  Rng rng(8);
  const auto bundles = corpus_bundles();
  for (int c = 0; c < 40; ++c) {
    const auto& bundle = bundles[std::size_t(c) % bundles.size()];
    const auto& bctx = bundle->context();
    // Atiyah graded Leibniz rule on scalar-symbol first-order operators.
    const DiffOp d = checks::random_scalar_symbol_operator(rng, bundle, 1);
    const DiffOp e = checks::random_scalar_symbol_operator(rng, bundle, 1);
    const Poly f = checks::random_homogeneous_poly(rng, bctx, 2);
    if (!f.is_zero()) {
      const auto X = scalar_symbol(d);
      if (!X) return std::string("scalar-symbol generation failed");
      const DiffOp lhs = commutator(d, f * e);
      DiffOp rhs =
          Rational(sign_pow(long(d.degree()) * *f.homogeneous_degree())) *
          (f * commutator(d, e));
      const Poly xf = vf_action(*X, f);
      if (!xf.is_zero()) rhs += xf * e;
      if (!(lhs == rhs))
        return "Atiyah Leibniz failed at case " + std::to_string(c);
    }
    // Curvature certificate: order 0, annihilated by every [., lambda_g].
    const Connection rc = checks::random_connection(rng, bundle);
    const std::size_t a = std::size_t(rng.uniform(0, long(bctx->dim()) - 1));
    const std::size_t b = std::size_t(rng.uniform(0, long(bctx->dim()) - 1));
    const DiffOp Rab = curvature(rc, SymTensor::coordinate_field(bctx, a),
                                 SymTensor::coordinate_field(bctx, b));
    const Poly g = checks::random_homogeneous_poly(rng, bctx, 2);
    if (!g.is_zero() && !bracket_mult(Rab, g).is_zero())
      return "curvature order-0 certificate failed at case " +
             std::to_string(c);
  }
  return ok();
}

// 9. Jet factorization on 200 seeded (D, psi, k <= 3).
Witness criterion_jet_factorization() {
  Rng rng(9);
  const auto bundles = corpus_bundles();
  for (int c = 0; c < 200; ++c) {
    const auto& bundle = bundles[std::size_t(c) % bundles.size()];
    const int k = int(rng.uniform(0, 3));
    const DiffOp d =
        checks::random_operator(rng, bundle, int(rng.uniform(0, k)));
    const Section psi = checks::random_section(rng, bundle, 3);
    if (!(operator_on_jet(d, prolong(psi, k)) == d.apply(psi)))
      return "jet factorization failed at case " + std::to_string(c);
  }
  return ok();
}

// 10. Projection identities, k <= 3.
Witness criterion_projections() {
  Rng rng(10);
  const auto bundles = corpus_bundles();
  for (int c = 0; c < 60; ++c) {
    const auto& bundle = bundles[std::size_t(c) % bundles.size()];
    const int k = int(rng.uniform(0, 3));
    const int l = int(rng.uniform(0, k));
    const int q = int(rng.uniform(0, l));
    const Section psi = checks::random_section(rng, bundle, 3);
    const JetVector jet = prolong(psi, k);
    if (!(project(jet, l) == prolong(psi, l)))
      return "pi o prolong failed at case " + std::to_string(c);
    if (!(project(jet, k) == jet))
      return "pi^{k,k} != id at case " + std::to_string(c);
    if (!(project(project(jet, l), q) == project(jet, q)))
      return "transition composition failed at case " + std::to_string(c);
  }
  return ok();
}

// 11. Rank accounting: brute-force q_j and l_j, SES additivity, ordinary
//     totals r binom(n+k, k).
Witness criterion_ranks() {
  for (const auto& bundle : corpus_bundles()) {
    for (int k = 0; k <= 3; ++k) {
      // Independent odometer enumeration of both tables.
      const Context& ctx = *bundle->context();
      std::map<int, long> qj, lj;
      std::vector<int> e(ctx.dim(), 0);
      const auto cap = [&](std::size_t a) { return ctx.is_odd(a) ? 1 : k; };
      while (true) {
        int w = 0, dz = 0;
        for (std::size_t a = 0; a < e.size(); ++a) {
          w += e[a];
          dz += e[a] * ctx.degree(a);
        }
        if (w <= k)
          for (std::size_t mu = 0; mu < bundle->rank(); ++mu) {
            qj[dz + bundle->fiber_degree(mu)] += 1;
            for (std::size_t lam = 0; lam < bundle->rank(); ++lam)
              lj[bundle->fiber_degree(mu) - bundle->fiber_degree(lam) - dz] +=
                  1;
          }
        std::size_t a = 0;
        while (a < e.size() && e[a] == cap(a)) e[a++] = 0;
        if (a == e.size()) break;
        ++e[a];
      }
      if (jet_rank(*bundle, k) != qj)
        return std::string("q_j table mismatch with brute force");
      if (diff_rank(*bundle, k) != lj)
        return std::string("l_j table mismatch with brute force");
      if (k >= 1) {
        auto rhs = jet_rank(*bundle, k - 1);
        for (const auto& [deg, count] : hom_sk_rank(*bundle, k))
          rhs[deg] += count;
        if (jet_rank(*bundle, k) != rhs)
          return std::string("SES rank additivity failed");
      }
    }
  }
  // Ordinary limit r * binom(n+k, k), all (n, r, k) in {1,2,3}^3.
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r)
      for (int k = 1; k <= 3; ++k) {
        std::vector<Coordinate> coords;
        for (int a = 0; a < n; ++a)
          coords.push_back({"x" + std::to_string(a), 0});
        std::vector<FiberGenerator> fiber;
        for (int lam = 0; lam < r; ++lam)
          fiber.push_back({"e" + std::to_string(lam), 0});
        const auto bundle =
            make_bundle(make_context(std::move(coords)), std::move(fiber));
        const auto rk = jet_rank(*bundle, k);
        const long want = r * binomial(n + k, k);
        if (rk.size() != 1 || rk.count(0) == 0 || rk.at(0) != want)
          return std::string("ordinary jet rank != r binom(n+k,k)");
        const auto dk = diff_rank(*bundle, k);
        if (dk.size() != 1 || dk.count(0) == 0 || dk.at(0) != r * want)
          return std::string("ordinary operator rank != r^2 binom(n+k,k)");
      }
  return ok();
}

// 12. Same-jet criterion <=> (J^a)^{k+1} membership on 100 seeded cases.
Witness criterion_same_jet() {
  Rng rng(12);
  const auto bundles = corpus_bundles();
  for (int c = 0; c < 100; ++c) {
    const auto& bundle = bundles[std::size_t(c) % bundles.size()];
    const auto& ctx = bundle->context();
    const int k = int(rng.uniform(0, 2));
    const Point a = checks::random_point(rng, ctx);
    const Section psi = checks::random_section(rng, bundle, 3);
    Section phi = checks::random_section(rng, bundle, 3);
    if (rng.flip()) {
      phi = psi;
      for (std::size_t lam = 0; lam < bundle->rank(); ++lam) {
        Poly bump = Poly::constant(ctx, Rational(1));
        for (int i = 0; i <= k; ++i) {
          const std::size_t b =
              std::size_t(rng.uniform(0, long(ctx->dim()) - 1));
          Poly gen = Poly::coordinate(ctx, b);
          if (ctx->degree(b) == 0)
            gen -= Poly::constant(ctx, a.value_of(*ctx, b));
          bump = bump * gen;
        }
        phi.component(lam) += bump;
      }
    }
    const bool same = jet_at_point(psi, k, a) == jet_at_point(phi, k, a);
    bool member = true;
    for (std::size_t lam = 0; lam < bundle->rank(); ++lam)
      if (!(psi.component(lam) - phi.component(lam))
               .taylor_split(a, k)
               .first.is_zero())
        member = false;
    if (same != member)
      return "same-jet criterion failed at case " + std::to_string(c);
  }
  return ok();
}

// 13. All-odd stabilization on (th1:1, th2:1): jet_rank constant for k >= 2.
Witness criterion_allodd() {
  const auto ctx = make_context({{"th1", 1}, {"th2", 1}});
  for (const auto& bundle :
       {make_bundle(ctx, {{"e", 0}}),
        make_bundle(ctx, {{"e0", 0}, {"e1", 1}})}) {
    const auto base = jet_rank(*bundle, 2);
    for (int k = 3; k <= 6; ++k)
      if (jet_rank(*bundle, k) != base)
        return std::string("all-odd ranks not constant for k >= 2");
  }
  return ok();
}

std::string run_cli(const std::string& args, int* exit_code) {
  const std::string cmd = g_cli_path + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    *exit_code = -1;
    return {};
  }
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  *exit_code = pclose(pipe);
  return out;
}

// 14. CLI determinism and the worked rank examples.
Witness criterion_cli() {
  if (g_cli_path.empty())
    return std::string("CLI path not supplied (pass it as argv[1])");
  namespace fs = std::filesystem;
  const fs::path dir = fs::path("acceptance_tmp");
  fs::create_directories(dir);
  {
    std::ofstream ctx(dir / "ctx.json");
    ctx << R"({"coords":[{"name":"x","degree":0},{"name":"th","degree":1},{"name":"p","degree":2}]})";
    std::ofstream ctx2(dir / "ctx2.json");
    ctx2 << R"({"coords":[{"name":"x","degree":0},{"name":"y","degree":0}]})";
    std::ofstream lb(dir / "line.json");
    lb << R"({"fiber":[{"name":"e","degree":0}]})";
  }
  int code = 0;
  const std::string check_args = "check --suite algebra --seed 1 --cases 40";
  const std::string first = run_cli(check_args, &code);
  if (code != 0) return std::string("cmd_check exited nonzero");
  const std::string second = run_cli(check_args, &code);
  if (first != second || first.empty())
    return std::string("cmd_check runs are not byte-identical");

  const std::string jet_rank_out = run_cli(
      "rank --context " + (dir / "ctx.json").string() + " --bundle " +
          (dir / "line.json").string() + " --kind jet --order 1",
      &code);
  if (code != 0 ||
      jet_rank_out != "degree 0: 2\ndegree 1: 1\ndegree 2: 1\ntotal: 4\n")
    return "cmd_rank jet example mismatch: " + jet_rank_out;

  const std::string diff_rank_out = run_cli(
      "rank --context " + (dir / "ctx.json").string() + " --bundle " +
          (dir / "line.json").string() + " --kind diff --order 1",
      &code);
  if (code != 0 ||
      diff_rank_out !=
          "degree -2: 1\ndegree -1: 1\ndegree 0: 2\ntotal: 4\n")
    return "cmd_rank diff example mismatch: " + diff_rank_out;

  const std::string flat_out = run_cli(
      "rank --context " + (dir / "ctx2.json").string() + " --bundle " +
          (dir / "line.json").string() + " --kind jet --order 2",
      &code);
  if (code != 0 || flat_out != "degree 0: 6\ntotal: 6\n")
    return "cmd_rank ordinary example mismatch: " + flat_out;
  return ok();
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Witness()> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  const std::vector<Criterion> criteria = {
      {1, "partial-op-delta-identity", 1.0, criterion_partial_op},
      {2, "multi-index-leibniz", 10.0, criterion_leibniz},
      {3, "decomposition-roundtrip", 30.0, criterion_decomposition},
      {4, "dual-pairing", 5.0, criterion_dual_pairing},
      {5, "symbol-kernel-surjectivity", 10.0, criterion_symbol},
      {6, "sn-bracket-identities", 30.0, criterion_sn_bracket},
      {7, "commutator-symbol-theorem", 60.0, criterion_commutator_symbol},
      {8, "atiyah-and-curvature", 10.0, criterion_atiyah_curvature},
      {9, "jet-factorization", 30.0, criterion_jet_factorization},
      {10, "projection-identities", 5.0, criterion_projections},
      {11, "rank-accounting", 5.0, criterion_ranks},
      {12, "same-jet-criterion", 10.0, criterion_same_jet},
      {13, "all-odd-stabilization", 1.0, criterion_allodd},
      {14, "cli-determinism", 5.0, criterion_cli},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Witness witness;
    try {
      witness = c.run();
    } catch (const std::exception& err) {
      witness = std::string("exception: ") + err.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::ostringstream line;
    if (!witness && elapsed > c.budget_seconds)
      witness = "time budget exceeded";
    if (witness) {
      ++failures;
      line << "[FAIL] " << c.id << " " << c.name << ": " << *witness;
    } else {
      line << "[PASS] " << c.id << " " << c.name;
    }
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << elapsed << "s / " << c.budget_seconds << "s)";
    std::cout << line.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
