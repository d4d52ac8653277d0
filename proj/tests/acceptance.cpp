// Acceptance run: one PASS/FAIL line per criterion.
// --known-failure N (repeatable) makes the exit status 0 only when exactly those criteria fail.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "beltrami/beltrami.hpp"
#include "random_expr.hpp"

using namespace beltrami;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string dir;

Verdict determining_reproduction() {
  Verdict v;
  DeterminingSystem det = determining_system(curl_f_system());
  GeneratorField family = load_family(dir, "family13.txt");
  DeterminingSystem gen_r = specialize_f(det, Expression(sym::R), "R");
  DeterminingSystem fx_r = specialize_f(fixture_system(dir, "eq10.txt"), Expression(sym::R), "R");
  v.require(annihilation_failures(gen_r, family) == 0, "the C1..C10 family does not annihilate the generated system");
  v.require(annihilation_failures(fx_r, family) == 0, "the C1..C10 family does not annihilate the fixture equations");
  v.require(fx_r.equations.size() == 14, "fixture does not hold 14 equations");
  int dim = solve_polynomial_ansatz(gen_r, 2).dimension;
  v.require(dim == 10, "degree-2 dimension " + std::to_string(dim));
  if (v.pass) v.detail = std::to_string(det.equations.size()) + " equations, the C1..C10 family annihilates both, dimension 10";
  return v;
}

Verdict algebra(const PdeSystem& sys, int n) {
  Verdict v;
  AnsatzSolution sol = solve_polynomial_ansatz(sys, 2);
  auto b = fields(basis(n));
  v.require(sol.dimension == n, "dimension " + std::to_string(sol.dimension));
  v.require(field_rank(sol.basis) == n && field_rank(b) == n, "rank differs from " + std::to_string(n));
  v.require(same_span(sol.basis, b), "span differs from X1..X" + std::to_string(n));
  if (v.pass) v.detail = "dimension " + std::to_string(n) + ", span equals X1..X" + std::to_string(n);
  return v;
}

Verdict blair_algebra() {
  Verdict v = algebra(blair_system(), 7);
  DeterminingSystem det = determining_system(blair_system());
  for (int k = 8; k <= 10; ++k)
    v.require(!verify_generator(basis_field(k), det).ok, "X" + std::to_string(k) + " accepted");
  if (v.pass) v.detail += "; X8, X9, X10 rejected";
  return v;
}

Verdict structure_constants_check() {
  Verdict v;
  LieAlgebraTable t = structure_constants(basis(10));
  TableDiff d = compare_brackets(t, load_pair_table(dir, "b10_brackets.txt", 10),
                                 load_index_sets(dir, "b10_exceptions.txt"));
  v.require(d.status() != DiffStatus::new_mismatch, "undocumented bracket mismatch");
  auto only = [&](int i, int j, int k, const Rational& val) {
    for (int m = 0; m < 10; ++m)
      if (t.c(i - 1, j - 1, m) != (m == k - 1 ? val : Rational(0))) return false;
    return true;
  };
  v.require(only(1, 2, 3, 1), "[X1,X2] != X3");
  v.require(only(4, 7, 4, 1), "[X4,X7] != X4");
  v.require(only(6, 8, 7, 2), "[X6,X8] != 2*X7");
  v.require(only(1, 4, 5, -1), "[X1,X4] != -X5");
  v.require(jacobi_check(t), "Jacobi fails on X1..X10");
  v.require(jacobi_check(structure_constants(basis(7))), "Jacobi fails on X1..X7");
  if (v.pass)
    v.detail = std::to_string(d.compared) + " entries, " + std::to_string(d.mismatches.size()) +
               " documented exceptions, Jacobi holds";
  return v;
}

Verdict adjoint_tables() {
  Verdict v;
  LieAlgebraTable t = structure_constants(basis(7));
  std::vector<AdjointEntry> all;
  double worst = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      all.push_back(adjoint_closed_form(t, i, j));
      for (double eps : {0.1, 0.5, 1.0}) {
        Eigen::VectorXd c = adjoint_numeric(t, i, j, eps);
        for (int k = 0; k < 7; ++k) worst = std::max(worst, std::abs(c(k) - all.back().evaluate(k, eps)));
      }
    }
  TableDiff d = compare_adjoint(t, all, load_pair_table(dir, "b7_adjoint.txt", 7));
  v.require(d.compared == 49, std::to_string(d.compared) + " entries compared");
  v.require(d.status() == DiffStatus::clean, std::to_string(d.mismatches.size()) + " entries differ");
  v.require(worst <= 1e-9, "numeric disagreement " + std::to_string(worst));
  if (v.pass) v.detail = "49 entries match, numeric agreement within 1e-9";
  return v;
}

Verdict solutions() {
  Verdict v;
  v.require(residual(solution_b1(), FieldSystem::blair).all_zero(), "B1 residual");
  v.require(residual(solution_b2(), FieldSystem::curl_abs_b).all_zero(), "B2 residual");
  const Expression eps(sym::eps);
  for (int k : {2, 3, 7})
    v.require(residual(transform(solution_b1(), k, eps), FieldSystem::blair).all_zero(),
              "B1^(" + std::to_string(k) + ") residual");
  v.require(fields_equal(transform(solution_b1(), 4, eps), solution_b1()).equal, "B1^(4) != B1");
  v.require(fields_equal(transform(solution_b1(), 5, eps), solution_b1()).equal, "B1^(5) != B1");
  v.require(fields_equal(transform(solution_b2(), 1, eps), solution_b2()).equal, "B2^(1) != B2");
  if (v.pass) v.detail = "B1, B2, B1^(2), B1^(3), B1^(7) residuals zero; B1^(4) = B1^(5) = B1, B2^(1) = B2";
  return v;
}

Verdict reductions() {
  Verdict v;
  ReducedOde tr = reduce(ReductionKind::translation);
  auto res = ode_residual(tr, {parse("sin(z)"), parse("cos(z)")});
  v.require(expressions_equal(res[0], Expression(0)).equal && expressions_equal(res[1], Expression(0)).equal,
            "(sin z, cos z) does not solve the translation system");
  OdeTable t = integrate_ode(tr, {0, 1}, 0, 2 * M_PI, 1e-3);
  double err = 0;
  for (std::size_t i = 0; i < t.t.size(); ++i)
    err = std::max({err, std::abs(t.y[i][0] - std::sin(t.t[i])), std::abs(t.y[i][1] - std::cos(t.t[i]))});
  v.require(err < 1e-8, "RK4 error " + std::to_string(err));
  ReducedOde rot = reduce(ReductionKind::rotation);
  OdeTable rt = integrate_ode(rot, {0, 1}, 0.01, 3, 1e-4);
  double worst = rt.blew_up ? INFINITY : max_reconstruction_residual(rot, reconstruct_field(rot, rt), 100);
  v.require(worst < 1e-6, "rotation residual " + std::to_string(worst));
  std::ostringstream os;
  os << "RK4 error " << err << ", rotation residual " << worst;
  if (v.pass) v.detail = os.str();
  return v;
}

Verdict f_constraints() {
  Verdict v;
  FConstraintSystem sys = f_constraints_from_group(basis(7));
  v.require(verify_f(parse("R"), sys).ok, "f = R rejected");
  for (const char* bad : {"1", "u", "u^2+v^2+w^2"})
    v.require(!verify_f(parse(bad), sys).ok, std::string("f = ") + bad + " accepted");
  FSolutionReport rep = analyze_f_constraints(sys);
  v.require(rep.equivalent_to_reference, "derived constraints differ from the four reference constraints");
  v.require(rep.family == "f = c*R, c constant (R = sqrt(u^2+v^2+w^2))", "solution set: " + rep.family);
  if (v.pass) v.detail = "f = R accepted; 1, u, u^2+v^2+w^2 rejected; " + rep.family;
  return v;
}

Verdict maximal_rank() {
  Verdict v;
  int a = maximal_rank_check(curl_abs_b_system(), 100), b = maximal_rank_check(blair_system(), 100);
  v.require(a == 3, "curl-absB rank " + std::to_string(a));
  v.require(b == 4, "blair rank " + std::to_string(b));
  if (v.pass) v.detail = "rank 3 and 4";
  return v;
}

Verdict subalgebras() {
  Verdict v;
  LieAlgebraTable t = structure_constants(basis(7));
  auto listed = load_index_sets(dir, "subalgebras.txt");
  v.require(listed.size() == 6, std::to_string(listed.size()) + " pairs listed");
  for (const auto& s : listed)
    if (!is_subalgebra(t, s))
      v.require(false, "X" + std::to_string(s[0] + 1) + ",X" + std::to_string(s[1] + 1) + " not closed: [X" +
                           std::to_string(s[0] + 1) + ",X" + std::to_string(s[1] + 1) + "] = " +
                           bracket_string(t, s[0], s[1]));
  v.require(!is_subalgebra(t, {0, 3}), "X1,X4 closed");
  if (v.pass) v.detail = "six pairs closed, X1,X4 not closed";
  return v;
}

Verdict kernel() {
  Verdict v;
  beltrami::testing::ExprGen gen(2024, {sym::x, sym::y, sym::z, sym::u, sym::v, sym::w});
  int roundtrip_bad = 0, idem_bad = 0, fd_bad = 0;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int i = 0; i < 300; ++i) {
    Expression e = gen(4);
    if (!(parse(to_string(e)) == e)) ++roundtrip_bad;
    Poly p = normalize(e);
    if (!(normalize(to_expression(p)) == p)) ++idem_bad;
    NumericPoint pt({{sym::x, d(rng)}, {sym::y, d(rng)}, {sym::z, d(rng)}, {sym::u, d(rng)}, {sym::v, d(rng)},
                     {sym::w, d(rng)}});
    Expression de = differentiate(e, sym::x);
    double h = 1e-5;
    NumericPoint lo = pt, hi = pt;
    lo.set(sym::x, pt[sym::x] - h);
    hi.set(sym::x, pt[sym::x] + h);
    double fd = (eval_numeric(e, hi) - eval_numeric(e, lo)) / (2 * h), exact = eval_numeric(de, pt);
    if (std::abs(fd - exact) > 1e-6 * std::max(1.0, std::abs(exact))) ++fd_bad;
  }
  v.require(roundtrip_bad == 0, std::to_string(roundtrip_bad) + " round-trip failures");
  v.require(idem_bad == 0, std::to_string(idem_bad) + " idempotence failures");
  v.require(fd_bad == 0, std::to_string(fd_bad) + " finite-difference disagreements");
  ReducedOde tr = reduce(ReductionKind::translation);
  auto err = [&](double h) {
    OdeTable t = integrate_ode(tr, {0, 1}, 0, 2 * M_PI, h);
    return std::hypot(t.y.back()[0] - std::sin(t.t.back()), t.y.back()[1] - std::cos(t.t.back()));
  };
  double ratio = err(0.1) / err(0.05);
  v.require(ratio >= 12 && ratio <= 20, "RK4 ratio " + std::to_string(ratio));
  std::ostringstream os;
  os << "300 random expressions; RK4 halving ratio " << ratio;
  if (v.pass) v.detail = os.str();
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> known;
  dir = default_fixture_dir();
  app.add_option("--known-failure", known, "criterion expected to fail (repeatable)");
  app.add_option("--fixtures", dir, "fixture directory");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"determining system reproduction", determining_reproduction},
      {"symmetry algebra of curl B = |B| B", [] { return algebra(curl_abs_b_system(), 10); }},
      {"Blair algebra", blair_algebra},
      {"structure constants", structure_constants_check},
      {"adjoint tables", adjoint_tables},
      {"exact solutions", solutions},
      {"reductions", reductions},
      {"f constraints", f_constraints},
      {"maximal rank", maximal_rank},
      {"subalgebra closure", subalgebras},
      {"kernel properties", kernel},
  };
  std::set<int> failing;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) failing.insert(n);
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << (v.pass ? "PASS " : "FAIL ") << n << " " << criteria[i].first << ": " << v.detail << " [" << t.str()
              << " s]" << std::endl;
  }
  std::set<int> expected(known.begin(), known.end());
  if (!expected.empty())
    std::cout << "known failures " << (failing == expected ? "match" : "do not match") << std::endl;
  return failing == expected ? 0 : 1;
}
