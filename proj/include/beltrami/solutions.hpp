#ifndef BELTRAMI_SOLUTIONS_HPP
#define BELTRAMI_SOLUTIONS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parse.hpp"
#include "poly.hpp"

namespace beltrami {

/// B = u d/dx + v d/dy + w d/dz with components in (x,y,z) and parameters.
struct FieldSolution {
  std::string name;
  std::array<Expression, 3> uvw;
};

inline FieldSolution solution_b1() { return {"B1", {parse("sin(z)"), parse("cos(z)"), Expression(0)}}; }

inline FieldSolution solution_b2() {
  return {"B2",
          {parse("8*(x*z-y)/(1+x^2+y^2+z^2)^2"), parse("8*(x+y*z)/(1+x^2+y^2+z^2)^2"),
           parse("4*(1+z^2-x^2-y^2)/(1+x^2+y^2+z^2)^2")}};
}

inline FieldSolution solution_by_name(const std::string& n) {
  if (n == "B1") return solution_b1();
  if (n == "B2") return solution_b2();
  throw std::invalid_argument("unknown solution '" + n + "'");
}

enum class FieldSystem { curl_abs_b, blair };

inline FieldSystem field_system_by_name(const std::string& n) {
  if (n == "curl-absB") return FieldSystem::curl_abs_b;
  if (n == "blair") return FieldSystem::blair;
  throw std::invalid_argument("unknown system '" + n + "' (expected curl-absB or blair)");
}

// ---------------------------------------------------------------------------
// Residuals

enum class ResidualMode { symbolic, numeric };

struct ResidualReport {
  std::vector<Expression> residuals;  // normalized numerators when decided symbolically
  std::vector<bool> zero;
  std::vector<ResidualMode> mode;
  double max_abs = 0;  // largest sampled value for numerically decided components

  bool all_zero() const {
    for (bool z : zero)
      if (!z) return false;
    return true;
  }
};

namespace detail {

inline Expression grad(const Expression& e, int axis) { return differentiate(e, sym::independent(axis)); }

/// Residual expressions w_y - v_z - u|B|, u_z - w_x - v|B|, v_x - u_y - w|B| [, u_x + v_y + w_z].
inline std::vector<Expression> residual_expressions(const FieldSolution& s, FieldSystem sys, const Expression& absB) {
  const auto& [u, v, w] = s.uvw;
  std::vector<Expression> r{grad(w, 1) - grad(v, 2) - u * absB, grad(u, 2) - grad(w, 0) - v * absB,
                            grad(v, 0) - grad(u, 1) - w * absB};
  if (sys == FieldSystem::blair) r.push_back(grad(u, 0) + grad(v, 1) + grad(w, 2));
  return r;
}

inline double halton(std::size_t index, unsigned base) {
  double f = 1, r = 0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

/// Quasi-random point in [-2,2]^3; eps from a fourth Halton axis, a = cos eps, b = sin eps.
inline NumericPoint halton_point(std::size_t index) {
  NumericPoint p;
  p.set(sym::x, -2 + 4 * halton(index, 2));
  p.set(sym::y, -2 + 4 * halton(index, 3));
  p.set(sym::z, -2 + 4 * halton(index, 5));
  double eps = -2 + 4 * halton(index, 7);
  p.set(sym::eps, eps);
  p.set(sym::a, std::cos(eps));
  p.set(sym::b, std::sin(eps));
  return p;
}

/// |B| as an exact rational form when u^2+v^2+w^2 has exact square roots in numerator and denominator.
inline std::optional<RationalForm> exact_norm(const FieldSolution& s) {
  const auto& [u, v, w] = s.uvw;
  RationalForm n2 = rationalize(u * u + v * v + w * w);
  auto rn = exact_sqrt(n2.num);
  auto rd = exact_sqrt(n2.den);
  if (!rn || !rd) return std::nullopt;
  RationalForm r{*rn, *rd};
  r.simplify();
  // choose the sign that is positive on the domain
  Expression e = to_expression(r.num) / to_expression(r.den);
  for (std::size_t i = 1; i < 40; ++i) {
    try {
      double val = eval_numeric(e, halton_point(i));
      if (std::abs(val) < 1e-9) continue;
      if (val < 0) r.num = -r.num;
      return r;
    } catch (const EvaluationError&) {
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline constexpr double residual_tolerance = 1e-10;
inline constexpr int residual_samples = 50;

/// Residuals of curl B = |B| B (and div B = 0 for the Blair system). Each component is decided
/// symbolically when normal forms suffice, otherwise by sampling 50 quasi-random points.
inline ResidualReport residual(const FieldSolution& s, FieldSystem sys) {
  ResidualReport rep;
  std::optional<RationalForm> absB;
  try {
    absB = detail::exact_norm(s);
  } catch (const NotPolynomial&) {
  }
  const auto& [u, v, w] = s.uvw;
  Expression absB_expr = sqrt(u * u + v * v + w * w);
  auto exprs = detail::residual_expressions(s, sys, absB_expr);

  std::vector<std::optional<RationalForm>> symbolic(exprs.size());
  if (absB) {
    try {
      RationalForm U = rationalize(u), V = rationalize(v), W = rationalize(w);
      auto d = [](const Expression& e, int axis) { return rationalize(detail::grad(e, axis)); };
      symbolic[0] = d(w, 1) - d(v, 2) - U * *absB;
      symbolic[1] = d(u, 2) - d(w, 0) - V * *absB;
      symbolic[2] = d(v, 0) - d(u, 1) - W * *absB;
      if (sys == FieldSystem::blair) symbolic[3] = d(u, 0) + d(v, 1) + d(w, 2);
    } catch (const NotPolynomial&) {
      symbolic.assign(exprs.size(), std::nullopt);
    }
  } else if (sys == FieldSystem::blair) {
    try {
      auto d = [](const Expression& e, int axis) { return rationalize(detail::grad(e, axis)); };
      symbolic[3] = d(u, 0) + d(v, 1) + d(w, 2);
    } catch (const NotPolynomial&) {
    }
  }

  for (std::size_t i = 0; i < exprs.size(); ++i) {
    if (symbolic[i]) {
      Poly num = clear_radical(symbolic[i]->num).poly;
      if (num.is_zero() || !contains_function_atoms(num)) {
        rep.residuals.push_back(to_expression(num));
        rep.zero.push_back(num.is_zero());
        rep.mode.push_back(ResidualMode::symbolic);
        continue;
      }
    }
    // numeric fallback with pole avoidance
    double worst = 0;
    std::size_t index = 1;
    for (int n = 0; n < residual_samples; ++n) {
      bool done = false;
      for (int retry = 0; retry <= 10 && !done; ++retry, ++index) {
        try {
          double val = eval_numeric(exprs[i], detail::halton_point(index));
          if (!std::isfinite(val)) continue;
          worst = std::max(worst, std::abs(val));
          done = true;
        } catch (const EvaluationError&) {
        }
      }
      if (!done) throw std::runtime_error("residual sampling kept hitting poles");
    }
    rep.residuals.push_back(exprs[i]);
    rep.zero.push_back(worst <= residual_tolerance);
    rep.mode.push_back(ResidualMode::numeric);
    rep.max_abs = std::max(rep.max_abs, worst);
  }
  return rep;
}

namespace detail {

// Cancels the bases of negative powers that occur in e.
inline void cancel_denominators(RationalForm& r, const Expression& e) {
  if (e.kind() == NodeKind::pow && e.exponent() < 0) {
    RationalForm base = rationalize(e.args()[0]);
    if (base.is_polynomial()) r.cancel(base.num);
  }
  for (const auto& a : e.args()) cancel_denominators(r, a);
}

}  // namespace detail

/// div B as a normalized rational expression.
inline Expression divergence(const FieldSolution& s) {
  Expression d = detail::grad(s.uvw[0], 0) + detail::grad(s.uvw[1], 1) + detail::grad(s.uvw[2], 2);
  RationalForm r = rationalize(d);
  if (r.num.is_zero()) return Expression(0);
  for (const auto& c : s.uvw) detail::cancel_denominators(r, c);
  if (r.is_polynomial()) return to_expression(r.num);
  return to_expression(r.num) / to_expression(r.den);
}

// ---------------------------------------------------------------------------
// One-parameter groups of the Blair system

/// Image of a solution under the flow of X_family (1..7) at parameter eps.
/// A symbolic eps uses a = cos eps, b = sin eps for the rotations.
inline FieldSolution transform(const FieldSolution& s, int family, const Expression& eps) {
  if (family < 1 || family > 7) throw std::invalid_argument("family must be in 1..7");
  const Expression x(sym::x), y(sym::y), z(sym::z);
  Expression a, b;
  if (eps.is_constant()) {
    a = cos(eps);
    b = sin(eps);
  } else if (eps == Expression(sym::eps)) {
    a = Expression(sym::a);
    b = Expression(sym::b);
  } else {
    a = cos(eps);
    b = sin(eps);
  }
  auto at = [&](const Expression& X, const Expression& Y, const Expression& Z) {
    std::map<Symbol, Expression> m{{sym::x, X}, {sym::y, Y}, {sym::z, Z}};
    return std::array<Expression, 3>{substitute(s.uvw[0], m), substitute(s.uvw[1], m), substitute(s.uvw[2], m)};
  };
  FieldSolution out{s.name + "^(" + std::to_string(family) + ")", {}};
  switch (family) {
    case 1: {
      auto [f, g, h] = at(a * x + b * y, -b * x + a * y, z);
      out.uvw = {a * f - b * g, b * f + a * g, h};
      break;
    }
    case 2: {
      auto [f, g, h] = at(x, a * y + b * z, -b * y + a * z);
      out.uvw = {f, a * g - b * h, b * g + a * h};
      break;
    }
    case 3: {
      auto [f, g, h] = at(a * x + b * z, y, -b * x + a * z);
      out.uvw = {a * f - b * h, g, b * f + a * h};
      break;
    }
    case 4: out.uvw = at(x - eps, y, z); break;
    case 5: out.uvw = at(x, y - eps, z); break;
    case 6: out.uvw = at(x, y, z - eps); break;
    case 7: {
      Expression sc = exp(-eps);
      auto [f, g, h] = at(sc * x, sc * y, sc * z);
      out.uvw = {sc * f, sc * g, sc * h};
      break;
    }
  }
  return out;
}

/// Component-wise equality through normal forms, with numeric fallback for opaque functions.
inline EqualityVerdict fields_equal(const FieldSolution& p, const FieldSolution& q) {
  EqualityVerdict all{true, true};
  for (int i = 0; i < 3; ++i) {
    auto v = expressions_equal(p.uvw[i], q.uvw[i]);
    all.symbolic = all.symbolic && v.symbolic;
    if (!v.equal) return {false, all.symbolic};
  }
  return all;
}

/// Replaces the trig parameters by cos eps, sin eps.
inline FieldSolution bind_trig_parameters(const FieldSolution& s) {
  std::map<Symbol, Expression> m{{sym::a, cos(Expression(sym::eps))}, {sym::b, sin(Expression(sym::eps))}};
  FieldSolution out{s.name, {}};
  for (int i = 0; i < 3; ++i) out.uvw[i] = substitute(s.uvw[i], m);
  return out;
}

// ---------------------------------------------------------------------------
// Group-invariant reductions

enum class ReductionKind { translation, rotation };

inline ReductionKind reduction_kind_by_name(const std::string& n) {
  if (n == "translation") return ReductionKind::translation;
  if (n == "rotation") return ReductionKind::rotation;
  throw std::invalid_argument("unknown reduction '" + n + "'");
}

/// y' = F(t, y) for a two-component state.
struct ReducedOde {
  ReductionKind kind;
  std::string subgroup;
  std::string ansatz;
  std::string constraint;
  Symbol independent;
  std::array<Symbol, 2> state;
  std::array<Expression, 2> rhs;

  std::array<double, 2> eval(double t, const std::array<double, 2>& y) const {
    NumericPoint p;
    p.set(independent, t);
    p.set(state[0], y[0]);
    p.set(state[1], y[1]);
    return {eval_numeric(rhs[0], p), eval_numeric(rhs[1], p)};
  }
};

inline ReducedOde reduce(ReductionKind kind) {
  if (kind == ReductionKind::translation) {
    // -h' = g sqrt(g^2+h^2), g' = h sqrt(g^2+h^2), k = 0
    return {kind,
            "<X4,X5>",
            "u = g(z), v = h(z), w = k(z)",
            "k = 0",
            sym::z,
            {sym::g, sym::h},
            {parse("h*sqrt(g^2+h^2)"), parse("-g*sqrt(g^2+h^2)")}};
  }
  // -gamma' = beta sqrt(beta^2+gamma^2), beta/r + beta' = gamma sqrt(beta^2+gamma^2)
  return {kind,
          "<X1,X6>",
          "x*u+y*v = g(r), x*v-y*u = h(r), w = gamma(r), r = sqrt(x^2+y^2), beta = h/r",
          "g = 0",
          sym::r,
          {sym::beta, sym::gamma},
          {parse("gamma*sqrt(beta^2+gamma^2) - beta/r"), parse("-beta*sqrt(beta^2+gamma^2)")}};
}

/// Residual of the reduced system for an exact candidate (state expressions in the independent variable).
inline std::array<Expression, 2> ode_residual(const ReducedOde& ode, const std::array<Expression, 2>& candidate) {
  std::map<Symbol, Expression> m{{ode.state[0], candidate[0]}, {ode.state[1], candidate[1]}};
  std::array<Expression, 2> r;
  for (int i = 0; i < 2; ++i) r[i] = differentiate(candidate[i], ode.independent) - substitute(ode.rhs[i], m);
  return r;
}

struct OdeTable {
  std::vector<double> t;
  std::vector<std::array<double, 2>> y;
  std::vector<std::array<double, 2>> dy;
  bool blew_up = false;
};

inline constexpr double blow_up_norm = 1e6;

/// Classical fixed-step RK4 from t0 to t1; the step is adjusted to land on t1.
inline OdeTable integrate_ode(const ReducedOde& ode, std::array<double, 2> y0, double t0, double t1, double step) {
  if (!(step > 0)) throw std::invalid_argument("step must be positive");
  if (!(t1 > t0)) throw std::invalid_argument("range must be increasing");
  if (ode.kind == ReductionKind::rotation && !(t0 > 0)) throw std::invalid_argument("rotation reduction needs r0 > 0");
  auto n = static_cast<long>(std::ceil((t1 - t0) / step - 1e-9));
  const double h = (t1 - t0) / static_cast<double>(n);
  OdeTable tab;
  std::array<double, 2> y = y0;
  auto add = [](const std::array<double, 2>& a, const std::array<double, 2>& b, double s) {
    return std::array<double, 2>{a[0] + s * b[0], a[1] + s * b[1]};
  };
  tab.t.push_back(t0);
  tab.y.push_back(y);
  tab.dy.push_back(ode.eval(t0, y));
  for (long i = 0; i < n; ++i) {
    double t = t0 + static_cast<double>(i) * h;
    auto k1 = ode.eval(t, y);
    auto k2 = ode.eval(t + h / 2, add(y, k1, h / 2));
    auto k3 = ode.eval(t + h / 2, add(y, k2, h / 2));
    auto k4 = ode.eval(t + h, add(y, k3, h));
    for (int c = 0; c < 2; ++c) y[c] += h / 6 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
    double tn = t0 + static_cast<double>(i + 1) * h;
    if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || std::hypot(y[0], y[1]) > blow_up_norm) {
      tab.blew_up = true;
      break;
    }
    tab.t.push_back(tn);
    tab.y.push_back(y);
    tab.dy.push_back(ode.eval(tn, y));
  }
  return tab;
}

/// Cubic Hermite interpolation of the state and its derivative from the stored slopes.
struct HermiteTable {
  const OdeTable* table;

  std::pair<std::array<double, 2>, std::array<double, 2>> at(double t) const {
    const auto& ts = table->t;
    if (ts.empty() || t < ts.front() - 1e-12 || t > ts.back() + 1e-12)
      throw std::out_of_range("query " + std::to_string(t) + " outside the integrated range");
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t i = it == ts.begin() ? 0 : static_cast<std::size_t>(it - ts.begin()) - 1;
    if (i + 1 >= ts.size()) i = ts.size() - 2;
    double h = ts[i + 1] - ts[i], s = (t - ts[i]) / h;
    double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
    double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
    double d00 = (6 * s * s - 6 * s) / h, d10 = 3 * s * s - 4 * s + 1;
    double d01 = (-6 * s * s + 6 * s) / h, d11 = 3 * s * s - 2 * s;
    std::array<double, 2> y{}, dy{};
    for (int c = 0; c < 2; ++c) {
      const double y0 = table->y[i][c], y1 = table->y[i + 1][c];
      const double m0 = table->dy[i][c], m1 = table->dy[i + 1][c];
      y[c] = h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
      dy[c] = d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1;
    }
    return {y, dy};
  }
};

/// Field sampled from a reduction; jacobian[i][j] = d(component i)/d(coordinate j).
struct NumericField {
  std::string provenance;
  double r_min = 0, r_max = 0;
  std::function<std::array<double, 3>(double, double, double)> value;
  std::function<std::array<std::array<double, 3>, 3>(double, double, double)> jacobian;
};

/// u = -y beta(r)/r, v = x beta(r)/r, w = gamma(r), from g = 0 and h = r beta.
inline NumericField reconstruct_field(const OdeTable& table) {
  if (table.t.size() < 2) throw std::invalid_argument("table too short to interpolate");
  auto shared = std::make_shared<OdeTable>(table);
  NumericField f;
  f.provenance = "rotation reduction, RK4 with cubic Hermite interpolation";
  f.r_min = table.t.front();
  f.r_max = table.t.back();
  f.value = [shared](double x, double y, double) {
    double r = std::hypot(x, y);
    auto [s, ds] = HermiteTable{shared.get()}.at(r);
    return std::array<double, 3>{-y * s[0] / r, x * s[0] / r, s[1]};
  };
  f.jacobian = [shared](double x, double y, double) {
    double r = std::hypot(x, y);
    auto [s, ds] = HermiteTable{shared.get()}.at(r);
    // B(r) = beta/r, B' = beta'/r - beta/r^2
    double B = s[0] / r, dB = ds[0] / r - s[0] / (r * r);
    double rx = x / r, ry = y / r;
    std::array<std::array<double, 3>, 3> J{};
    J[0] = {-y * dB * rx, -B - y * dB * ry, 0};
    J[1] = {B + x * dB * rx, x * dB * ry, 0};
    J[2] = {ds[1] * rx, ds[1] * ry, 0};
    return J;
  };
  return f;
}

/// u = g(z), v = h(z), w = 0 from the translation reduction.
inline NumericField reconstruct_translation(const OdeTable& table) {
  if (table.t.size() < 2) throw std::invalid_argument("table too short to interpolate");
  auto shared = std::make_shared<OdeTable>(table);
  NumericField f;
  f.provenance = "translation reduction, RK4 with cubic Hermite interpolation";
  f.r_min = table.t.front();
  f.r_max = table.t.back();
  f.value = [shared](double, double, double z) {
    auto [s, ds] = HermiteTable{shared.get()}.at(z);
    return std::array<double, 3>{s[0], s[1], 0};
  };
  f.jacobian = [shared](double, double, double z) {
    auto [s, ds] = HermiteTable{shared.get()}.at(z);
    std::array<std::array<double, 3>, 3> J{};
    J[0][2] = ds[0];
    J[1][2] = ds[1];
    return J;
  };
  return f;
}

inline NumericField reconstruct_field(const ReducedOde& ode, const OdeTable& table) {
  return ode.kind == ReductionKind::rotation ? reconstruct_field(table) : reconstruct_translation(table);
}

/// Residuals (curl B - |B| B, div B) of a numeric field at a point.
inline std::array<double, 4> numeric_residual(const NumericField& f, double x, double y, double z) {
  auto B = f.value(x, y, z);
  auto J = f.jacobian(x, y, z);
  double n = std::sqrt(B[0] * B[0] + B[1] * B[1] + B[2] * B[2]);
  return {J[2][1] - J[1][2] - B[0] * n, J[0][2] - J[2][0] - B[1] * n, J[1][0] - J[0][1] - B[2] * n,
          J[0][0] + J[1][1] + J[2][2]};
}

/// Largest |residual| of a reconstructed field over random points inside its table range.
inline double max_reconstruction_residual(const ReducedOde& ode, const NumericField& f, int samples,
                                          std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    double s = f.r_min + (f.r_max - f.r_min) * unit(rng);
    double theta = 2 * M_PI * unit(rng), other = -2 + 4 * unit(rng);
    std::array<double, 4> res;
    if (ode.kind == ReductionKind::rotation)
      res = numeric_residual(f, s * std::cos(theta), s * std::sin(theta), other);
    else
      res = numeric_residual(f, other, -2 + 4 * unit(rng), s);
    for (double q : res) worst = std::max(worst, std::abs(q));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Export

inline std::string table_csv(const ReducedOde& ode, const OdeTable& t) {
  std::ostringstream os;
  os.precision(17);
  os << name(ode.independent) << "," << name(ode.state[0]) << "," << name(ode.state[1]) << "\n";
  for (std::size_t i = 0; i < t.t.size(); ++i) os << t.t[i] << "," << t.y[i][0] << "," << t.y[i][1] << "\n";
  return os.str();
}

/// Field samples on an n x n x n grid over [lo, hi]^3 (points off the table range are skipped).
inline std::string field_grid_csv(const NumericField& f, int n, double lo, double hi) {
  std::ostringstream os;
  os.precision(17);
  os << "x,y,z,u,v,w\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double step = n > 1 ? (hi - lo) / (n - 1) : 0;
        double x = lo + i * step, y = lo + j * step, z = lo + k * step;
        double r = std::hypot(x, y);
        if (r < f.r_min || r > f.r_max) continue;
        auto B = f.value(x, y, z);
        os << x << "," << y << "," << z << "," << B[0] << "," << B[1] << "," << B[2] << "\n";
      }
  return os.str();
}

}  // namespace beltrami

#endif  // BELTRAMI_SOLUTIONS_HPP
