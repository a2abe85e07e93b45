#include "switchlab/fugal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <utility>

#include "switchlab/parallel.hpp"

namespace switchlab::fugal {

namespace {

constexpr double kDenominatorFloor = 1e-9;
constexpr double kInvPhi = 0.6180339887498948482;

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Golden-section minimizer of phi on [a, b].
template <class Phi>
double golden_min(Phi&& phi, double a, double b, double tol) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = phi(c);
  double fd = phi(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = phi(d);
    }
  }
  // Endpoints can beat the interior when the minimum sits on the boundary.
  double best = 0.5 * (a + b);
  double fbest = phi(best);
  return fbest <= std::min(phi(a), phi(b)) ? best : (phi(a) <= phi(b) ? a : b);
}

// Integrand of the inner infimum for sign w.
double integrand(double fz, double z, double zp, double x, double w) {
  const double den = std::max(1.0 + w * zp, kDenominatorFloor);
  return ((1.0 + w * z) * fz + x * (zp - z)) / den;
}

// Lines a_j + x b_j, one per candidate z', ordered outward from z.
struct Envelope {
  std::vector<double> zp;
  std::vector<double> a;
  std::vector<double> b;

  // Minimum over lines and the first index attaining it (closest to z).
  std::pair<double, std::size_t> eval(double x) const {
    double best = a[0] + x * b[0];
    std::size_t arg = 0;
    for (std::size_t j = 1; j < a.size(); ++j) {
      const double v = a[j] + x * b[j];
      if (v < best) {
        best = v;
        arg = j;
      }
    }
    return {best, arg};
  }
};

Envelope build_envelope(const GridFunction& f, double z, double w) {
  Envelope env;
  const int n = f.resolution();
  auto push = [&](double zp, double fz) {
    const double den = std::max(1.0 + w * zp, kDenominatorFloor);
    env.zp.push_back(zp);
    env.a.push_back((1.0 + w * z) * fz / den);
    env.b.push_back((zp - z) / den);
  };
  push(z, f(z));
  if (w > 0) {
    for (int j = 0; j <= n; ++j) {
      if (f.node(j) > z) push(f.node(j), f.value(j));
    }
  } else {
    for (int j = n; j >= 0; --j) {
      if (f.node(j) < z) push(f.node(j), f.value(j));
    }
  }
  return env;
}

// Outer minimization over x in [-1, 1] of max(g_plus, g_minus) given a
// nondecreasing g_plus and nonincreasing g_minus.
template <class GPlus, class GMinus>
double minimize_action(GPlus&& gp, GMinus&& gm, const OperatorOptions& opt) {
  auto h = [&](double x) { return gp(x) - gm(x); };
  const double h_lo = h(-1.0);
  const double h_hi = h(1.0);
  if (h_lo > h_hi + opt.structure_tolerance) {
    throw NumericStructureError("fugal operator: h_z is not monotone on [-1, 1]");
  }
  if (h_lo >= 0.0) return -1.0;
  if (h_hi <= 0.0) return 1.0;

  auto bisect = [&](double lo, double hi, bool right_edge) {
    double f_lo = h(lo);
    double f_hi = h(hi);
    while (hi - lo > opt.x_tolerance) {
      const double mid = 0.5 * (lo + hi);
      const double fm = h(mid);
      if (fm < f_lo - opt.structure_tolerance || fm > f_hi + opt.structure_tolerance) {
        throw NumericStructureError("fugal operator: h_z lost monotonicity; grid too coarse?");
      }
      const bool go_right = right_edge ? fm <= 0.0 : fm < 0.0;
      if (go_right) {
        lo = mid;
        f_lo = fm;
      } else {
        hi = mid;
        f_hi = fm;
      }
    }
    return right_edge ? lo : hi;
  };

  const double left = bisect(-1.0, 1.0, false);
  const double probe = std::min(1.0, left + 1e3 * opt.x_tolerance);
  if (h(probe) > 0.0) return left;
  // h vanishes on an interval: take its midpoint.
  const double right = bisect(left, 1.0, true);
  return 0.5 * (left + right);
}

// Quadratic through the three grid nodes around `center`.
struct LocalQuadratic {
  double z0, z1, z2, f0, f1, f2;

  LocalQuadratic(const GridFunction& f, double center) {
    const int j = std::clamp(f.nearest(center), 1, f.resolution() - 1);
    z0 = f.node(j - 1);
    z1 = f.node(j);
    z2 = f.node(j + 1);
    f0 = f.value(j - 1);
    f1 = f.value(j);
    f2 = f.value(j + 1);
  }

  double operator()(double z) const {
    return f0 * (z - z1) * (z - z2) / ((z0 - z1) * (z0 - z2)) +
           f1 * (z - z0) * (z - z2) / ((z1 - z0) * (z1 - z2)) +
           f2 * (z - z0) * (z - z1) / ((z2 - z0) * (z2 - z1));
  }
};

template <class Model>
double refine_target(const Envelope& env, std::size_t arg, double z, double x, double w,
                     Model&& model, double tol) {
  const std::size_t last = env.zp.size() - 1;
  double a = env.zp[arg == 0 ? 0 : arg - 1];
  double b = env.zp[std::min(arg + 1, last)];
  if (a > b) std::swap(a, b);
  if (b - a <= tol) return env.zp[arg];
  return golden_min([&](double zp) { return integrand(model(zp), z, zp, x, w); }, a, b, tol);
}

}  // namespace

// ---------------------------------------------------------------------------

GridFunction::GridFunction(int resolution, std::vector<double> values, int k_index)
    : resolution_(resolution), k_index_(k_index), values_(std::move(values)) {
  if (resolution < 2) throw ArgumentError("GridFunction: resolution must be at least 2");
  if (values_.size() != static_cast<std::size_t>(resolution) + 1) {
    throw ArgumentError("GridFunction: expected N+1 values");
  }
}

double GridFunction::operator()(double z) const {
  if (z <= -1.0 || z >= 1.0) return std::abs(z);
  const double pos = (z + 1.0) * 0.5 * resolution_;
  const int j = std::min(static_cast<int>(pos), resolution_ - 1);
  const double frac = pos - j;
  return values_[static_cast<std::size_t>(j)] * (1.0 - frac) +
         values_[static_cast<std::size_t>(j) + 1] * frac;
}

int GridFunction::nearest(double z) const {
  const double pos = (std::clamp(z, -1.0, 1.0) + 1.0) * 0.5 * resolution_;
  return std::clamp(static_cast<int>(std::lround(pos)), 0, resolution_);
}

// ---------------------------------------------------------------------------

double quadratic_bound(int k, double z) {
  if (k < 1) throw DomainError("a_k: k must be positive");
  if (std::abs(z) > 1.0) throw DomainError("a_k: |z| must not exceed 1");
  if (k == 1) return 1.0;
  const double kk = k;
  if (std::abs(z) < std::sqrt(2.0 / kk)) {
    return 0.5 * (std::sqrt(kk / 2.0) * z * z + std::sqrt(2.0 / kk));
  }
  return std::abs(z);
}

double fugal_quadratic_closed_form(int i, double z) {
  if (i < 2) throw DomainError("T a_i: i must be at least 2");
  if (std::abs(z) > 1.0) throw DomainError("T a_i: |z| must not exceed 1");
  const double ii = i;
  if (std::abs(z) <= std::sqrt(2.0 / ii)) {
    return std::sqrt(ii / 2.0) * (z * z - 1.0 + std::sqrt(1.0 + 2.0 / ii - z * z));
  }
  return std::abs(z);
}

SwitchTargets switch_targets(int i, double x) {
  if (i < 2) throw DomainError("z_pm: i must be at least 2");
  const double r = std::sqrt(2.0 / i);
  const double c = 1.0 + 2.0 / i;
  return {std::sqrt(std::max(0.0, c - 2.0 * r * x)) - 1.0,
          1.0 - std::sqrt(std::max(0.0, c + 2.0 * r * x))};
}

double crossing_point(int i, double z) {
  if (i < 2) throw DomainError("x_0: i must be at least 2");
  if (std::abs(z) > 1.0) throw DomainError("x_0: |z| must not exceed 1");
  if (std::abs(z) > std::sqrt(2.0 / i)) return -sign_of(z);
  const double ii = i;
  return std::clamp(-z * std::sqrt(-ii * z * z + ii + 2.0) / std::sqrt(2.0), -1.0, 1.0);
}

double one_block_regret(double horizon, double bias) {
  if (!(horizon > 0.0)) throw DomainError("r_1: horizon must be positive");
  return 0.5 * (std::abs(bias - horizon) + std::abs(bias + horizon));
}

double extraspherical_value(double horizon, double bias) {
  if (!(horizon > 0.0)) throw DomainError("extraspherical value: horizon must be positive");
  if (std::abs(bias) >= horizon) throw DomainError("extraspherical value: needs |Z| < T");
  return (bias * bias + horizon * horizon) / (2.0 * horizon);
}

double u4_sextic(double z) {
  return ((((((-z - 4.0) * z - 4.0) * z + 4.0) * z + 10.0) * z + 4.0) * z) - 2.0;
}

U4Exact u4_exact() {
  const double s2 = std::sqrt(2.0);
  U4Exact out;
  const double c = std::cbrt(45.0 * s2 + 3.0 * std::sqrt(3.0 * (502.0 * s2 + 945.0)) + 145.0);
  out.u4_zero = c / 3.0 - 5.0 / 3.0 - 2.0 * (3.0 * s2 + 1.0) / (3.0 * c);

  double lo = 0.0;
  double hi = 1.0;
  if (!(u4_sextic(lo) < 0.0 && u4_sextic(hi) > 0.0)) {
    throw NumericError("u4_exact: sextic does not change sign on (0, 1)");
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (u4_sextic(mid) < 0.0 ? lo : hi) = mid;
  }
  out.z0 = 0.5 * (lo + hi);

  const double d = -9.0 * s2 + 3.0 * std::sqrt(6.0 * (2.0 * s2 + 9.0)) + 38.0;
  out.z0_cardano =
      (-2.0 * (3.0 * s2 - 4.0) * std::cbrt(2.0 / d) + std::cbrt(4.0) * std::cbrt(d) - 4.0) / 6.0;
  if (std::abs(out.z0 - out.z0_cardano) > 1e-12) {
    throw NumericError("u4_exact: bisection and Cardano roots disagree");
  }
  return out;
}

// ---------------------------------------------------------------------------

PointSolution solve_point(const GridFunction& f, double z, const OperatorOptions& options,
                          bool refine_targets) {
  if (std::abs(z) >= 1.0) return {std::abs(z), -sign_of(z), z, z};

  const Envelope plus = build_envelope(f, z, 1.0);
  const Envelope minus = build_envelope(f, z, -1.0);
  const double x = minimize_action([&](double v) { return plus.eval(v).first; },
                                   [&](double v) { return minus.eval(v).first; }, options);

  const auto [gp, ap] = plus.eval(x);
  const auto [gm, am] = minus.eval(x);
  PointSolution s{std::max(gp, gm), x, plus.zp[ap], minus.zp[am]};
  if (refine_targets && f.resolution() >= 2) {
    s.target_plus = refine_target(plus, ap, z, x, 1.0, LocalQuadratic(f, plus.zp[ap]),
                                  options.zprime_tolerance);
    s.target_minus = refine_target(minus, am, z, x, -1.0, LocalQuadratic(f, minus.zp[am]),
                                   options.zprime_tolerance);
  }
  return s;
}

PointSolution solve_point(const std::function<double(double)>& f, int scan_resolution, double z,
                          const OperatorOptions& options) {
  if (std::abs(z) >= 1.0) return {std::abs(z), -sign_of(z), z, z};
  const GridFunction scan = GridFunction::sample(scan_resolution, f);
  Envelope plus = build_envelope(scan, z, 1.0);
  Envelope minus = build_envelope(scan, z, -1.0);
  plus.a[0] = f(z);   // the interpolated value at z is replaced by the exact one
  minus.a[0] = f(z);

  auto refined = [&](const Envelope& env, double w, double x) {
    const auto [best, arg] = env.eval(x);
    const double zp = refine_target(env, arg, z, x, w, f, options.zprime_tolerance);
    return std::pair{std::min(best, integrand(f(zp), z, zp, x, w)), zp};
  };
  const double x = minimize_action([&](double v) { return refined(plus, 1.0, v).first; },
                                   [&](double v) { return refined(minus, -1.0, v).first; },
                                   options);
  const auto [gp, zp] = refined(plus, 1.0, x);
  const auto [gm, zm] = refined(minus, -1.0, x);
  return {std::max(gp, gm), x, zp, zm};
}

GridFunction fugal_apply(const GridFunction& f, const OperatorOptions& options) {
  const int n = f.resolution();
  for (int j = 0; j <= n; ++j) {
    if (f.value(j) < std::abs(f.node(j)) - 1e-12) {
      throw ArgumentError("fugal_apply: input must dominate |z| on the grid");
    }
  }
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 1.0);
  parallel_for(static_cast<std::size_t>(n) - 1, options.threads, [&](std::size_t i) {
    const int j = static_cast<int>(i) + 1;
    out[static_cast<std::size_t>(j)] = solve_point(f, f.node(j), options).value;
  });
  return GridFunction(n, std::move(out), f.k_index() + 1);
}

// ---------------------------------------------------------------------------

const PolicyNode& FugalPolicy::at(std::string_view prefix) const {
  const auto it = nodes_.find(std::string(prefix));
  if (it == nodes_.end()) {
    throw DependencyError("fugal policy (K=" + std::to_string(budget_) + ") has no node '" +
                          std::string(prefix) + "'");
  }
  return it->second;
}

double FugalPolicy::path_length(std::string_view signs) const {
  double total = 0.0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    const auto& node = at(signs.substr(0, i));
    total += signs[i] == '+' ? node.length_plus : node.length_minus;
  }
  return total;
}

nlohmann::json FugalPolicy::to_json() const {
  nlohmann::json nodes = nlohmann::json::object();
  for (const auto& [prefix, node] : nodes_) {
    nodes[prefix] = {{"x", node.action}, {"M_plus", node.length_plus}, {"M_minus", node.length_minus}};
  }
  return {{"K", budget_}, {"N", resolution_}, {"nodes", nodes}};
}

namespace {

struct Extractor {
  std::span<const GridFunction> u;
  const OperatorOptions& options;
  FugalPolicy& policy;
  int budget;

  // remaining / bias are fractions of the full horizon.
  void expand(std::string prefix, double remaining, double bias) {
    const int blocks_left = budget - static_cast<int>(prefix.size());
    PolicyNode node;
    if (blocks_left == 1 || remaining <= 1e-15 || std::abs(bias) >= remaining) {
      const double z = remaining > 1e-15 ? bias / remaining : sign_of(bias);
      node = {-std::clamp(z, -1.0, 1.0), remaining, remaining};
      if (blocks_left > 1 && std::abs(z) >= 1.0) node.action = -sign_of(z);
    } else {
      const double z = bias / remaining;
      const auto s = solve_point(u[static_cast<std::size_t>(blocks_left - 2)], z, options, true);
      node.action = s.action;
      node.length_plus = remaining * std::max(0.0, (s.target_plus - z) / (1.0 + s.target_plus));
      node.length_minus =
          remaining * std::max(0.0, (z - s.target_minus) / std::max(1.0 - s.target_minus, kDenominatorFloor));
      node.length_plus = std::min(node.length_plus, remaining);
      node.length_minus = std::min(node.length_minus, remaining);
    }
    policy.set(prefix, node);
    if (blocks_left == 1) return;
    expand(prefix + '+', remaining - node.length_plus, bias + node.length_plus);
    expand(prefix + '-', remaining - node.length_minus, bias - node.length_minus);
  }
};

}  // namespace

FugalPolicy extract_policy(std::span<const GridFunction> u, const OperatorOptions& options) {
  const int budget = static_cast<int>(u.size());
  if (budget < 1) throw ArgumentError("extract_policy: need at least u_1");
  if (budget > kMaxPolicyBudget) {
    throw CapacityError("extract_policy: K=" + std::to_string(budget) + " exceeds the sign-tree cap");
  }
  FugalPolicy policy(budget, u[0].resolution());
  Extractor{u, options, policy, budget}.expand("", 1.0, 0.0);
  return policy;
}

FugalSolution solve(int budget, int resolution, const OperatorOptions& options) {
  if (budget < 1) throw ArgumentError("fugal solve: K must be positive");
  if (resolution < 100) throw ArgumentError("fugal solve: resolution must be at least 100");
  FugalSolution out;
  out.u.reserve(static_cast<std::size_t>(budget));
  out.u.emplace_back(resolution, std::vector<double>(static_cast<std::size_t>(resolution) + 1, 1.0), 1);
  for (int k = 2; k <= budget; ++k) out.u.push_back(fugal_apply(out.u.back(), options));
  if (budget <= kMaxPolicyBudget) out.policy = extract_policy(out.u, options);
  return out;
}

std::shared_ptr<const FugalPolicy> cached_policy(int budget, int resolution) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const FugalPolicy>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{budget, resolution}];
  if (!slot) slot = std::make_shared<const FugalPolicy>(solve(budget, resolution).policy);
  return slot;
}

void write_grid_csv(std::ostream& out, std::span<const GridFunction> u) {
  if (u.empty()) return;
  out << "z";
  for (std::size_t k = 0; k < u.size(); ++k) out << ",u_" << u[k].k_index();
  out << '\n';
  char buf[32];
  const int n = u[0].resolution();
  for (int j = 0; j <= n; ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", u[0].node(j));
    out << buf;
    for (const auto& g : u) {
      std::snprintf(buf, sizeof buf, "%.17g", g.value(j));
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace switchlab::fugal
