#pragma once

// Normalized minimax regret of the fugal game.
//
// u_k(z) is the minimax regret (divided by the horizon) of a game in which the
// player has k blocks left, the adversary answers each block with a constant
// +-1 loss for as long as the player holds, and z is the running loss bias
// divided by the remaining horizon. It obeys u_{k+1} = T(u_k) with the
// one-step operator
//
//   (T f)(z) = inf_x max_{w=+-1} inf_{|z'|<1, w(z'-z)>=0}
//                ((1+wz) f(z') + x (z'-z)) / (1+wz'),
//
// and u_k(z) = |z| for |z| >= 1. This header holds the grid solver for T,
// every closed form known for it, and the policy tables consumed by
// FugalPlayer.

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "switchlab/errors.hpp"

namespace switchlab::fugal {

/// Samples of a function on the uniform grid z_j = (2j - N)/N, j = 0..N,
/// read back through linear interpolation. Outside [-1, 1] it evaluates to |z|.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(int resolution, std::vector<double> values, int k_index = 0);

  template <class F>
  static GridFunction sample(int resolution, F&& f, int k_index = 0) {
    std::vector<double> v(static_cast<std::size_t>(resolution) + 1);
    for (int j = 0; j <= resolution; ++j) v[static_cast<std::size_t>(j)] = f(node(resolution, j));
    return GridFunction(resolution, std::move(v), k_index);
  }

  static double node(int resolution, int j) {
    return static_cast<double>(2 * j - resolution) / static_cast<double>(resolution);
  }

  int resolution() const { return resolution_; }
  int k_index() const { return k_index_; }
  double node(int j) const { return node(resolution_, j); }
  std::span<const double> values() const { return values_; }
  double value(int j) const { return values_[static_cast<std::size_t>(j)]; }

  double operator()(double z) const;

  /// Index of the node nearest to z (clamped to the grid).
  int nearest(double z) const;

 private:
  int resolution_ = 0;
  int k_index_ = 0;
  std::vector<double> values_;
};

// ---------------------------------------------------------------------------
// Closed forms

/// a_k(z): 1 for k = 1; for k >= 2 the quadratic (sqrt(k/2) z^2 + sqrt(2/k))/2
/// inside |z| < sqrt(2/k) and |z| outside. Lower-bounds u_k.
double quadratic_bound(int k, double z);

/// (T a_i)(z) for i >= 2:
/// sqrt(i/2) (z^2 - 1 + sqrt(1 + 2/i - z^2)) for |z| <= sqrt(2/i), else |z|.
double fugal_quadratic_closed_form(int i, double z);

struct SwitchTargets {
  double plus;   // z_+: minimizer of (a_i(z') - x)/(1+z')
  double minus;  // z_-: minimizer of (a_i(z') + x)/(1-z')
};

/// z_+ = sqrt(1 + 2/i - 2 sqrt(2/i) x) - 1, z_- = 1 - sqrt(1 + 2/i + 2 sqrt(2/i) x).
SwitchTargets switch_targets(int i, double x);

/// Unique zero x_0(z) of h_z = g_+ - g_- for the quadratic bound a_i.
double crossing_point(int i, double z);

/// r_1(T, Z) = (|Z - T| + |Z + T|) / 2, the single-block fugal value.
double one_block_regret(double horizon, double bias);

/// (Z^2 + T^2) / (2T), the exact value when the bias leaves the reachable ball.
/// Requires |Z| < T.
double extraspherical_value(double horizon, double bias);

/// p(z) = -z^6 - 4z^5 - 4z^4 + 4z^3 + 10z^2 + 4z - 2; its root in (0,1) is
/// the optimal first-block target for u_4(0).
double u4_sextic(double z);

struct U4Exact {
  double u4_zero;     // nested-radical closed form
  double z0;          // bisection root of the sextic in (0, 1)
  double z0_cardano;  // Cardano closed form of the same root
};

/// Throws NumericError if the bracket fails or the two z0 routes disagree
/// beyond 1e-12.
U4Exact u4_exact();

// ---------------------------------------------------------------------------
// Operator

struct OperatorOptions {
  double x_tolerance = 1e-10;        // bisection width on the action
  double zprime_tolerance = 1e-10;   // golden-section width on the target bias
  double structure_tolerance = 1e-9; // allowed violation of h_z monotonicity
  unsigned threads = 0;              // 0: LABCTL_THREADS or hardware concurrency
};

/// Minimizing action and the adversary-side witnesses at one z.
struct PointSolution {
  double value = 0.0;
  double action = 0.0;   // x*
  double target_plus = 0.0;   // z' chosen when w = +1
  double target_minus = 0.0;  // z' chosen when w = -1
};

/// Evaluates (T f)(z) for the piecewise-linear f. The inner infimum over z' is
/// exact on grid nodes. With refine_targets the z' witnesses are polished by
/// golden-section search on a local quadratic model of f.
PointSolution solve_point(const GridFunction& f, double z, const OperatorOptions& options = {},
                          bool refine_targets = false);

/// Same operator for an arbitrary continuous f: node scan at scan_resolution,
/// then golden-section refinement inside the cells around the best node.
PointSolution solve_point(const std::function<double(double)>& f, int scan_resolution, double z,
                          const OperatorOptions& options = {});

/// Applies T at every grid node; endpoint values are pinned to 1 = |z|.
/// Requires f >= |z| on the grid (ArgumentError otherwise).
GridFunction fugal_apply(const GridFunction& f, const OperatorOptions& options = {});

// ---------------------------------------------------------------------------
// Policy

/// Optimal fugal play at one node of the sign tree.
struct PolicyNode {
  double action = 0.0;   // x*_i
  double length_plus = 0.0;   // M*_i / T when the adversary answers +1
  double length_minus = 0.0;  // M*_i / T when the adversary answers -1
};

/// Player's optimal fugal strategy for budget K, keyed by the sign prefix
/// (w'_1, ..., w'_{i-1}) written as a string over {'+', '-'}.
class FugalPolicy {
 public:
  FugalPolicy() = default;
  FugalPolicy(int budget, int resolution) : budget_(budget), resolution_(resolution) {}

  int budget() const { return budget_; }
  int resolution() const { return resolution_; }
  const std::map<std::string, PolicyNode>& nodes() const { return nodes_; }

  /// Throws DependencyError if the prefix is not in the table.
  const PolicyNode& at(std::string_view prefix) const;
  void set(std::string prefix, PolicyNode node) { nodes_[std::move(prefix)] = node; }

  /// Sum of block fractions along one full sign path of length K.
  double path_length(std::string_view signs) const;

  nlohmann::json to_json() const;

 private:
  int budget_ = 0;
  int resolution_ = 0;
  std::map<std::string, PolicyNode> nodes_;
};

/// Largest budget for which the full sign tree (2^K - 1 nodes) is extracted.
inline constexpr int kMaxPolicyBudget = 16;

struct FugalSolution {
  std::vector<GridFunction> u;  // u[k-1] holds u_k
  FugalPolicy policy;
};

/// Solves u_1..u_K on a grid of resolution N (>= 100) and extracts the policy
/// when K <= kMaxPolicyBudget.
FugalSolution solve(int budget, int resolution, const OperatorOptions& options = {});

/// Policy extraction from solved grids u_1..u_K.
FugalPolicy extract_policy(std::span<const GridFunction> u, const OperatorOptions& options = {});

/// Process-wide cache of solved policies keyed by (K, N).
std::shared_ptr<const FugalPolicy> cached_policy(int budget, int resolution);

/// CSV with columns z, u_1, ..., u_K.
void write_grid_csv(std::ostream& out, std::span<const GridFunction> u);

}  // namespace switchlab::fugal
