#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>

#include "switchlab/errors.hpp"

namespace switchlab::oracle {

struct OracleConfig {
  int horizon = 1;           // T <= kMaxHorizon
  int budget = 1;            // K <= T; fewer than K switches
  int x_grid = 41;           // odd number of player actions on [-1, 1]
  double bias = 0.0;         // Z
  int adversary_points = 2;  // 2: w in {-1, +1}; m > 2: m equispaced losses on [-1, 1]
};

inline constexpr int kMaxHorizon = 12;
inline constexpr double kMaxEntries = 1e8;

struct OracleReport {
  OracleConfig config;
  double value = 0.0;
  double witness_first_action = 0.0;
  double lower = 0.0;  // Z = 0: T a_K(0); otherwise |Z|
  double upper = 0.0;  // ceil(T/K) R(K) + |Z|
  double slack = 0.0;  // 2T / (x_grid - 1)

  bool within_bounds() const { return lower - slack <= value && value <= upper + slack; }
};

/// Minimax value of the 1-d switching-constrained game with the player on an
/// odd action grid and the adversary on the configured loss alphabet. The
/// default {-1, +1} alphabet gives the value of the sign game. Interior losses
/// can help the adversary once the budget binds (T=4, K=3: 1.675 vs 1.8 with
/// five points), so larger alphabets only ever raise the value.
OracleReport exact_minimax_1d(const OracleConfig& config);

/// R(K): even K gives (K/2^K) C(K, K/2), odd K gives (K/2^(K-1)) C(K-1, (K-1)/2).
/// Exact rational arithmetic up to K = 60, so R(2m-1) == R(2m) holds bitwise.
double unconstrained_R_closed_form(int budget);

/// ceil(T/K) <= 2T / sqrt(K(K+1)), checked in integers.
bool tk_inequality_check(std::int64_t horizon, std::int64_t budget);

/// CSV with columns T,K,Z,value,lower,upper.
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const OracleReport& report);

}  // namespace switchlab::oracle
