// Copyright 2026 The covertkey Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>

namespace covertkey::analytic {

// Closed-form model of the covert key-expansion protocol: N = M*D modes are
// split into M blocks of D modes, the pre-shared key picks a block, the
// message picks a mode inside it, and thermal background noise with mean
// photon number nbar both hides the signal and corrupts Bob's decoding.
// All logarithms are base 2; every quantity here is a pure function of its
// arguments.

struct ProtocolParams {
  double nbar = 0.0;        // mean thermal photons per mode, >= 0
  double eps = 0.1;         // target detection bias, in (0, 1/2)
  double d = 0.0;           // mean signal count of the bounding i.i.d. protocol
  std::uint64_t D = 1;      // modes per block
  std::uint64_t M = 1;      // number of blocks
  double alpha_max = 0.1;   // cap on D*nbar for the small-noise regime

  std::uint64_t total_modes() const { return M * D; }
  void validate() const;    // throws std::domain_error on a bad tuple
};

struct ExpansionAnalysis {
  double beta = 0.0;            // square-root-law constant
  double p0 = 0.0;              // probability of zero signals (i.i.d. bound)
  double p_c = 0.0;             // per-mode click probability
  double delta = 0.0;           // block decode-error probability
  double capacity_bits = 0.0;   // D-ary symmetric channel capacity
  double consumed_bits = 0.0;   // log2 M, un-rounded
  double produced_bits = 0.0;   // = capacity_bits
  double net_bits = 0.0;        // produced - consumed
  bool condition_exact = false;
  bool condition_simplified = false;
  bool regime_ok = true;        // D*nbar <= alpha_max
  // resolved configuration, echoed so reports are self-describing
  double D = 0.0;
  double M = 0.0;               // from the detection-bias budget, real-valued
  double N = 0.0;
  double nbar = 0.0;
  double eps = 0.0;
  double d = 0.0;
  double alpha_max = 0.0;
};

// -p log2 p - (1-p) log2(1-p), with 0 log 0 = 0.
double binary_entropy(double p);

// beta = d / (4 sqrt(2 nbar)) for the thermal single-photon instantiation.
double beta_thermal(double d, double nbar);

// Probability the i.i.d. protocol sends no signal at all: (1 - d/N)^N when
// N is given, the N -> inf limit e^{-d} otherwise.
double p_zero_signals(double d, std::optional<double> N = std::nullopt);

// Probability of at least one thermal photon in a mode: nbar / (1 + nbar).
double p_click_thermal(double nbar);

// Probability of a click in at least one of the other D-1 modes of a block.
double block_error_delta(std::uint64_t D, double p_c);

// Capacity (bits/use) of the D-ary symmetric channel with error probability
// delta, clamped at zero. Requires D >= 2.
double dary_capacity(std::uint64_t D, double delta);

// Smallest N meeting the detection-bias budget: (beta / (eps (1 - p0)))^2.
double required_modes(double eps, double beta, double p0);

// Evaluates the full expansion analysis for one configuration. M is taken
// from the detection-bias budget (M = N / D, real-valued) unless
// override_M is supplied.
ExpansionAnalysis expansion_condition_exact(double nbar, double eps, double d,
                                            std::uint64_t D,
                                            double alpha_max = 0.1,
                                            std::optional<double> override_M =
                                                std::nullopt);

struct SimplifiedCondition {
  bool holds = false;
  bool regime_ok = true;  // D*nbar <= alpha_max
};

// 2 log2 D > log2(1 / (nbar eps^2)). Valid only in the D*nbar << 1 regime;
// a violation is flagged but the truth value is still computed.
SimplifiedCondition expansion_condition_simplified(std::uint64_t D, double nbar,
                                                   double eps,
                                                   double alpha_max = 0.1);

// Small-noise approximation of the net key per run at D = alpha / nbar:
// (1 - alpha) log2(1/nbar) + (2 - alpha) log2(alpha) - 2 log2(1/eps).
double approx_net_key(double alpha, double nbar, double eps);

// Unique positive solution of d = 4 sqrt(2) (1 - e^{-d}), the normalization
// that makes beta / (1 - p0) = 1 / sqrt(nbar). Bisection on [1, 10] to 1e-10.
double solve_d();

struct OptimizeResult {
  bool feasible = false;    // some D in [2, min(alpha_max/nbar, N)] exists
  bool expanding = false;   // best net_bits > 0 and the exact condition holds
  std::uint64_t best_D = 0;
  ExpansionAnalysis analysis;  // valid iff feasible
};

// Integer search for the D maximizing net_bits: logarithmic grid over the
// feasible range, then an exact integer scan around the grid optimum.
// Ties break to the smallest D.
OptimizeResult optimize_block_size(double nbar, double eps, double d,
                                   double alpha_max = 0.1);

}  // namespace covertkey::analytic
