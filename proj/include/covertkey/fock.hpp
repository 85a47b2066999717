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
#include <vector>

namespace covertkey::fock {

// Brute-force verification of the detection-bias and secrecy claims on small
// instances. All states are photon-number diagonal, so the trace distance
// between them equals the total-variation distance between their count
// distributions and everything reduces to enumeration.
//
// Per-mode distributions are truncated at a cutoff, but counts above the
// cutoff are pooled into one overflow bin. The enumeration therefore runs
// over exact probability vectors on the coarsened alphabet
// {0, .., cutoff, >cutoff}; coarsening can only shrink a total-variation
// distance, never violate normalization.

struct PhotonCountDistribution {
  std::vector<double> pmf;  // counts 0..cutoff
  double tail_mass = 0.0;   // probability above cutoff
  bool truncation_dirty = false;  // tail_mass exceeded the tolerance

  int cutoff() const { return static_cast<int>(pmf.size()) - 1; }
};

struct OracleLimits {
  int max_modes = 8;
  int max_cutoff = 6;
  std::size_t max_states = std::size_t{1} << 25;  // hard memory guard
};

// Bose-Einstein (geometric) photon-count law: p(n) = nbar^n / (1+nbar)^{n+1}.
PhotonCountDistribution thermal_pmf(double nbar, int cutoff,
                                    double tail_tolerance = 1e-12);

// One signal photon on top of an independent thermal background: the thermal
// pmf shifted up by one count. p(0) = 0 always.
PhotonCountDistribution signal_pmf(double nbar, int cutoff,
                                   double tail_tolerance = 1e-12);

// Total variation distance 1/2 sum |p - q| (overflow bins included).
// Distributions must share a cutoff.
double tv_distance(const PhotonCountDistribution& p,
                   const PhotonCountDistribution& q);

// Detection bias of the exact protocol: one signal placed uniformly among N
// modes vs pure noise. eps = 1/4 ||rho - sigma||_1 = 1/2 TV.
double detection_bias_exact(int N, double nbar, int cutoff,
                            const OracleLimits& limits = {});

// Detection bias eps_I of the i.i.d. protocol with per-mode signal
// probability q.
double detection_bias_iid(int N, double q, double nbar, int cutoff,
                          const OracleLimits& limits = {});

// Detection bias eps_k conditioned on exactly k signals, placed uniformly
// over the C(N, k) position subsets.
double detection_bias_conditional(int N, int k, double nbar, int cutoff,
                                  const OracleLimits& limits = {});

struct FilterBoundReport {
  double eps = 0.0;       // exact protocol (one signal)
  double eps_iid = 0.0;   // i.i.d. protocol
  double p0 = 0.0;        // (1 - q)^N
  double bound_rhs = 0.0; // eps_iid / (1 - p0)
  bool bound_holds = false;       // eps <= bound_rhs
  std::vector<double> eps_k;      // k = 0..N
  std::vector<double> p_k;        // binomial weights
  double mixture_sum = 0.0;       // sum_k p_k eps_k
  double residual = 0.0;          // |eps_iid - mixture_sum|
  bool mixture_direction_holds = false;  // eps_iid <= mixture_sum
};

// Checks eps <= eps_I / (1 - p0) and the conditional decomposition of eps_I.
// The mixture distance is at most sum p_k eps_k by convexity; the report
// carries both quantities and the residual between them.
FilterBoundReport verify_filter_bound(int N, double q, double nbar, int cutoff,
                                      const OracleLimits& limits = {});

struct SecrecyBoundReport {
  std::vector<double> eps_m;  // per-message bias, messages = signal positions
  double lhs = 0.0;           // 1/2 ||rho' - sigma'||_1 over the tagged states
  double rhs = 0.0;           // 2 max_m eps_m
  bool holds = false;
};

// Checks the message-secrecy bound 1/2 ||rho' - sigma'||_1 <= 2 eps for the
// block-diagonal message-tagged states; message m places the signal in mode
// m. priors must have `messages` entries summing to 1 (empty = uniform).
SecrecyBoundReport verify_secrecy_bound(int N, double nbar, int messages,
                                        int cutoff,
                                        const std::vector<double>& priors = {},
                                        const OracleLimits& limits = {});

}  // namespace covertkey::fock
