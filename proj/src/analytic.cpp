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

#include "covertkey/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace covertkey::analytic {

namespace {
constexpr double kLog2e = 1.4426950408889634074;  // log2(e)
double log2_of(double x) { return std::log(x) * kLog2e; }
}  // namespace

void ProtocolParams::validate() const {
  if (!(nbar >= 0.0)) throw std::domain_error("nbar must be nonnegative");
  if (!(eps > 0.0 && eps < 0.5)) throw std::domain_error("eps must lie in (0, 1/2)");
  if (D < 1) throw std::domain_error("D must be at least 1");
  if (M < 1) throw std::domain_error("M must be at least 1");
  if (!(alpha_max > 0.0)) throw std::domain_error("alpha_max must be positive");
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binary_entropy: p outside [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * log2_of(p) - (1.0 - p) * log2_of(1.0 - p);
}

double beta_thermal(double d, double nbar) {
  if (!(d > 0.0)) throw std::domain_error("beta_thermal: d must be positive");
  if (!(nbar > 0.0)) throw std::domain_error("beta_thermal: nbar must be positive");
  return d / (4.0 * std::sqrt(2.0 * nbar));
}

double p_zero_signals(double d, std::optional<double> N) {
  if (!(d > 0.0)) throw std::domain_error("p_zero_signals: d must be positive");
  if (!N) return std::exp(-d);
  if (d > *N) throw std::domain_error("p_zero_signals: d exceeds N (q > 1)");
  return std::pow(1.0 - d / *N, *N);
}

double p_click_thermal(double nbar) {
  if (!(nbar >= 0.0)) throw std::domain_error("p_click_thermal: nbar must be nonnegative");
  return nbar / (1.0 + nbar);
}

double block_error_delta(std::uint64_t D, double p_c) {
  if (D < 1) throw std::domain_error("block_error_delta: D must be at least 1");
  if (!(p_c >= 0.0 && p_c < 1.0)) throw std::domain_error("block_error_delta: p_c outside [0, 1)");
  if (D == 1 || p_c == 0.0) return 0.0;
  return -std::expm1(static_cast<double>(D - 1) * std::log1p(-p_c));
}

double dary_capacity(std::uint64_t D, double delta) {
  if (D < 2) throw std::domain_error("dary_capacity: D must be at least 2");
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::domain_error("dary_capacity: delta outside [0, 1]");
  const double c = log2_of(static_cast<double>(D)) - binary_entropy(delta) -
                   delta * log2_of(static_cast<double>(D - 1));
  return std::max(c, 0.0);
}

double required_modes(double eps, double beta, double p0) {
  if (!(eps > 0.0)) throw std::domain_error("required_modes: eps must be positive");
  if (!(beta > 0.0)) throw std::domain_error("required_modes: beta must be positive");
  if (!(p0 >= 0.0 && p0 < 1.0)) throw std::domain_error("required_modes: p0 outside [0, 1)");
  const double r = beta / (eps * (1.0 - p0));
  return r * r;
}

ExpansionAnalysis expansion_condition_exact(double nbar, double eps, double d,
                                            std::uint64_t D, double alpha_max,
                                            std::optional<double> override_M) {
  if (D < 1) throw std::domain_error("expansion_condition_exact: D must be at least 1");
  ExpansionAnalysis a;
  a.nbar = nbar;
  a.eps = eps;
  a.d = d;
  a.alpha_max = alpha_max;
  a.D = static_cast<double>(D);
  a.beta = beta_thermal(d, nbar);
  a.p0 = p_zero_signals(d);
  a.p_c = p_click_thermal(nbar);
  a.delta = block_error_delta(D, a.p_c);
  a.N = required_modes(eps, a.beta, a.p0);
  a.M = override_M ? *override_M : a.N / a.D;
  a.capacity_bits = (D >= 2) ? dary_capacity(D, a.delta) : 0.0;
  a.consumed_bits = log2_of(a.M);
  a.produced_bits = a.capacity_bits;
  a.net_bits = a.produced_bits - a.consumed_bits;
  const double budget = log2_of(a.beta / (eps * (1.0 - a.p0)));
  a.condition_exact = (2.0 - a.delta) * log2_of(a.D) >
                      2.0 * budget + binary_entropy(a.delta);
  a.condition_simplified = expansion_condition_simplified(D, nbar, eps, alpha_max).holds;
  a.regime_ok = a.D * nbar <= alpha_max * (1.0 + 1e-12);
  return a;
}

SimplifiedCondition expansion_condition_simplified(std::uint64_t D, double nbar,
                                                   double eps, double alpha_max) {
  if (D < 1) throw std::domain_error("expansion_condition_simplified: D must be at least 1");
  if (!(nbar > 0.0)) throw std::domain_error("expansion_condition_simplified: nbar must be positive");
  if (!(eps > 0.0 && eps < 0.5)) throw std::domain_error("expansion_condition_simplified: eps outside (0, 1/2)");
  SimplifiedCondition c;
  c.regime_ok = static_cast<double>(D) * nbar <= alpha_max * (1.0 + 1e-12);
  c.holds = 2.0 * log2_of(static_cast<double>(D)) > log2_of(1.0 / (nbar * eps * eps));
  return c;
}

double approx_net_key(double alpha, double nbar, double eps) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("approx_net_key: alpha outside (0, 1)");
  if (!(nbar > 0.0)) throw std::domain_error("approx_net_key: nbar must be positive");
  if (!(eps > 0.0)) throw std::domain_error("approx_net_key: eps must be positive");
  return (1.0 - alpha) * log2_of(1.0 / nbar) + (2.0 - alpha) * log2_of(alpha) -
         2.0 * log2_of(1.0 / eps);
}

double solve_d() {
  // d - 4 sqrt(2) (1 - e^{-d}) is negative at 1 and positive at 10.
  const double c = 4.0 * std::sqrt(2.0);
  auto f = [c](double d) { return d - c * (1.0 - std::exp(-d)); };
  double lo = 1.0, hi = 10.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

OptimizeResult optimize_block_size(double nbar, double eps, double d,
                                   double alpha_max) {
  if (!(nbar > 0.0)) throw std::domain_error("optimize_block_size: nbar must be positive");
  if (!(eps > 0.0 && eps < 0.5)) throw std::domain_error("optimize_block_size: eps outside (0, 1/2)");
  const double beta = beta_thermal(d, nbar);
  const double p0 = p_zero_signals(d);
  const double N = required_modes(eps, beta, p0);

  OptimizeResult res;
  const double bound = std::min(alpha_max / nbar, N);
  if (bound < 2.0) return res;  // no block size fits the regime: infeasible
  const auto D_max = static_cast<std::uint64_t>(bound);
  res.feasible = true;

  auto better = [](const ExpansionAnalysis& a, const ExpansionAnalysis& b) {
    return a.net_bits > b.net_bits;  // strict: ties keep the smaller D
  };

  // Pass 1: logarithmic grid.
  constexpr int kGridPoints = 512;
  const double ratio = std::pow(static_cast<double>(D_max) / 2.0,
                                1.0 / (kGridPoints - 1));
  std::uint64_t best_D = 2;
  ExpansionAnalysis best = expansion_condition_exact(nbar, eps, d, 2, alpha_max);
  double t = 2.0;
  std::uint64_t prev = 0;
  for (int i = 0; i < kGridPoints; ++i, t *= ratio) {
    const auto D = std::min(static_cast<std::uint64_t>(t), D_max);
    if (D == prev) continue;
    prev = D;
    auto a = expansion_condition_exact(nbar, eps, d, D, alpha_max);
    if (better(a, best)) {
      best = a;
      best_D = D;
    }
  }

  // Pass 2: exact integer scan around the grid optimum.
  const double spread = ratio * ratio;
  auto lo = static_cast<std::uint64_t>(std::max(2.0, static_cast<double>(best_D) / spread));
  auto hi = std::min(D_max, static_cast<std::uint64_t>(static_cast<double>(best_D) * spread) + 1);
  for (std::uint64_t D = lo; D <= hi; ++D) {
    auto a = expansion_condition_exact(nbar, eps, d, D, alpha_max);
    if (better(a, best)) {
      best = a;
      best_D = D;
    }
  }

  res.best_D = best_D;
  res.analysis = best;
  res.expanding = best.net_bits > 0.0 && best.condition_exact;
  return res;
}

}  // namespace covertkey::analytic
