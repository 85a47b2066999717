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

#include "covertkey/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "covertkey/kernels.hpp"

namespace covertkey::fock {

namespace {

// Per-mode probability vector on the coarsened alphabet {0..cutoff, >cutoff}.
std::vector<double> extended(const PhotonCountDistribution& d) {
  std::vector<double> v = d.pmf;
  v.push_back(d.tail_mass);
  return v;
}

void check_limits(int N, int cutoff, const OracleLimits& limits) {
  if (N < 1) throw std::domain_error("oracle: N must be at least 1");
  if (cutoff < 0) throw std::domain_error("oracle: cutoff must be nonnegative");
  if (N > limits.max_modes) {
    throw std::domain_error("oracle: N=" + std::to_string(N) +
                            " exceeds the enumeration cap of " +
                            std::to_string(limits.max_modes) +
                            " modes; raise OracleLimits to override");
  }
  if (cutoff > limits.max_cutoff) {
    throw std::domain_error("oracle: cutoff=" + std::to_string(cutoff) +
                            " exceeds the cap of " +
                            std::to_string(limits.max_cutoff));
  }
  const std::size_t K = static_cast<std::size_t>(cutoff) + 2;
  std::size_t states = 1;
  for (int i = 0; i < N; ++i) {
    if (states > limits.max_states / K) {
      throw std::domain_error("oracle: joint support exceeds the memory guard of " +
                              std::to_string(limits.max_states) + " states");
    }
    states *= K;
  }
}

// Joint pmf of N independent modes, mode i distributed as per_mode[i].
// Layout after processing mode i: index runs fastest over earlier modes.
std::vector<double> product_pmf(const std::vector<const std::vector<double>*>& per_mode) {
  std::vector<double> res{1.0};
  std::vector<double> next;
  for (const auto* v : per_mode) {
    const std::size_t S = res.size();
    const std::size_t K = v->size();
    next.resize(S * K);
    for (std::size_t k = 0; k < K; ++k) {
      kernels::scale(next.data() + k * S, res.data(), (*v)[k], S);
    }
    res.swap(next);
  }
  return res;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Visits every k-subset of {0..N-1}.
template <typename F>
void for_each_subset(int N, int k, F&& fn) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == N - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

PhotonCountDistribution thermal_pmf(double nbar, int cutoff, double tail_tolerance) {
  if (!(nbar >= 0.0)) throw std::domain_error("thermal_pmf: nbar must be nonnegative");
  if (cutoff < 0) throw std::domain_error("thermal_pmf: cutoff must be nonnegative");
  PhotonCountDistribution d;
  d.pmf.resize(cutoff + 1, 0.0);
  if (nbar == 0.0) {
    d.pmf[0] = 1.0;
  } else {
    const double r = nbar / (1.0 + nbar);
    double p = 1.0 / (1.0 + nbar);
    for (int n = 0; n <= cutoff; ++n, p *= r) d.pmf[n] = p;
    d.tail_mass = std::pow(r, cutoff + 1);
  }
  d.truncation_dirty = d.tail_mass > tail_tolerance;
  return d;
}

PhotonCountDistribution signal_pmf(double nbar, int cutoff, double tail_tolerance) {
  PhotonCountDistribution t = thermal_pmf(nbar, cutoff, tail_tolerance);
  PhotonCountDistribution d;
  d.pmf.resize(cutoff + 1, 0.0);
  for (int n = 1; n <= cutoff; ++n) d.pmf[n] = t.pmf[n - 1];
  // everything at count cutoff or above in the background lands in the tail
  d.tail_mass = 1.0 - std::accumulate(d.pmf.begin(), d.pmf.end(), 0.0);
  d.truncation_dirty = d.tail_mass > tail_tolerance;
  return d;
}

double tv_distance(const PhotonCountDistribution& p, const PhotonCountDistribution& q) {
  if (p.pmf.size() != q.pmf.size()) {
    throw std::domain_error("tv_distance: distributions have different cutoffs");
  }
  double s = kernels::sum_abs_diff(p.pmf.data(), q.pmf.data(), p.pmf.size());
  s += std::fabs(p.tail_mass - q.tail_mass);
  return 0.5 * s;
}

double detection_bias_exact(int N, double nbar, int cutoff, const OracleLimits& limits) {
  return detection_bias_conditional(N, 1, nbar, cutoff, limits);
}

double detection_bias_iid(int N, double q, double nbar, int cutoff,
                          const OracleLimits& limits) {
  check_limits(N, cutoff, limits);
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("detection_bias_iid: q outside [0, 1]");
  const auto noise = extended(thermal_pmf(nbar, cutoff));
  const auto sig = extended(signal_pmf(nbar, cutoff));
  std::vector<double> mix(noise.size());
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = (1.0 - q) * noise[i] + q * sig[i];

  std::vector<const std::vector<double>*> noise_modes(N, &noise);
  std::vector<const std::vector<double>*> mix_modes(N, &mix);
  const auto rho = product_pmf(noise_modes);
  const auto sigma = product_pmf(mix_modes);
  return 0.25 * kernels::sum_abs_diff(rho.data(), sigma.data(), rho.size());
}

double detection_bias_conditional(int N, int k, double nbar, int cutoff,
                                  const OracleLimits& limits) {
  check_limits(N, cutoff, limits);
  if (k < 0 || k > N) throw std::domain_error("detection_bias_conditional: k outside [0, N]");
  const auto noise = extended(thermal_pmf(nbar, cutoff));
  const auto sig = extended(signal_pmf(nbar, cutoff));

  std::vector<const std::vector<double>*> modes(N, &noise);
  const auto rho = product_pmf(modes);

  std::vector<double> sigma(rho.size(), 0.0);
  const double w = 1.0 / binom(N, k);
  for_each_subset(N, k, [&](const std::vector<int>& subset) {
    for (int i : subset) modes[i] = &sig;
    const auto placed = product_pmf(modes);
    kernels::axpy(sigma.data(), placed.data(), w, sigma.size());
    for (int i : subset) modes[i] = &noise;
  });
  return 0.25 * kernels::sum_abs_diff(rho.data(), sigma.data(), rho.size());
}

FilterBoundReport verify_filter_bound(int N, double q, double nbar, int cutoff,
                                      const OracleLimits& limits) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("verify_filter_bound: q outside [0, 1]");
  FilterBoundReport r;
  r.eps_iid = detection_bias_iid(N, q, nbar, cutoff, limits);
  r.p0 = std::pow(1.0 - q, N);
  for (int k = 0; k <= N; ++k) {
    r.eps_k.push_back(detection_bias_conditional(N, k, nbar, cutoff, limits));
    r.p_k.push_back(binom(N, k) * std::pow(q, k) * std::pow(1.0 - q, N - k));
  }
  r.eps = r.eps_k[1];
  r.bound_rhs = r.p0 < 1.0 ? r.eps_iid / (1.0 - r.p0)
                           : std::numeric_limits<double>::infinity();
  r.bound_holds = r.eps <= r.bound_rhs + 1e-12;
  r.mixture_sum = std::inner_product(r.p_k.begin(), r.p_k.end(), r.eps_k.begin(), 0.0);
  r.residual = std::fabs(r.eps_iid - r.mixture_sum);
  r.mixture_direction_holds = r.eps_iid <= r.mixture_sum + 1e-12;
  return r;
}

SecrecyBoundReport verify_secrecy_bound(int N, double nbar, int messages, int cutoff,
                                        const std::vector<double>& priors,
                                        const OracleLimits& limits) {
  check_limits(N, cutoff, limits);
  if (messages < 1 || messages > N) {
    throw std::domain_error("verify_secrecy_bound: messages must lie in [1, N]");
  }
  std::vector<double> p = priors;
  if (p.empty()) p.assign(messages, 1.0 / messages);
  if (static_cast<int>(p.size()) != messages) {
    throw std::domain_error("verify_secrecy_bound: priors size must equal messages");
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::fabs(total - 1.0) > 1e-9) {
    throw std::domain_error("verify_secrecy_bound: priors must sum to 1");
  }

  const auto noise = extended(thermal_pmf(nbar, cutoff));
  const auto sig = extended(signal_pmf(nbar, cutoff));
  std::vector<const std::vector<double>*> modes(N, &noise);
  const auto rho = product_pmf(modes);

  SecrecyBoundReport rep;
  for (int m = 0; m < messages; ++m) {
    modes[m] = &sig;
    const auto sigma_m = product_pmf(modes);
    modes[m] = &noise;
    const double l1 = kernels::sum_abs_diff(rho.data(), sigma_m.data(), rho.size());
    rep.eps_m.push_back(0.25 * l1);
    // block-diagonal tagged states: the L1 norm splits per message
    rep.lhs += p[m] * 0.5 * l1;
  }
  rep.rhs = 2.0 * *std::max_element(rep.eps_m.begin(), rep.eps_m.end());
  rep.holds = rep.lhs <= rep.rhs + 1e-12;
  return rep;
}

}  // namespace covertkey::fock
