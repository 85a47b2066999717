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

#include "covertkey/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace covertkey::montecarlo {

unsigned ceil_log2(std::uint64_t n) {
  if (n == 0) throw std::domain_error("ceil_log2: n must be positive");
  return n <= 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1));
}

bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

RunOutcome channel_transmit(std::uint64_t D, double p_c,
                            std::uint64_t signal_mode, Rng& rng) {
  if (D < 1) throw std::domain_error("channel_transmit: D must be positive");
  if (signal_mode >= D) throw std::domain_error("channel_transmit: signal mode outside block");
  if (!(p_c >= 0.0 && p_c < 1.0)) throw std::domain_error("channel_transmit: p_c outside [0, 1)");

  RunOutcome out;
  out.signal_mode = signal_mode;

  const std::uint64_t extraneous = rng.next_binomial(D - 1, p_c);
  out.click_set.reserve(extraneous + 1);
  out.click_set.push_back(out.signal_mode);
  if (extraneous == D - 1) {
    for (std::uint64_t m = 0; m < D; ++m) {
      if (m != out.signal_mode) out.click_set.push_back(m);
    }
  } else if (extraneous > 0) {
    std::unordered_set<std::uint64_t> chosen;
    while (chosen.size() < extraneous) {
      // draw over the D-1 non-signal modes
      std::uint64_t m = rng.next_index(D - 1);
      if (m >= out.signal_mode) ++m;
      chosen.insert(m);
    }
    out.click_set.insert(out.click_set.end(), chosen.begin(), chosen.end());
  }
  std::sort(out.click_set.begin(), out.click_set.end());

  out.collision = out.click_set.size() > 1;
  if (!out.collision) {
    out.decoded_mode = out.signal_mode;
  } else {
    // multi-click tie-break: uniform among clicked modes
    out.decoded_mode = out.click_set[rng.next_index(out.click_set.size())];
  }
  out.symbol_error = out.decoded_mode != out.signal_mode;
  return out;
}

RunOutcome simulate_run(std::uint64_t M, std::uint64_t D, double p_c,
                        BitReader& key, Rng& rng) {
  if (M < 1) throw std::domain_error("simulate_run: M must be positive");
  const std::uint64_t block = key.next_bits(ceil_log2(M)) % M;
  const std::uint64_t signal = rng.next_index(D);
  RunOutcome out = channel_transmit(D, p_c, signal, rng);
  out.chosen_block = block;
  return out;
}

namespace {
constexpr std::uint64_t kKeyStreamTag = 0xc0feba5eb10cULL;

double wald_ci(double p, std::uint64_t n) {
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}
}  // namespace

SimulationReport run_campaign(std::uint64_t M, std::uint64_t D, double p_c,
                              std::uint64_t trials, std::uint64_t master_seed) {
  if (trials < 1) throw std::domain_error("run_campaign: trials must be positive");
  const unsigned mbits = ceil_log2(M);

  std::uint64_t collisions = 0;
  std::uint64_t symbol_errors = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(master_seed, t);
    Rng key_rng = Rng::stream(master_seed ^ kKeyStreamTag, t);
    std::vector<std::uint8_t> key_bits(mbits);
    for (auto& b : key_bits) b = key_rng.next_u64() & 1u;
    BitReader key(std::move(key_bits));

    const RunOutcome o = simulate_run(M, D, p_c, key, rng);
    collisions += o.collision ? 1 : 0;
    symbol_errors += o.symbol_error ? 1 : 0;
  }

  SimulationReport r;
  r.trials = trials;
  r.D = D;
  r.M = M;
  r.p_c = p_c;
  r.master_seed = master_seed;
  r.collision_rate = static_cast<double>(collisions) / static_cast<double>(trials);
  r.collision_ci = wald_ci(r.collision_rate, trials);
  r.symbol_error_rate = static_cast<double>(symbol_errors) / static_cast<double>(trials);
  r.symbol_error_ci = wald_ci(r.symbol_error_rate, trials);
  r.analytic_delta = analytic::block_error_delta(D, p_c);
  r.consumed_bits_per_run = static_cast<double>(mbits);
  r.produced_raw_bits_per_run = std::log2(static_cast<double>(D));
  r.total_consumed_bits = trials * mbits;
  return r;
}

}  // namespace covertkey::montecarlo
