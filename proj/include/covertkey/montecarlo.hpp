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

#include "covertkey/analytic.hpp"
#include "covertkey/rng.hpp"

namespace covertkey::montecarlo {

// Photon-level simulation of single protocol runs. The model is lossless
// with unit-efficiency detection: the signal mode always clicks, and each of
// the other D-1 modes in the chosen block clicks independently with
// probability p_c. Modes outside the chosen block never reach Bob's decoder
// and are skipped.

// Supplies pre-shared key bits to a session; throws KeyExhausted when empty.
struct KeyExhausted : std::runtime_error {
  KeyExhausted() : std::runtime_error("pre-shared key exhausted") {}
};

class BitReader {
 public:
  explicit BitReader(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  bool next() {
    if (pos_ >= bits_.size()) throw KeyExhausted{};
    return bits_[pos_++] != 0;
  }

  std::uint64_t next_bits(unsigned count) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < count; ++i) v = (v << 1) | (next() ? 1 : 0);
    return v;
  }

  std::size_t consumed() const { return pos_; }
  std::size_t remaining() const { return bits_.size() - pos_; }

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t pos_ = 0;
};

struct RunOutcome {
  std::uint64_t chosen_block = 0;
  std::uint64_t signal_mode = 0;
  std::vector<std::uint64_t> click_set;  // sorted, always contains signal_mode
  std::uint64_t decoded_mode = 0;
  bool collision = false;     // at least one extraneous click
  bool symbol_error = false;  // decoded != signal (implies collision)
};

struct SimulationReport {
  std::uint64_t trials = 0;
  double collision_rate = 0.0;
  double collision_ci = 0.0;  // 95% half-width
  double symbol_error_rate = 0.0;
  double symbol_error_ci = 0.0;
  double analytic_delta = 0.0;
  double consumed_bits_per_run = 0.0;   // ceil(log2 M)
  double produced_raw_bits_per_run = 0.0;  // log2 D
  std::uint64_t total_consumed_bits = 0;
  std::uint64_t master_seed = 0;
  // echo of the resolved configuration
  std::uint64_t D = 0;
  std::uint64_t M = 0;
  double p_c = 0.0;
};

unsigned ceil_log2(std::uint64_t n);
bool is_power_of_two(std::uint64_t n);

// Channel half of a run: the signal mode is given, the extraneous clicks and
// Bob's tie-break come from `rng`. chosen_block is left for the caller.
RunOutcome channel_transmit(std::uint64_t D, double p_c,
                            std::uint64_t signal_mode, Rng& rng);

// One protocol run. Block choice consumes ceil(log2 M) bits from `key`;
// the signal mode and all channel randomness come from `rng`.
RunOutcome simulate_run(std::uint64_t M, std::uint64_t D, double p_c,
                        BitReader& key, Rng& rng);

// Deterministic campaign: trial t uses the stream derived from
// (master_seed, t), so reports are bit-identical across reruns and
// independent of execution order.
SimulationReport run_campaign(std::uint64_t M, std::uint64_t D, double p_c,
                              std::uint64_t trials, std::uint64_t master_seed);

}  // namespace covertkey::montecarlo
