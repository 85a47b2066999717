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
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "covertkey/montecarlo.hpp"

namespace covertkey::protocol {

using Bits = std::vector<std::uint8_t>;  // one bit per element, 0 or 1

// Deterministic expansion of a seed into an unbounded bit stream via a
// counter construction. Explicitly NOT a cryptographic PRNG: the
// distinguishing advantage delta_prng entering the security budget is a
// caller-supplied figure, never something this generator earns.
Bits keystream(const Bits& seed, std::size_t length);

// Block code over the D-ary symbol alphabet used on the covert channel.
class DarySymbolCode {
 public:
  virtual ~DarySymbolCode() = default;
  virtual std::uint64_t alphabet_size() const = 0;
  virtual double rate() const = 0;  // information symbols per channel symbol
  virtual std::vector<std::uint64_t> encode(const std::vector<std::uint64_t>& info) const = 0;
  // returns (info symbols, uncorrected flag)
  virtual std::pair<std::vector<std::uint64_t>, bool> decode(
      const std::vector<std::uint64_t>& received) const = 0;
};

// r-fold repetition with per-group plurality vote; ties are flagged
// uncorrected.
class RepetitionCode final : public DarySymbolCode {
 public:
  RepetitionCode(std::uint64_t alphabet, unsigned repetitions);
  std::uint64_t alphabet_size() const override { return alphabet_; }
  unsigned repetitions() const { return r_; }
  double rate() const override { return 1.0 / r_; }
  std::vector<std::uint64_t> encode(const std::vector<std::uint64_t>& info) const override;
  std::pair<std::vector<std::uint64_t>, bool> decode(
      const std::vector<std::uint64_t>& received) const override;

 private:
  std::uint64_t alphabet_;
  unsigned r_;
};

struct KeyLedger {
  std::uint64_t initial_key_bits = 0;
  std::uint64_t consumed_bits = 0;
  std::uint64_t produced_bits = 0;  // post-error-correction information bits
  std::int64_t net_bits = 0;
  // info-theoretic sessions also track the capacity-rate figure
  double produced_reliable_bits = 0.0;
  double net_reliable_bits = 0.0;
};

struct SecurityBudget {
  double eps_covert = 0.0;
  double delta_prng = 0.0;  // 0 in the information-theoretic mode
  double secrecy_bound = 0.0;  // 2 (eps_covert + delta_prng)
};

SecurityBudget security_budget(double eps_covert, double delta_prng);

enum class SessionMode { kInfoTheoretic, kComputational };

struct SessionTranscript {
  SessionMode mode = SessionMode::kInfoTheoretic;
  analytic::ProtocolParams params;
  double p_c = 0.0;
  std::uint64_t runs = 0;  // completed runs
  std::vector<std::pair<std::uint64_t, std::uint64_t>> symbols_sent;  // (block, mode)
  std::vector<montecarlo::RunOutcome> decode_results;
  KeyLedger ledger;
  SecurityBudget security;
  bool aborted = false;       // ran out of pre-shared key
  bool key_recovered = true;  // computational mode: Bob's k1 matches Alice's
  std::uint64_t master_seed = 0;

  // Stable flat text serialization; identical inputs give identical output.
  std::string to_text() const;
};

// Information-theoretic session: each run spends ceil(log2 M) true-random
// shared key bits on the block choice and transmits log2 D fresh message
// bits. M and D must be powers of two. Key exhaustion aborts with a partial
// transcript.
SessionTranscript session_info_theoretic(const analytic::ProtocolParams& params,
                                         std::uint64_t runs,
                                         const Bits& shared_key,
                                         std::uint64_t master_seed);

// Computational session: block choices come from keystream(k0), the fresh
// key k1 is coded over D-ary symbols and sent one symbol per run. The whole
// seed counts as consumed once. new_key_bits must be a multiple of log2 D.
SessionTranscript session_computational(const analytic::ProtocolParams& params,
                                        const Bits& k0,
                                        std::uint64_t new_key_bits,
                                        const DarySymbolCode& code,
                                        double delta_prng,
                                        std::uint64_t master_seed);

}  // namespace covertkey::protocol
