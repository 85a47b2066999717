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

#include "covertkey/protocol.hpp"

#include <cinttypes>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace covertkey::protocol {

namespace {

constexpr std::uint64_t kK1StreamTag = 0x6b31ULL;      // fresh-key draws
constexpr std::uint64_t kMsgStreamTag = 0x6d7367ULL;   // info-theoretic messages

std::uint64_t fold_seed(const Bits& seed) {
  // FNV-1a over the seed bits, then a finalizer round
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : seed) {
    h = (h ^ (b & 1u)) * 0x100000001b3ULL;
  }
  return mix64(h);
}

Bits random_bits(Rng& rng, std::size_t count) {
  Bits out(count);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.next_u64() & 1u);
  return out;
}

void append_kv(std::string& s, const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s = %.9g\n", key, v);
  s += buf;
}

void append_kv(std::string& s, const char* key, std::uint64_t v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s = %" PRIu64 "\n", key, v);
  s += buf;
}

void append_kv(std::string& s, const char* key, std::int64_t v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s = %" PRId64 "\n", key, v);
  s += buf;
}

void append_kv(std::string& s, const char* key, bool v) {
  s += key;
  s += v ? " = true\n" : " = false\n";
}

}  // namespace

Bits keystream(const Bits& seed, std::size_t length) {
  if (seed.empty()) throw std::domain_error("keystream: seed must be nonempty");
  const std::uint64_t h = fold_seed(seed);
  Bits out;
  out.reserve(length);
  for (std::uint64_t block = 0; out.size() < length; ++block) {
    std::uint64_t w = mix64(h ^ mix64(block));
    for (int i = 63; i >= 0 && out.size() < length; --i) {
      out.push_back(static_cast<std::uint8_t>((w >> i) & 1u));
    }
  }
  return out;
}

SecurityBudget security_budget(double eps_covert, double delta_prng) {
  if (!(eps_covert >= 0.0 && eps_covert <= 0.5)) {
    throw std::domain_error("security_budget: eps_covert outside [0, 1/2]");
  }
  if (!(delta_prng >= 0.0 && delta_prng <= 0.5)) {
    throw std::domain_error("security_budget: delta_prng outside [0, 1/2]");
  }
  return {eps_covert, delta_prng, 2.0 * (eps_covert + delta_prng)};
}

RepetitionCode::RepetitionCode(std::uint64_t alphabet, unsigned repetitions)
    : alphabet_(alphabet), r_(repetitions) {
  if (alphabet < 2) throw std::domain_error("RepetitionCode: alphabet must be at least 2");
  if (repetitions < 1) throw std::domain_error("RepetitionCode: repetitions must be at least 1");
}

std::vector<std::uint64_t> RepetitionCode::encode(
    const std::vector<std::uint64_t>& info) const {
  std::vector<std::uint64_t> out;
  out.reserve(info.size() * r_);
  for (std::uint64_t s : info) {
    if (s >= alphabet_) throw std::domain_error("RepetitionCode::encode: symbol outside alphabet");
    out.insert(out.end(), r_, s);
  }
  return out;
}

std::pair<std::vector<std::uint64_t>, bool> RepetitionCode::decode(
    const std::vector<std::uint64_t>& received) const {
  if (received.size() % r_ != 0) {
    throw std::domain_error("RepetitionCode::decode: length not a multiple of r");
  }
  std::vector<std::uint64_t> info;
  info.reserve(received.size() / r_);
  bool uncorrected = false;
  for (std::size_t g = 0; g < received.size(); g += r_) {
    std::map<std::uint64_t, unsigned> votes;
    for (unsigned i = 0; i < r_; ++i) {
      if (received[g + i] >= alphabet_) {
        throw std::domain_error("RepetitionCode::decode: symbol outside alphabet");
      }
      ++votes[received[g + i]];
    }
    // plurality; a tied maximum means the group is unrecoverable
    std::uint64_t winner = 0;
    unsigned best = 0;
    unsigned best_count = 0;
    for (const auto& [sym, n] : votes) {
      if (n > best) {
        best = n;
        winner = sym;
        best_count = 1;
      } else if (n == best) {
        ++best_count;
      }
    }
    if (best_count > 1) uncorrected = true;
    info.push_back(winner);
  }
  return {std::move(info), uncorrected};
}

std::string SessionTranscript::to_text() const {
  std::string s;
  s += "mode = ";
  s += (mode == SessionMode::kInfoTheoretic) ? "info-theoretic\n" : "computational\n";
  append_kv(s, "nbar", params.nbar);
  append_kv(s, "eps", params.eps);
  append_kv(s, "d", params.d);
  append_kv(s, "D", params.D);
  append_kv(s, "M", params.M);
  append_kv(s, "alpha_max", params.alpha_max);
  append_kv(s, "p_c", p_c);
  append_kv(s, "runs", runs);
  append_kv(s, "aborted", aborted);
  append_kv(s, "key_recovered", key_recovered);
  append_kv(s, "master_seed", master_seed);
  append_kv(s, "initial_key_bits", ledger.initial_key_bits);
  append_kv(s, "consumed_bits", ledger.consumed_bits);
  append_kv(s, "produced_bits", ledger.produced_bits);
  append_kv(s, "net_bits", ledger.net_bits);
  append_kv(s, "produced_reliable_bits", ledger.produced_reliable_bits);
  append_kv(s, "net_reliable_bits", ledger.net_reliable_bits);
  append_kv(s, "eps_covert", security.eps_covert);
  append_kv(s, "delta_prng", security.delta_prng);
  append_kv(s, "secrecy_bound", security.secrecy_bound);
  for (std::size_t i = 0; i < decode_results.size(); ++i) {
    const auto& o = decode_results[i];
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "run %zu: block=%" PRIu64 " mode=%" PRIu64 " decoded=%" PRIu64
                  " clicks=%zu error=%d\n",
                  i, o.chosen_block, o.signal_mode, o.decoded_mode,
                  o.click_set.size(), o.symbol_error ? 1 : 0);
    s += buf;
  }
  return s;
}

SessionTranscript session_info_theoretic(const analytic::ProtocolParams& params,
                                         std::uint64_t runs,
                                         const Bits& shared_key,
                                         std::uint64_t master_seed) {
  params.validate();
  if (!montecarlo::is_power_of_two(params.M) || !montecarlo::is_power_of_two(params.D)) {
    throw std::domain_error("session_info_theoretic: M and D must be powers of two");
  }
  const unsigned mbits = montecarlo::ceil_log2(params.M);
  const unsigned dbits = montecarlo::ceil_log2(params.D);
  const double p_c = analytic::p_click_thermal(params.nbar);

  SessionTranscript t;
  t.mode = SessionMode::kInfoTheoretic;
  t.params = params;
  t.p_c = p_c;
  t.master_seed = master_seed;
  t.ledger.initial_key_bits = shared_key.size();

  montecarlo::BitReader key(shared_key);
  Rng msg_rng = Rng::stream(master_seed ^ kMsgStreamTag, 0);
  for (std::uint64_t i = 0; i < runs; ++i) {
    if (key.remaining() < mbits) {
      t.aborted = true;  // key exhausted: stop with a partial transcript
      break;
    }
    const std::uint64_t block = key.next_bits(mbits);  // M is a power of two
    std::uint64_t mode_index = 0;  // log2 D fresh message bits
    for (unsigned b = 0; b < dbits; ++b) {
      mode_index = (mode_index << 1) | (msg_rng.next_u64() & 1u);
    }
    Rng rng = Rng::stream(master_seed, i);
    auto outcome = montecarlo::channel_transmit(params.D, p_c, mode_index, rng);
    outcome.chosen_block = block;
    t.symbols_sent.emplace_back(block, mode_index);
    t.decode_results.push_back(std::move(outcome));
    ++t.runs;
  }

  t.ledger.consumed_bits = t.runs * mbits;
  t.ledger.produced_bits = t.runs * dbits;  // raw bits, log2 D per run
  t.ledger.net_bits = static_cast<std::int64_t>(t.ledger.produced_bits) -
                      static_cast<std::int64_t>(t.ledger.consumed_bits);
  const double delta = analytic::block_error_delta(params.D, p_c);
  const double cap = params.D >= 2 ? analytic::dary_capacity(params.D, delta) : 0.0;
  t.ledger.produced_reliable_bits = static_cast<double>(t.runs) * cap;
  t.ledger.net_reliable_bits =
      t.ledger.produced_reliable_bits - static_cast<double>(t.ledger.consumed_bits);
  t.security = security_budget(params.eps, 0.0);
  return t;
}

SessionTranscript session_computational(const analytic::ProtocolParams& params,
                                        const Bits& k0,
                                        std::uint64_t new_key_bits,
                                        const DarySymbolCode& code,
                                        double delta_prng,
                                        std::uint64_t master_seed) {
  params.validate();
  if (!montecarlo::is_power_of_two(params.M) || !montecarlo::is_power_of_two(params.D)) {
    throw std::domain_error("session_computational: M and D must be powers of two");
  }
  if (params.D < 2) throw std::domain_error("session_computational: D must be at least 2");
  if (code.alphabet_size() != params.D) {
    throw std::domain_error("session_computational: code alphabet must equal D");
  }
  const unsigned mbits = montecarlo::ceil_log2(params.M);
  const unsigned dbits = montecarlo::ceil_log2(params.D);
  if (new_key_bits == 0 || new_key_bits % dbits != 0) {
    throw std::domain_error("session_computational: new_key_bits must be a positive multiple of log2 D");
  }
  const double p_c = analytic::p_click_thermal(params.nbar);

  SessionTranscript t;
  t.mode = SessionMode::kComputational;
  t.params = params;
  t.p_c = p_c;
  t.master_seed = master_seed;
  t.ledger.initial_key_bits = k0.size();

  // Step 2: Alice draws the fresh key k1.
  Rng k1_rng = Rng::stream(master_seed ^ kK1StreamTag, 0);
  const Bits k1 = random_bits(k1_rng, new_key_bits);

  // Step 3: pack into D-ary symbols and encode.
  std::vector<std::uint64_t> info;
  {
    montecarlo::BitReader reader(k1);
    for (std::uint64_t i = 0; i < new_key_bits / dbits; ++i) {
      info.push_back(reader.next_bits(dbits));
    }
  }
  const auto codeword = code.encode(info);

  // Both sides derive the block schedule from the shared keystream.
  montecarlo::BitReader schedule(keystream(k0, codeword.size() * std::max(mbits, 1u)));

  std::vector<std::uint64_t> received;
  received.reserve(codeword.size());
  for (std::size_t j = 0; j < codeword.size(); ++j) {
    const std::uint64_t block = (mbits > 0) ? schedule.next_bits(mbits) : 0;
    Rng rng = Rng::stream(master_seed, j);
    auto outcome = montecarlo::channel_transmit(params.D, p_c, codeword[j], rng);
    outcome.chosen_block = block;
    received.push_back(outcome.decoded_mode);
    t.symbols_sent.emplace_back(block, codeword[j]);
    t.decode_results.push_back(std::move(outcome));
    ++t.runs;
  }

  // Steps 4-5: Bob error-corrects and unpacks.
  const auto [recovered, uncorrected] = code.decode(received);
  Bits k1_bob;
  k1_bob.reserve(new_key_bits);
  for (std::uint64_t sym : recovered) {
    for (int b = static_cast<int>(dbits) - 1; b >= 0; --b) {
      k1_bob.push_back(static_cast<std::uint8_t>((sym >> b) & 1u));
    }
  }
  t.key_recovered = (k1_bob == k1);
  (void)uncorrected;  // a flagged group may still vote correctly; the bit
                      // comparison above is the ground truth

  t.ledger.consumed_bits = k0.size();  // the seed is spent once
  t.ledger.produced_bits = t.key_recovered ? new_key_bits : 0;
  t.ledger.net_bits = static_cast<std::int64_t>(t.ledger.produced_bits) -
                      static_cast<std::int64_t>(t.ledger.consumed_bits);
  t.ledger.produced_reliable_bits = static_cast<double>(t.ledger.produced_bits);
  t.ledger.net_reliable_bits = static_cast<double>(t.ledger.net_bits);
  t.security = security_budget(params.eps, delta_prng);
  return t;
}

}  // namespace covertkey::protocol
