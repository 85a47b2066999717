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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "covertkey/analytic.hpp"
#include "covertkey/fock.hpp"
#include "covertkey/montecarlo.hpp"
#include "covertkey/protocol.hpp"
#include "covertkey/rng.hpp"
#include "covertkey/sweep.hpp"

namespace {

// exit codes
constexpr int kOk = 0;
constexpr int kInfeasible = 1;  // also: failed session
constexpr int kUsage = 2;       // usage or domain error
constexpr int kIo = 3;

void print_kv(const char* key, double v) { std::printf("%-22s = %.9g\n", key, v); }
void print_kv(const char* key, const char* v) { std::printf("%-22s = %s\n", key, v); }
void print_kv(const char* key, bool v) { print_kv(key, v ? "true" : "false"); }
void print_kv(const char* key, std::uint64_t v) {
  std::printf("%-22s = %llu\n", key, static_cast<unsigned long long>(v));
}

void print_analysis(const covertkey::analytic::ExpansionAnalysis& a) {
  print_kv("nbar", a.nbar);
  print_kv("eps", a.eps);
  print_kv("d", a.d);
  print_kv("alpha_max", a.alpha_max);
  print_kv("D", a.D);
  print_kv("M", a.M);
  print_kv("N", a.N);
  print_kv("beta", a.beta);
  print_kv("p0", a.p0);
  print_kv("p_c", a.p_c);
  print_kv("delta", a.delta);
  print_kv("capacity_bits", a.capacity_bits);
  print_kv("consumed_bits", a.consumed_bits);
  print_kv("produced_bits", a.produced_bits);
  print_kv("net_bits", a.net_bits);
  print_kv("condition_exact", a.condition_exact);
  print_kv("condition_simplified", a.condition_simplified);
  print_kv("regime_ok", a.regime_ok);
}

int cmd_analyze(double nbar, double eps, std::optional<double> d_opt,
                std::optional<std::uint64_t> D_opt, std::optional<double> M_opt,
                double alpha_max) {
  namespace an = covertkey::analytic;
  const double d = d_opt ? *d_opt : an::solve_d();
  print_kv("d_policy", d_opt ? "fixed" : "normalized");
  if (D_opt) {
    print_analysis(an::expansion_condition_exact(nbar, eps, d, *D_opt, alpha_max, M_opt));
    return kOk;
  }
  const auto res = an::optimize_block_size(nbar, eps, d, alpha_max);
  if (!res.feasible) {
    std::printf("status                 = no expanding configuration (no D with D*nbar <= alpha_max)\n");
    return kInfeasible;
  }
  print_kv("D_opt", res.best_D);
  print_analysis(res.analysis);
  if (!res.expanding) {
    std::printf("status                 = no expanding configuration\n");
    return kInfeasible;
  }
  std::printf("status                 = expanding\n");
  return kOk;
}

int cmd_sweep(const covertkey::sweep::SweepSpec& spec, const std::string& out_path) {
  const auto rows = covertkey::sweep::run_sweep(spec);
  const std::string csv = covertkey::sweep::to_csv(rows);
  if (out_path.empty() || out_path == "-") {
    std::fputs(csv.c_str(), stdout);
    return kOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open '%s' for writing\n", out_path.c_str());
    return kIo;
  }
  out << csv;
  return out.good() ? kOk : kIo;
}

int cmd_verify(int N, double q, double nbar, int cutoff) {
  namespace fk = covertkey::fock;
  const auto fb = fk::verify_filter_bound(N, q, nbar, cutoff);
  print_kv("N", static_cast<std::uint64_t>(N));
  print_kv("q", q);
  print_kv("nbar", nbar);
  print_kv("cutoff", static_cast<std::uint64_t>(cutoff));
  print_kv("eps", fb.eps);
  print_kv("eps_iid", fb.eps_iid);
  print_kv("p0", fb.p0);
  print_kv("filter_bound_rhs", fb.bound_rhs);
  print_kv("filter_bound_holds", fb.bound_holds);
  print_kv("mixture_sum", fb.mixture_sum);
  print_kv("mixture_residual", fb.residual);
  print_kv("mixture_dir_holds", fb.mixture_direction_holds);
  for (std::size_t k = 0; k < fb.eps_k.size(); ++k) {
    std::printf("eps_k[%zu]               = %.9g  (p_k = %.9g)\n", k, fb.eps_k[k], fb.p_k[k]);
  }
  const auto sb = fk::verify_secrecy_bound(N, nbar, N, cutoff);
  print_kv("secrecy_lhs", sb.lhs);
  print_kv("secrecy_rhs", sb.rhs);
  print_kv("secrecy_bound_holds", sb.holds);
  return (fb.bound_holds && sb.holds) ? kOk : kInfeasible;
}

int cmd_simulate(std::optional<double> nbar, std::optional<double> pc,
                 std::uint64_t D, std::uint64_t M, std::uint64_t trials,
                 std::uint64_t seed) {
  namespace mc = covertkey::montecarlo;
  if (nbar.has_value() == pc.has_value()) {
    std::fprintf(stderr, "error: give exactly one of --nbar and --pc\n");
    return kUsage;
  }
  const double p_c = pc ? *pc : covertkey::analytic::p_click_thermal(*nbar);
  const auto r = mc::run_campaign(M, D, p_c, trials, seed);
  print_kv("D", r.D);
  print_kv("M", r.M);
  print_kv("p_c", r.p_c);
  print_kv("trials", r.trials);
  print_kv("master_seed", r.master_seed);
  print_kv("collision_rate", r.collision_rate);
  print_kv("collision_ci95", r.collision_ci);
  print_kv("symbol_error_rate", r.symbol_error_rate);
  print_kv("symbol_error_ci95", r.symbol_error_ci);
  print_kv("analytic_delta", r.analytic_delta);
  const double se = std::sqrt(r.analytic_delta * (1.0 - r.analytic_delta) /
                              static_cast<double>(r.trials));
  const double z = se > 0.0 ? (r.collision_rate - r.analytic_delta) / se : 0.0;
  print_kv("z_score", z);
  print_kv("consumed_bits_per_run", r.consumed_bits_per_run);
  print_kv("produced_raw_per_run", r.produced_raw_bits_per_run);
  print_kv("total_consumed_bits", r.total_consumed_bits);
  return kOk;
}

struct SessionConfig {
  std::map<std::string, std::string> kv;
  std::string get(const std::string& key, const std::string& fallback = "") const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  }
  bool has(const std::string& key) const { return kv.count(key) > 0; }
  double get_num(const std::string& key, double fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
  }
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stoull(it->second);
  }
};

SessionConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  SessionConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": empty key or value");
    }
    cfg.kv[key] = value;
  }
  return cfg;
}

int cmd_session(const std::string& config_path, std::optional<std::uint64_t> seed_flag) {
  namespace pr = covertkey::protocol;
  namespace an = covertkey::analytic;
  const SessionConfig cfg = parse_config(config_path);

  const std::string mode = cfg.get("mode");
  if (mode != "info-theoretic" && mode != "computational") {
    throw std::invalid_argument(config_path + ": 'mode' must be info-theoretic or computational");
  }
  an::ProtocolParams params;
  params.nbar = cfg.get_num("nbar", 0.0);
  params.eps = cfg.get_num("eps", 0.1);
  params.d = cfg.has("d") ? cfg.get_num("d", 0.0) : an::solve_d();
  params.D = cfg.get_u64("D", 2);
  params.M = cfg.get_u64("M", 1);
  params.alpha_max = cfg.get_num("alpha_max", 0.1);
  const std::uint64_t seed = seed_flag ? *seed_flag : cfg.get_u64("seed", 1);

  pr::SessionTranscript t;
  if (mode == "info-theoretic") {
    const std::uint64_t runs = cfg.get_u64("runs", 1);
    const std::uint64_t key_bits = cfg.get_u64(
        "shared_key_bits", runs * covertkey::montecarlo::ceil_log2(params.M));
    // simulation convenience: the pre-shared key is derived from the seed
    covertkey::Rng key_rng = covertkey::Rng::stream(seed ^ 0x5eedULL, 0);
    pr::Bits shared_key(key_bits);
    for (auto& b : shared_key) b = key_rng.next_u64() & 1u;
    t = pr::session_info_theoretic(params, runs, shared_key, seed);
  } else {
    const std::uint64_t k0_bits = cfg.get_u64("k0_bits", 128);
    const std::uint64_t new_key_bits = cfg.get_u64("new_key_bits", 1024);
    const auto reps = static_cast<unsigned>(cfg.get_u64("repetition", 1));
    const double delta_prng = cfg.get_num("delta_prng", 0.0);
    covertkey::Rng k0_rng = covertkey::Rng::stream(seed ^ 0x6b30ULL, 0);
    pr::Bits k0(k0_bits);
    for (auto& b : k0) b = k0_rng.next_u64() & 1u;
    pr::RepetitionCode code(params.D, reps);
    t = pr::session_computational(params, k0, new_key_bits, code, delta_prng, seed);
  }
  std::fputs(t.to_text().c_str(), stdout);
  return (!t.aborted && t.key_recovered) ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covert-communication key expansion toolkit"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "closed-form expansion analysis");
  double a_nbar = 0.0, a_eps = 0.0, a_alpha = 0.1;
  std::optional<double> a_d, a_M;
  std::optional<std::uint64_t> a_D;
  analyze->add_option("--nbar", a_nbar, "mean thermal photons per mode")->required();
  analyze->add_option("--eps", a_eps, "target detection bias")->required();
  analyze->add_option("--d", a_d, "i.i.d. mean signal count (default: normalized)");
  analyze->add_option("--D", a_D, "block size (default: optimize)");
  analyze->add_option("--M", a_M, "override block count");
  analyze->add_option("--alpha-max", a_alpha, "cap on D*nbar")->capture_default_str();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "optimal net key vs noise, CSV output");
  covertkey::sweep::SweepSpec spec;
  std::string s_out;
  std::optional<double> s_d;
  sweep_cmd->add_option("--nbar-min", spec.nbar_min, "smallest nbar")->capture_default_str();
  sweep_cmd->add_option("--nbar-max", spec.nbar_max, "largest nbar")->capture_default_str();
  sweep_cmd->add_option("--points", spec.points, "log-spaced grid points")->capture_default_str();
  sweep_cmd->add_option("--eps", spec.eps_list, "detection bias values")
      ->expected(-1);
  sweep_cmd->add_option("--d", s_d, "fixed d (default: normalized)");
  sweep_cmd->add_option("--alpha-max", spec.alpha_max, "cap on D*nbar")->capture_default_str();
  sweep_cmd->add_option("--out", s_out, "output path ('-' for stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "brute-force detection-bias oracle");
  int v_N = 4, v_cutoff = 6;
  double v_q = 0.25, v_nbar = 0.5;
  verify->add_option("--N", v_N, "modes")->capture_default_str();
  verify->add_option("--q", v_q, "per-mode signal probability")->capture_default_str();
  verify->add_option("--nbar", v_nbar, "mean thermal photons")->capture_default_str();
  verify->add_option("--cutoff", v_cutoff, "photon-count cutoff")->capture_default_str();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo decode campaign");
  std::optional<double> m_nbar, m_pc;
  std::uint64_t m_D = 100, m_M = 1, m_trials = 100000, m_seed = 1;
  simulate->add_option("--nbar", m_nbar, "mean thermal photons");
  simulate->add_option("--pc", m_pc, "per-mode click probability");
  simulate->add_option("--D", m_D, "block size")->capture_default_str();
  simulate->add_option("--M", m_M, "number of blocks")->capture_default_str();
  simulate->add_option("--trials", m_trials, "trials")->capture_default_str();
  simulate->add_option("--seed", m_seed, "master seed")->capture_default_str();

  // session
  auto* session = app.add_subcommand("session", "end-to-end key expansion session");
  std::string c_config;
  std::optional<std::uint64_t> c_seed;
  session->add_option("--config", c_config, "flat key = value config file")->required();
  session->add_option("--seed", c_seed, "override the config's seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(a_nbar, a_eps, a_d, a_D, a_M, a_alpha);
    if (*sweep_cmd) {
      if (s_d) {
        spec.normalized_d = false;
        spec.d_value = *s_d;
      }
      return cmd_sweep(spec, s_out);
    }
    if (*verify) return cmd_verify(v_N, v_q, v_nbar, v_cutoff);
    if (*simulate) return cmd_simulate(m_nbar, m_pc, m_D, m_M, m_trials, m_seed);
    if (*session) return cmd_session(c_config, c_seed);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
