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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "covertkey/analytic.hpp"

using namespace covertkey::analytic;

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-12));
  // frozen from independent evaluation of -p log2 p - (1-p) log2(1-p)
  CHECK(binary_entropy(0.0952) == doctest::Approx(0.4535926).epsilon(1e-3));
  CHECK(binary_entropy(0.3) == binary_entropy(0.7));
  CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.1), std::domain_error);
}

TEST_CASE("beta_thermal") {
  // 4 sqrt(2) / (4 * sqrt(2*0.5)) = sqrt(2)
  CHECK(beta_thermal(4.0 * std::sqrt(2.0), 0.5) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  const double d = solve_d();
  CHECK(beta_thermal(d, 1e-4) == doctest::Approx(99.6435350).epsilon(1e-6));
  CHECK(beta_thermal(d, 1e-6) == doctest::Approx(996.435350).epsilon(1e-6));
  CHECK_THROWS_AS(beta_thermal(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(beta_thermal(1.0, 0.0), std::domain_error);
}

TEST_CASE("p_zero_signals") {
  CHECK(p_zero_signals(5.6367) == doctest::Approx(std::exp(-5.6367)).epsilon(1e-12));
  CHECK(p_zero_signals(1.0, 1.0) == 0.0);  // q = 1 sends with certainty
  CHECK(std::fabs(p_zero_signals(1.0, 1e6) - std::exp(-1.0)) < 1e-6);
  CHECK_THROWS_AS(p_zero_signals(2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(p_zero_signals(-1.0), std::domain_error);
}

TEST_CASE("p_click_thermal") {
  CHECK(p_click_thermal(0.0) == 0.0);
  CHECK(p_click_thermal(1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p_click_thermal(1e-4) == doctest::Approx(9.999e-5).epsilon(1e-4));
  CHECK_THROWS_AS(p_click_thermal(-0.1), std::domain_error);
}

TEST_CASE("block_error_delta") {
  CHECK(block_error_delta(1, 0.7) == 0.0);
  CHECK(block_error_delta(2, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(block_error_delta(100000, 1e-6) == doctest::Approx(0.0951618).epsilon(1e-4));
  CHECK_THROWS_AS(block_error_delta(2, 1.0), std::domain_error);

  SUBCASE("nondecreasing in D and p_c") {
    double prev = 0.0;
    for (std::uint64_t D : {1, 2, 5, 20, 100, 1000}) {
      const double v = block_error_delta(D, 0.01);
      CHECK(v >= prev);
      prev = v;
    }
    prev = 0.0;
    for (double pc : {0.0, 0.001, 0.01, 0.1, 0.5, 0.9}) {
      const double v = block_error_delta(50, pc);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("dary_capacity") {
  for (std::uint64_t D : {2, 4, 16, 1024}) {
    CHECK(dary_capacity(D, 0.0) ==
          doctest::Approx(std::log2(static_cast<double>(D))).epsilon(1e-12));
    const double uniform_point = static_cast<double>(D - 1) / static_cast<double>(D);
    CHECK(dary_capacity(D, uniform_point) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  }
  CHECK(dary_capacity(4, 0.75) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(dary_capacity(100000, 0.0951616319) == doctest::Approx(14.5755734).epsilon(1e-4));
  CHECK_THROWS_AS(dary_capacity(1, 0.0), std::domain_error);

  SUBCASE("strictly decreasing in delta up to the uniform point") {
    const std::uint64_t D = 64;
    double prev = dary_capacity(D, 0.0);
    for (int i = 1; i <= 20; ++i) {
      const double delta = (static_cast<double>(D - 1) / D) * i / 20.0;
      const double c = dary_capacity(D, delta);
      CHECK(c < prev);
      prev = c;
    }
  }
}

TEST_CASE("required_modes") {
  CHECK(required_modes(1.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  const double d = solve_d();
  const double p0 = p_zero_signals(d);
  CHECK(required_modes(0.1, beta_thermal(d, 1e-4), p0) ==
        doctest::Approx(1e6).epsilon(1e-6));
  CHECK(required_modes(0.1, beta_thermal(d, 1e-6), p0) ==
        doctest::Approx(1e8).epsilon(1e-6));

  SUBCASE("normalized-d identity: N = 1/(nbar eps^2)") {
    for (double nbar : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
      for (double eps : {0.1, 0.01, 0.001}) {
        const double N = required_modes(eps, beta_thermal(d, nbar), p0);
        CHECK(N * nbar * eps * eps == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("solve_d") {
  const double d = solve_d();
  CHECK(d == doctest::Approx(5.6367).epsilon(1e-4));
  const double c = 4.0 * std::sqrt(2.0);
  CHECK(std::fabs(d - c * (1.0 - std::exp(-d))) < 1e-9);
  CHECK(d / (c * (1.0 - std::exp(-d))) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("expansion_condition_exact") {
  const double d = solve_d();

  SUBCASE("reference configuration nbar=1e-6, eps=0.1, D=1e5") {
    const auto a = expansion_condition_exact(1e-6, 0.1, d, 100000);
    CHECK(a.M == doctest::Approx(1000.0).epsilon(1e-6));
    CHECK(a.consumed_bits == doctest::Approx(9.9657843).epsilon(1e-6));
    CHECK(a.capacity_bits == doctest::Approx(14.5755734).epsilon(1e-6));
    CHECK(a.net_bits == doctest::Approx(4.6097891).epsilon(1e-5));
    CHECK(a.condition_exact);
    CHECK(a.condition_simplified);
    CHECK(a.net_bits == a.produced_bits - a.consumed_bits);
  }

  SUBCASE("D at the budget boundary fails the condition") {
    // beta/(eps(1-p0)) = 1e4 for nbar=1e-6, eps=0.1 with normalized d
    const auto a = expansion_condition_exact(1e-6, 0.1, d, 10000);
    CHECK_FALSE(a.condition_exact);
  }

  SUBCASE("condition_exact implies D > beta/(eps(1-p0))") {
    for (std::uint64_t D : {10, 100, 1000, 10000, 50000, 100000}) {
      const auto a = expansion_condition_exact(1e-6, 0.1, d, D);
      if (a.condition_exact) CHECK(a.D > a.beta / (a.eps * (1.0 - a.p0)));
    }
  }

  SUBCASE("pure: identical inputs give bit-identical outputs") {
    const auto a = expansion_condition_exact(1e-5, 0.01, d, 4096);
    const auto b = expansion_condition_exact(1e-5, 0.01, d, 4096);
    CHECK(a.net_bits == b.net_bits);
    CHECK(a.beta == b.beta);
    CHECK(a.delta == b.delta);
  }
}

TEST_CASE("expansion_condition_simplified") {
  CHECK(expansion_condition_simplified(100000, 1e-6, 0.1).holds);
  CHECK_FALSE(expansion_condition_simplified(1, 1e-6, 0.1).holds);
  // equality case: D = 1/(sqrt(nbar) eps) exactly
  CHECK_FALSE(expansion_condition_simplified(1000, 1e-4, 0.1).holds);
  // regime guard flags but still computes
  const auto c = expansion_condition_simplified(100000, 1e-3, 0.1);
  CHECK_FALSE(c.regime_ok);
  CHECK(c.holds);
}

TEST_CASE("approx_net_key") {
  CHECK(approx_net_key(0.1, 1e-6, 0.1) == doctest::Approx(4.9828921).epsilon(1e-5));
  CHECK(approx_net_key(0.1, 1e-2, 0.001) == doctest::Approx(-20.2637614).epsilon(1e-5));
  CHECK_THROWS_AS(approx_net_key(1.0, 1e-6, 0.1), std::domain_error);
  CHECK_THROWS_AS(approx_net_key(0.0, 1e-6, 0.1), std::domain_error);
  // alpha -> 1 limit is -2 log2(1/eps) < 0, independent of nbar
  CHECK(approx_net_key(0.999999, 1e-6, 0.1) ==
        doctest::Approx(-2.0 * std::log2(10.0)).epsilon(1e-3));
}

TEST_CASE("optimize_block_size") {
  const double d = solve_d();

  SUBCASE("low-noise optimum") {
    const auto r = optimize_block_size(1e-6, 0.1, d);
    REQUIRE(r.feasible);
    CHECK(r.expanding);
    CHECK(r.best_D >= 50000);
    CHECK(r.best_D <= 200000);
    CHECK(r.analysis.net_bits == doctest::Approx(4.6).epsilon(0.12));
    const double alpha = static_cast<double>(r.best_D) * 1e-6;
    CHECK(std::fabs(r.analysis.net_bits - approx_net_key(alpha, 1e-6, 0.1)) < 1.0);
  }

  SUBCASE("heavy noise has no feasible block size") {
    const auto r = optimize_block_size(1.0, 0.001, d);
    CHECK_FALSE(r.feasible);
    CHECK_FALSE(r.expanding);
  }

  SUBCASE("feasible but shrinking, not expanding") {
    const auto r = optimize_block_size(1e-2, 0.001, d);
    REQUIRE(r.feasible);
    CHECK_FALSE(r.expanding);
    CHECK(r.analysis.net_bits < 0.0);
  }

  SUBCASE("less noise strictly helps") {
    const auto hi = optimize_block_size(1e-4, 0.1, d);
    const auto lo = optimize_block_size(1e-6, 0.1, d);
    REQUIRE(hi.feasible);
    REQUIRE(lo.feasible);
    CHECK(lo.analysis.net_bits > hi.analysis.net_bits);
  }
}

TEST_CASE("ProtocolParams validation") {
  ProtocolParams p;
  p.nbar = 1e-4;
  p.eps = 0.1;
  p.d = 5.6367;
  p.D = 8;
  p.M = 4;
  CHECK_NOTHROW(p.validate());
  CHECK(p.total_modes() == 32);
  p.eps = 0.5;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p.eps = 0.1;
  p.nbar = -1.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
}
