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
#include <string>
#include <vector>

namespace covertkey::sweep {

struct SweepSpec {
  double nbar_min = 1e-7;
  double nbar_max = 1e-1;
  int points = 50;  // log-spaced in nbar
  std::vector<double> eps_list{0.1, 0.01, 0.001};
  bool normalized_d = true;  // d from solve_d(); else d_value
  double d_value = 0.0;
  double alpha_max = 0.1;

  void validate() const;
};

struct SweepRow {
  double nbar = 0.0;
  double eps = 0.0;
  std::uint64_t D_opt = 0;
  double M = 0.0;
  double N = 0.0;
  double delta = 0.0;
  double capacity_bits = 0.0;
  double consumed_bits = 0.0;
  double net_bits = 0.0;
};

// Optimal-D analysis per (nbar, eps) grid point. Grid points with no block
// size inside the D*nbar <= alpha_max regime produce no row. Rows are sorted
// by (nbar, eps).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// CSV with the fixed header row, 9 significant digits, byte-stable.
std::string to_csv(const std::vector<SweepRow>& rows);

}  // namespace covertkey::sweep
