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

#include "covertkey/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "covertkey/analytic.hpp"

namespace covertkey::sweep {

void SweepSpec::validate() const {
  if (!(nbar_min > 0.0 && nbar_min < nbar_max)) {
    throw std::domain_error("sweep: need 0 < nbar_min < nbar_max");
  }
  if (points < 2) throw std::domain_error("sweep: points must be at least 2");
  if (eps_list.empty()) throw std::domain_error("sweep: eps_list must be nonempty");
  for (double e : eps_list) {
    if (!(e > 0.0 && e < 0.5)) throw std::domain_error("sweep: eps outside (0, 1/2)");
  }
  if (!normalized_d && !(d_value > 0.0)) {
    throw std::domain_error("sweep: fixed d policy requires d > 0");
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const double d = spec.normalized_d ? analytic::solve_d() : spec.d_value;
  const double step = std::pow(spec.nbar_max / spec.nbar_min,
                               1.0 / (spec.points - 1));
  std::vector<SweepRow> rows;
  double nbar = spec.nbar_min;
  for (int i = 0; i < spec.points; ++i, nbar *= step) {
    if (i == spec.points - 1) nbar = spec.nbar_max;  // avoid drift at the end
    for (double eps : spec.eps_list) {
      const auto res = analytic::optimize_block_size(nbar, eps, d, spec.alpha_max);
      if (!res.feasible) continue;
      const auto& a = res.analysis;
      rows.push_back({nbar, eps, res.best_D, a.M, a.N, a.delta,
                      a.capacity_bits, a.consumed_bits, a.net_bits});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRow& x, const SweepRow& y) {
    if (x.nbar != y.nbar) return x.nbar < y.nbar;
    return x.eps < y.eps;
  });
  return rows;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "nbar,eps,D_opt,M,N,delta,capacity_bits,consumed_bits,net_bits\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%.9g,%.9g,%llu,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                  r.nbar, r.eps, static_cast<unsigned long long>(r.D_opt),
                  r.M, r.N, r.delta, r.capacity_bits, r.consumed_bits,
                  r.net_bits);
    out += buf;
  }
  return out;
}

}  // namespace covertkey::sweep
