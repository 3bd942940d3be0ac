// Copyright 2026 The Hawk Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hawk/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "hawk/errors.hpp"

namespace hawk {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

double modeled_speedup(double accept_length, double draft_overhead_ratio) {
  if (!(accept_length >= 1.0)) {
    throw ValidationError("accept_length must be >= 1");
  }
  if (!(draft_overhead_ratio >= 0.0)) {
    throw ValidationError("draft_overhead_ratio must be >= 0");
  }
  return accept_length / (1.0 + draft_overhead_ratio);
}

double MetricsReport::accept_length() const {
  return target_passes > 0
             ? static_cast<double>(committed) / static_cast<double>(target_passes)
             : 0.0;
}

double MetricsReport::modeled_speedup() const {
  if (target_passes == 0) return 0.0;
  return hawk::modeled_speedup(accept_length(), draft_overhead_ratio);
}

void MetricsReport::merge(const MetricsReport& other) {
  rounds += other.rounds;
  committed += other.committed;
  target_passes += other.target_passes;
  if (depth.size() < other.depth.size()) depth.resize(other.depth.size());
  for (std::size_t n = 0; n < other.depth.size(); ++n) {
    depth[n].attempts += other.depth[n].attempts;
    depth[n].accepts += other.depth[n].accepts;
  }
  wall_clock_ms += other.wall_clock_ms;
}

void write_metrics_csv(std::ostream& out,
                       std::span<const MetricsReport> reports) {
  std::size_t max_depth = 0;
  for (const auto& r : reports) max_depth = std::max(max_depth, r.depth.size());
  out << "mode,rounds,committed,target_passes,accept_length,modeled_speedup,"
         "draft_overhead_ratio";
  for (std::size_t n = 1; n <= max_depth; ++n) out << ",accept_rate_d" << n;
  out << '\n';
  for (const auto& r : reports) {
    out << r.mode << ',' << r.rounds << ',' << r.committed << ','
        << r.target_passes << ',' << format_number(r.accept_length()) << ','
        << format_number(r.modeled_speedup()) << ','
        << format_number(r.draft_overhead_ratio);
    for (std::size_t n = 0; n < max_depth; ++n) {
      out << ',';
      if (n < r.depth.size()) out << format_number(r.depth[n].rate());
    }
    out << '\n';
  }
}

void write_rejection_curve_csv(std::ostream& out,
                               std::span<const RejectionCurvePoint> curve) {
  out << "m,dual,horizontal\n";
  for (const auto& point : curve) {
    out << point.candidates << ',' << format_number(point.dual) << ','
        << format_number(point.horizontal) << '\n';
  }
}

void write_kl_trace_csv(std::ostream& out, std::span<const KlPoint> trace) {
  out << "position,kl\n";
  for (const auto& point : trace) {
    out << point.position << ',' << format_number(point.kl) << '\n';
  }
}

std::string metrics_summary_json(std::span<const MetricsReport> reports) {
  nlohmann::ordered_json modes = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json rates = nlohmann::ordered_json::array();
    for (const auto& d : r.depth) rates.push_back(d.rate());
    modes.push_back({{"mode", r.mode},
                     {"rounds", r.rounds},
                     {"committed", r.committed},
                     {"target_passes", r.target_passes},
                     {"accept_length", r.accept_length()},
                     {"modeled_speedup", r.modeled_speedup()},
                     {"draft_overhead_ratio", r.draft_overhead_ratio},
                     {"depth_acceptance", rates},
                     {"rejection_curve_points", r.rejection_curve.size()},
                     {"kl_trace_points", r.kl_trace.size()},
                     {"wall_clock_ms", r.wall_clock_ms}});
  }
  return nlohmann::ordered_json{{"modes", modes}}.dump(2) + "\n";
}

}  // namespace hawk
