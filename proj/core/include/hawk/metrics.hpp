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

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hawk {

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

struct DepthStats {
  long long attempts = 0;  // rounds that verified candidates at this depth
  long long accepts = 0;   // ... and accepted one of them
  double rate() const {
    return attempts > 0 ? static_cast<double>(accepts) / attempts : 0.0;
  }
};

struct RejectionCurvePoint {
  int candidates = 0;  // m
  double dual = 1.0;        // mean rejection mass, vertical + horizontal pools
  double horizontal = 1.0;  // mean rejection mass, horizontal-only pools
};

struct KlPoint {
  int position = 0;
  double kl = 0.0;  // KL(q_vertical || q_horizontal), depth 1 each
};

// accept_length / (1 + draft_overhead_ratio). Throws ValidationError when
// accept_length < 1 or the ratio is negative.
double modeled_speedup(double accept_length, double draft_overhead_ratio);

struct MetricsReport {
  std::string mode;
  long long rounds = 0;
  long long committed = 0;
  long long target_passes = 0;
  std::vector<DepthStats> depth;  // index n - 1 for tree depth n
  double draft_overhead_ratio = 0.0;
  std::vector<RejectionCurvePoint> rejection_curve;
  std::vector<KlPoint> kl_trace;
  double wall_clock_ms = 0.0;

  // Committed tokens per target pass.
  double accept_length() const;
  double modeled_speedup() const;

  // Adds counters and wall clock. Order-independent; curves and traces are
  // attached after aggregation and are not merged.
  void merge(const MetricsReport& other);
};

// Column order: mode, rounds, committed, target_passes, accept_length,
// modeled_speedup, draft_overhead_ratio, accept_rate_d1 .. accept_rate_dN
// where N is the deepest depth over `reports` (blank when a mode has fewer).
void write_metrics_csv(std::ostream& out, std::span<const MetricsReport> reports);

// m, dual, horizontal.
void write_rejection_curve_csv(std::ostream& out,
                               std::span<const RejectionCurvePoint> curve);

// position, kl.
void write_kl_trace_csv(std::ostream& out, std::span<const KlPoint> trace);

// Structured JSON summary (includes wall clock, so it is not reproducible
// byte-for-byte; CSV outputs are).
std::string metrics_summary_json(std::span<const MetricsReport> reports);

}  // namespace hawk
