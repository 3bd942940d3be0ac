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

#include "hawk/trace.hpp"

#include <ostream>

namespace hawk {

void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows) {
  out << "round,frontier_index,depth,source,alpha,accepted,"
         "committed_this_round\n";
  for (const TraceRow& r : rows) {
    out << r.round << ',' << r.frontier_index << ',' << r.depth << ','
        << r.source << ',' << format_number(r.alpha) << ','
        << (r.accepted ? 1 : 0) << ',' << r.committed_this_round << '\n';
  }
}

void write_verify_steps_csv(std::ostream& out, std::span<const TraceRow> rows) {
  out << "round,depth,source,alpha,accepted\n";
  for (const TraceRow& r : rows) {
    out << r.round << ',' << r.depth << ',' << r.source << ','
        << format_number(r.alpha) << ',' << (r.accepted ? 1 : 0) << '\n';
  }
}

}  // namespace hawk
