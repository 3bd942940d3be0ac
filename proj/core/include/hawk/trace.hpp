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

#include "hawk/decoder.hpp"

namespace hawk {

// round,frontier_index,depth,source,alpha,accepted,committed_this_round
void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows);

// round,depth,source,alpha,accepted -- the verifier's per-step view.
void write_verify_steps_csv(std::ostream& out, std::span<const TraceRow> rows);

}  // namespace hawk
