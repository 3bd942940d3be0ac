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

#include <stdexcept>
#include <string>

namespace hawk {

// Raised when an argument violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised for positions or indices outside the token grid.
class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Raised when an operation is invoked in a state that does not allow it,
// e.g. asking for the next conditional of a fully generated grid.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hawk
