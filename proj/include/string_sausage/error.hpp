// SPDX-License-Identifier: Apache-2.0
//
// string-sausage: random strings moving through Poisson trap fields
// Copyright (C) 2026 The string-sausage authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#pragma once

#include <stdexcept>
#include <string>

namespace string_sausage {

// Invalid parameters or inputs. The CLI maps this to exit status 2.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A sampling-resolution guard failed in strict mode (CLI exit status 3).
class ResolutionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A trap environment does not cover the region a trajectory can touch.
// Survival estimates computed past this point would have the wrong law.
class CoverageError : public ResolutionError {
  public:
    using ResolutionError::ResolutionError;
};

} // namespace string_sausage
