// Copyright 2026 The ddmine Authors
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

#ifndef DDMINE_ERROR_HPP
#define DDMINE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ddmine {

/// Problems with the input data or configuration files (bad cells, missing
/// columns, malformed taxonomies). The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied parameters (thresholds out of range, conflicting
/// flags). The CLI maps these to exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ddmine

#endif  // DDMINE_ERROR_HPP
