/* Copyright 2026 The snnpipe Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef SNNPIPE_ERRORS_HPP_
#define SNNPIPE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace snnpipe {

// Malformed input text (network files, datasets, CLI values).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or layer chains that do not fit together.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite values, NaN losses and similar numeric failures.
class NumericDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the pipeline simulator when a schedule breaks a dependency.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace snnpipe

#endif  // SNNPIPE_ERRORS_HPP_
