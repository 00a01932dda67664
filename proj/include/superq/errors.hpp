/* Copyright 2026 The superq Authors. All Rights Reserved.
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace superq {

// Base for every error raised by the library. The CLI maps these to exit
// code 1, except ConfigError which maps to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SUPERQ_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

SUPERQ_DEFINE_ERROR(NonHermitianInput)
SUPERQ_DEFINE_ERROR(DimensionMismatch)
SUPERQ_DEFINE_ERROR(UnsupportedDimension)
SUPERQ_DEFINE_ERROR(NotNormalized)
SUPERQ_DEFINE_ERROR(InvalidParams)
SUPERQ_DEFINE_ERROR(InvalidBoundary)
SUPERQ_DEFINE_ERROR(GridMismatch)
SUPERQ_DEFINE_ERROR(ChannelMismatch)
SUPERQ_DEFINE_ERROR(ZeroVector)
SUPERQ_DEFINE_ERROR(InvalidRadius)
SUPERQ_DEFINE_ERROR(AllDegenerate)
SUPERQ_DEFINE_ERROR(OrderingViolation)
SUPERQ_DEFINE_ERROR(InvalidCoupling)
SUPERQ_DEFINE_ERROR(ConfigError)

#undef SUPERQ_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Raised when two eigenvalues at grid point `index` are closer than the gap
// tolerance, so the instantaneous eigenbasis is not uniquely defined.
class DegenerateSpectrum : public Error {
 public:
  DegenerateSpectrum(std::size_t index, double gap)
      : Error("degenerate spectrum at grid point " + std::to_string(index) +
              " (gap " + std::to_string(gap) + ")"),
        index_(index),
        gap_(gap) {}
  std::size_t index() const { return index_; }
  double gap() const { return gap_; }

 private:
  std::size_t index_;
  double gap_;
};

}  // namespace superq
