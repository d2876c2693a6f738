/*
 * Copyright 2026 The pimgold Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace pimgold {

/// Base of every error raised by the library. Each subclass names one
/// failure class so callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PIMGOLD_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

PIMGOLD_DEFINE_ERROR(InvalidGeometry);
PIMGOLD_DEFINE_ERROR(ConfigError);
PIMGOLD_DEFINE_ERROR(OutOfRange);
PIMGOLD_DEFINE_ERROR(OverlapError);
PIMGOLD_DEFINE_ERROR(WidthError);
PIMGOLD_DEFINE_ERROR(TopologyError);
PIMGOLD_DEFINE_ERROR(BadOperand);
PIMGOLD_DEFINE_ERROR(UnknownMnemonic);
PIMGOLD_DEFINE_ERROR(MappingError);
PIMGOLD_DEFINE_ERROR(OverflowError);
PIMGOLD_DEFINE_ERROR(DomainError);
PIMGOLD_DEFINE_ERROR(UnsupportedDesign);
PIMGOLD_DEFINE_ERROR(InsufficientData);
PIMGOLD_DEFINE_ERROR(DegenerateDesign);

#undef PIMGOLD_DEFINE_ERROR

}  // namespace pimgold
