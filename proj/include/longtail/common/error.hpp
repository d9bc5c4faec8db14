// Copyright 2026 The Longtail Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LONGTAIL_COMMON_ERROR_HPP_
#define LONGTAIL_COMMON_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace longtail {

// Root of every error the library throws. The CLI maps `UsageError` to exit
// code 2 and everything else derived from `Error` to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `offset` is the byte position reported by the parser.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Input that parsed but violates a data-model invariant (dangling ids, bad
// polygons, missing fields, mixed extents, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// RLE run lengths that do not add up to height * width.
class CodecError : public Error {
 public:
  using Error::Error;
};

// Bad parameter values (threshold out of range, weights all zero, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Extent or length mismatch between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Nothing to choose from (empty curve, all weighted buckets empty).
class SelectionError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Wrong number of operands, e.g. a mosaic over anything but four samples.
class ArityError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace longtail

#endif  // LONGTAIL_COMMON_ERROR_HPP_
