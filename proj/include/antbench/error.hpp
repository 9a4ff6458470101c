// Copyright 2026 The antbench Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace antbench {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or record. The message names the offending record.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace antbench
