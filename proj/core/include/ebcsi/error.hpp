// SPDX-License-Identifier: Apache-2.0
//
// ebcsi - environment subspace basis toolkit for partial-to-whole CSI prediction
// Copyright (C) 2026 The ebcsi authors
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

namespace ebcsi {

// Base of everything the library throws on contract violations.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class InvalidInput : public Error {
  public:
    using Error::Error;
};

class OutOfBounds : public Error {
  public:
    using Error::Error;
};

class RankDeficiency : public Error {
  public:
    RankDeficiency(const std::string &what, long rank, long required)
        : Error(what), rank_(rank), required_(required) {}

    long rank() const noexcept { return rank_; }
    long required() const noexcept { return required_; }

  private:
    long rank_;
    long required_;
};

class ConditioningError : public Error {
  public:
    ConditioningError(const std::string &what, double rcond)
        : Error(what + " (reciprocal condition estimate " + std::to_string(rcond) + ")"), rcond_(rcond) {}

    double rcond() const noexcept { return rcond_; }

  private:
    double rcond_;
};

class ChecksumError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace ebcsi
