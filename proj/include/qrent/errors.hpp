// Copyright 2026 The qrent Authors
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
#include <utility>

namespace qrent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed something structurally wrong (missing split, bad shape,
/// non-Hermitian matrix, malformed spec string).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach its requested accuracy.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}

  /// Accuracy actually reached (error estimate or residual).
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A theorem hypothesis required by a closed-form constructor failed.
class HypothesisError : public Error {
 public:
  HypothesisError(const std::string& what, std::string theorem)
      : Error(what), theorem_(std::move(theorem)) {}

  const std::string& theorem() const noexcept { return theorem_; }

 private:
  std::string theorem_;
};

}  // namespace qrent
