// Copyright 2026 The ginvq Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ginvq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape or dimension mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Bad argument values other than shapes (probabilities, tolerances, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Iterative routine failed to converge, or a non-finite value appeared.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input (JSON structure, number encoding).
class FormatError : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  NotHermitian(double residual)
      : Error("matrix is not Hermitian (residual " + std::to_string(residual) +
              ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A computed inverse failed its own axiom check.
class ResidualError : public Error {
 public:
  ResidualError(const std::string& axiom, double residual)
      : Error("axiom " + axiom + " residual " + std::to_string(residual) +
              " exceeds tolerance"),
        axiom_(axiom),
        residual_(residual) {}
  const std::string& axiom() const noexcept { return axiom_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string axiom_;
  double residual_;
};

// Group inverse requested for a matrix of Drazin index > 1.
class IndexTooLarge : public Error {
 public:
  explicit IndexTooLarge(std::size_t index)
      : Error("Drazin index " + std::to_string(index) +
              " > 1: group inverse does not exist"),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NotCP : public Error {
 public:
  explicit NotCP(double min_eigenvalue)
      : Error("Choi matrix has eigenvalue " + std::to_string(min_eigenvalue) +
              " below the PSD floor"),
        min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

}  // namespace ginvq
