// softctc/errors.h

// Copyright 2026  The softctc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SOFTCTC_ERRORS_H_
#define SOFTCTC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace softctc {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a type invariant (shape, normalization, vocabulary...).
class ValidationError : public Error {
 public:
  enum class Kind {
    kRowNotNormalized,
    kNegativeEntry,
    kShapeMismatch,
    kInvalidVocabulary,
    kInvalidLabeling,
    kInvalidNBest,
    kInvalidConfusionNetwork,
    kInvalidConfig,
  };

  ValidationError(Kind kind, const std::string &what, int frame = -1,
                  int symbol = -1)
      : Error(what), kind_(kind), frame_(frame), symbol_(symbol) {}

  Kind kind() const { return kind_; }
  // Offending frame / symbol where applicable, -1 otherwise.
  int frame() const { return frame_; }
  int symbol() const { return symbol_; }

 private:
  Kind kind_;
  int frame_;
  int symbol_;
};

// No admissible alignment exists between the posteriors and the target.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Brute-force enumeration refused because the search space is over budget.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// A confusion set whose null probability leaves no mass for its blank.
class DegenerateSetError : public Error {
 public:
  DegenerateSetError(int set_index, const std::string &what)
      : Error(what), set_index_(set_index) {}
  int set_index() const { return set_index_; }

 private:
  int set_index_;
};

// Malformed file contents.
class ParseError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace softctc

#endif  // SOFTCTC_ERRORS_H_
