/* Copyright 2026 The stylprint Authors. All Rights Reserved.

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

namespace stylprint {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Corpus file could not be parsed. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  enum class Kind {
    kMalformedLine,
    kUnknownTag,
    kEmptySentence,
    kMissingHeaderField,
  };

  ParseError(Kind kind, std::size_t line, const std::string& what)
      : Error(what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// Precondition failure in one of the analysis operations.
class AnalysisError : public Error {
 public:
  enum class Kind {
    kEmptyInput,
    kEmptyList,
    kEmptyCorpus,
    kZeroCorpus,
    kInvalidCounts,
    kDegenerateCategory,
    kEmptyFilterResult,
    kTooFewSentences,
    kEmptyText,
    kDuplicateId,
    kInvalidMatrix,
    kTooFewLeaves,
    kLabelMismatch,
    kInvalidText,
  };

  AnalysisError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace stylprint
