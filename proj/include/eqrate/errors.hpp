// Copyright 2026 The eqrate Authors.
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

#ifndef EQRATE_ERRORS_HPP_
#define EQRATE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace eqrate {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class NonFinitePayoffError : public Error {
 public:
  using Error::Error;
};

class FileError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The requested approximation parameter admits no feasible distribution.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// An iterative solver hit its iteration limit (or stalled) before meeting
// its tolerances.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Match records do not cover every fixture a builder needs.
class MissingDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace eqrate

#endif  // EQRATE_ERRORS_HPP_
