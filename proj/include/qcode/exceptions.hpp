// Copyright 2026 The qcode Authors
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

namespace qcode {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The declared standard errors do not generate an orthonormal basis.
class NonOrthonormalBasis : public Error {
 public:
  using Error::Error;
};

/// Decoded state is entangled across the logical cut.
class NotCorrigible : public Error {
 public:
  using Error::Error;
};

class NotAProduct : public Error {
 public:
  using Error::Error;
};

/// A unitary maps part of the illegal subspace into the legal one.
class NotLegal : public Error {
 public:
  using Error::Error;
};

class SpecParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcode
