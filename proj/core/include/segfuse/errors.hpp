// Copyright 2026 The Segfuse Authors.
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

#include <stdexcept>
#include <string>

namespace segfuse {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raster, mask, or volume dimensions do not line up.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A label value or channel count does not match the governing catalog.
class CatalogError : public Error {
 public:
  using Error::Error;
};

/// An instance segment carries a class whose role forbids it here.
class ClassRoleError : public Error {
 public:
  using Error::Error;
};

/// Encoded data (RLE runs, file headers) fails its structural invariants.
class CodecError : public Error {
 public:
  using Error::Error;
};

/// A declarative spec (scene, corruption, catalog, manifest) failed
/// validation. The message carries the offending field path.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Evaluation over a confusion matrix where every class is undefined.
class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace segfuse
