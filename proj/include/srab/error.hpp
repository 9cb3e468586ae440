// SPDX-FileCopyrightText: (c) 2026 The srab authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace srab {

enum class ErrorKind {
  Configuration,
  ShapeMismatch,
  BadMagic,
  VersionMismatch,
  FileShapeMismatch,
  TruncatedFile,
  Io,
  UnsupportedBitDepth,
  UnsupportedFormat,
  EmptyRegion,
  Data,
};

const char *to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// C API can map it onto a stable status code.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string &what);

inline void require(bool ok, ErrorKind kind, const std::string &what) {
  if (!ok)
    raise(kind, what);
}

} // namespace srab
