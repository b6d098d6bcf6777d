#pragma once

#include <stdexcept>
#include <string>

namespace acl {

/// Base class for every error raised by the kernel.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed literal or script text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A value violates its invariants (non-monotone map, broken square, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The category does not provide the requested construction at all.
class CapabilityMissing : public Error {
 public:
  using Error::Error;
};

/// A limit or colimit that the construction needs does not exist.
class NoSuchLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace acl
