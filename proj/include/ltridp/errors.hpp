#pragma once

#include <stdexcept>
#include <string>

namespace ltridp {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// File contents are not in a supported encoding.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Image or grid dimensions violate an operation's size precondition.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (e.g. a border pixel).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Vector lengths or stored dimensions disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Training or evaluation data cannot support the requested operation
/// (single class, too few samples for the requested folds, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace ltridp
