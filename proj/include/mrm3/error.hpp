#pragma once

#include <stdexcept>
#include <string>

namespace mrm3 {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised when a caller breaks an operation's precondition, e.g. parsing a
// document that does not validate.
class ContractError : public Error {
public:
  using Error::Error;
};

class StorageError : public Error {
public:
  using Error::Error;
};

class ReferentialIntegrityError : public StorageError {
public:
  using StorageError::StorageError;
};

class DuplicateRelationshipError : public StorageError {
public:
  using StorageError::StorageError;
};

class UnknownEntityError : public StorageError {
public:
  using StorageError::StorageError;
};

class SnapshotError : public StorageError {
public:
  SnapshotError(std::size_t line, const std::string &what)
      : StorageError("snapshot line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace mrm3
