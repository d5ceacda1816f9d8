#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace x1 {

/// Base class for every error raised by the x1 library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input that fails a documented contract (bad tag, bad schema, bad argument).
class ValidationError : public Error {
public:
  using Error::Error;
};

class UnknownLanguage : public ValidationError {
public:
  explicit UnknownLanguage(const std::string &tag)
      : ValidationError("unknown language: '" + tag + "'") {}
};

class UnknownCountry : public ValidationError {
public:
  explicit UnknownCountry(const std::string &country)
      : ValidationError("unknown country/region: '" + country + "'") {}
};

class ReservedMarkerInPayload : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class FedAfterStop : public Error {
public:
  FedAfterStop() : Error("repeat guard fed after it already stopped") {}
};

class Indeterminate : public Error {
public:
  Indeterminate() : Error("language is indeterminate for empty text") {}
};

class NoNumberFound : public Error {
public:
  NoNumberFound() : Error("no extractable number") {}
};

class NoPivotAvailable : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class MalformedTrajectory : public Error {
public:
  using Error::Error;
};

class JudgeUnparseable : public Error {
public:
  using Error::Error;
};

class ScorerFailure : public Error {
public:
  using Error::Error;
};

class JoinFailure : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class AlignmentMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class IncompleteRuns : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class AllVotesInvalid : public Error {
public:
  AllVotesInvalid() : Error("no language produced a valid numeric vote") {}
};

class IoError : public Error {
public:
  using Error::Error;
};

class SchemaError : public ValidationError {
public:
  SchemaError(const std::string &file, std::size_t line, const std::string &what)
      : ValidationError(file + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Endpoint could not be reached, or kept failing after all retries.
class EndpointUnavailable : public Error {
public:
  using Error::Error;
};

/// Mock or replay endpoint has no entry for the requested id.
class FixtureMiss : public Error {
public:
  explicit FixtureMiss(const std::string &request_id)
      : Error("no fixture for request_id " + request_id) {}
};

} // namespace x1
