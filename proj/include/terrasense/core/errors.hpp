#pragma once

#include <stdexcept>
#include <string>

namespace terrasense {

/// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed sensor-log record. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class EmptySeriesError : public Error {
 public:
  using Error::Error;
};

class EmptyPatchError : public Error {
 public:
  using Error::Error;
};

class MissingModalityError : public Error {
 public:
  using Error::Error;
};

class DegeneratePatchError : public Error {
 public:
  using Error::Error;
};

class RankDeficientError : public Error {
 public:
  using Error::Error;
};

class InvalidLoadError : public Error {
 public:
  using Error::Error;
};

class InvalidKinematicsError : public Error {
 public:
  using Error::Error;
};

class EmptyWindowError : public Error {
 public:
  using Error::Error;
};

/// A required stream does not cover the requested window. `stream()` names
/// the offending stream ("imu", "enc", "cur", "pose").
class MissingDataError : public Error {
 public:
  MissingDataError(const std::string& stream, const std::string& what)
      : Error("stream '" + stream + "': " + what), stream_(stream) {}
  const std::string& stream() const { return stream_; }

 private:
  std::string stream_;
};

class StabilityError : public Error {
 public:
  using Error::Error;
};

class OutOfProfileError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

class DegenerateLabelsError : public Error {
 public:
  using Error::Error;
};

class InsufficientClassDataError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class InvalidKError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace terrasense
