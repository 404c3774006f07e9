#pragma once

#include <stdexcept>
#include <string>

namespace satotate {

// Sieve or transform would exceed a configured size/memory limit.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

// Argument outside the range a precomputed table covers.
class RangeError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

// A required per-prime datum (angle, trace) is missing.
class IncompleteInputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Computed data contradicts a theorem it must satisfy (e.g. Deligne, Hasse).
class DataCorruptionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ChecksumError : public FormatError {
  public:
    using FormatError::FormatError;
};

}  // namespace satotate
