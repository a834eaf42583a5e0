#pragma once

#include <stdexcept>
#include <string>

namespace ks1d {

/// Argument outside the mathematical domain of a law or functional (u < 0, NaN, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched array lengths or grid sizes.
class SizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A functional was requested outside the regime where it is defined
/// (e.g. the critical-case form of the new functional with p != 1).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid run configuration. Carries the offending key (dotted path).
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace ks1d
