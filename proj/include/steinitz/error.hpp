#pragma once

#include <stdexcept>
#include <string>

namespace steinitz {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (group specs, field specs, arguments).
class SpecError : public Error {
public:
  using Error::Error;
};

/// A construction would exceed the configured carrier-size cap.
class CapExceeded : public SpecError {
public:
  using SpecError::SpecError;
};

/// Declared field data contradicts itself or a computed value.
class DeclaredDataError : public Error {
public:
  using Error::Error;
};

/// The requested computation is outside the implemented branch.
class UnsupportedBranch : public Error {
public:
  using Error::Error;
};

/// A guaranteed mathematical fact failed to hold: this is an engine bug.
class EngineAssertion : public Error {
public:
  using Error::Error;
};

inline void engine_check(bool cond, const std::string& what) {
  if (!cond) throw EngineAssertion(what);
}

} // namespace steinitz
