#pragma once

#include <stdexcept>
#include <string>

namespace rectilt {

/// Root of every error this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: malformed files, unknown names, shape mismatches.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A search bound (path length, resolution length, roster size) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class RelationIllFormed : public InputError {
 public:
  using InputError::InputError;
};

/// End(M)/rad End(M) has dimension > 1 but no splitting element was found.
/// Over Q this is where a nontrivial division algebra could be hiding.
class PossibleDivisionAlgebra : public Error {
 public:
  using Error::Error;
};

class NotTriangular : public InputError {
 public:
  using InputError::InputError;
};

/// A theorem's precondition failed; `culprit` names the failing hypothesis.
class HypothesisFailed : public Error {
 public:
  HypothesisFailed(std::string culprit, const std::string& what)
      : Error(what), culprit_(std::move(culprit)) {}
  const std::string& culprit() const noexcept { return culprit_; }

 private:
  std::string culprit_;
};

/// Two independent routes disagreed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rectilt
