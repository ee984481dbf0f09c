#pragma once

#include <stdexcept>
#include <string>

namespace modiso {

/// A computation would exceed the configured element or dimension cap.
class ResourceCap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The hypotheses of an operation do not hold for the given group.
class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An invariant list failed validation where a valid one was required.
class InvalidList : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual or JSON input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two lists do not share their first eight entries.
class PrefixMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The following signal implementation bugs, never bad input.

class NoSolution : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class WellDefinednessViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class PipelineDegenerate : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace modiso
