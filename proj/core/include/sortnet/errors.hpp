#pragma once

#include <stdexcept>
#include <string>

namespace sortnet {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input document is syntactically broken; message carries line/field context.
struct ParseError : Error {
  using Error::Error;
};

// Document parsed but violates a model invariant (bad route, self-loop, ...).
struct ValidationError : Error {
  using Error::Error;
};

// An enumeration limit was hit before the search was exhaustive.
// Distinct from a NO answer: the caller learns nothing about the instance.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Exhaustive coloring enumeration would exceed the configured cap.
struct InfeasibleExhaustive : Error {
  using Error::Error;
};

// Dynamic-programming table growth hit the configured cap.
struct StateSpaceExceeded : Error {
  using Error::Error;
};

// Exact treewidth mode refused an input above its vertex cap.
struct ExactCapExceeded : Error {
  using Error::Error;
};

struct CycleDetected : Error {
  using Error::Error;
};

struct InvalidPrefix : Error {
  using Error::Error;
};

struct InvalidCover : Error {
  using Error::Error;
};

struct InvalidSourceSolution : Error {
  using Error::Error;
};

}  // namespace sortnet
