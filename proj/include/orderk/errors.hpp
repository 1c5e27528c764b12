#pragma once

#include <stdexcept>
#include <string>

namespace orderk {

// Enumeration oracle asked for an instance beyond its configured budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A root bracket could not be established (no sign change after expansion), or a
// scan failed to find the event it was looking for.  Surfaced, never swallowed:
// it signals either a solver bug or a violated conjecture.
class BracketError : public std::runtime_error {
 public:
  explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

// Internal numerical failure: iteration cap exceeded, ambiguous mode at a
// solved boundary, and similar conditions that should never occur on valid input.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orderk
