#pragma once

#include <stdexcept>
#include <string>

namespace dmsi {

/// Malformed input: bad documents, out-of-range indices, dimension mismatches,
/// violated preconditions.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A coding scheme could not be produced (or decoded) for an otherwise valid input.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The exhaustive search would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dmsi
