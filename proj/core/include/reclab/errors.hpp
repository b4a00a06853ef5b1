#pragma once

#include <stdexcept>
#include <string>

namespace reclab {

// Guarded fixed-point arithmetic could not separate a value from a decision
// threshold; results depending on the comparison are meaningless.
class precision_error : public std::runtime_error {
 public:
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// A generator or scan would exceed its configured size cap.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace reclab
