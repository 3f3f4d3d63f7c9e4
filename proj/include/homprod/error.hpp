#pragma once

#include <stdexcept>
#include <string>

namespace homprod {

// Raised for invalid constructions and failed verifications.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace homprod
