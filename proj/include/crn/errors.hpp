#pragma once

#include <stdexcept>
#include <string>

namespace crn {

// Two graphs were combined whose species tables do not agree.
struct SpeciesMismatchError : std::runtime_error {
  explicit SpeciesMismatchError(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive subgraph enumeration was requested beyond the supported size.
struct EnumerationSizeError : std::runtime_error {
  explicit EnumerationSizeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crn
