#pragma once

#include <stdexcept>
#include <string>

namespace exm {

// Malformed input: unreadable literals, bad config syntax, unknown keys.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input that violates a domain contract: parameter out of range,
// point not in its space, invalid distance table.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace exm
