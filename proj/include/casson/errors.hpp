#pragma once

#include <stdexcept>
#include <string>

namespace casson {

// Exit-code classes for the CLI: parse (1), validation (2), disagreement (3).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace casson
