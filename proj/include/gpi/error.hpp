#pragma once
#include <stdexcept>
#include <string>

namespace gpi {

// Structured error: `kind` names the violated precondition (NotLatin,
// TooLarge, NotInClass, ...) and what() carries the details.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

}  // namespace gpi
