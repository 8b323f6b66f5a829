#pragma once

#include <stdexcept>
#include <string>

namespace peff {

// All kernel validation failures carry a short machine-readable kind plus a
// human-readable detail (usually naming the witnessing sample point).
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

}  // namespace peff
