#pragma once

#include <stdexcept>
#include <string>

namespace annealbench {

// Every library failure derives from Error so callers (and the CLI) can map
// it to a stable machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& w) : Error("dimension", w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct ParameterError : Error {
  explicit ParameterError(const std::string& w) : Error("parameter", w) {}
};
struct CapacityError : Error {
  explicit CapacityError(const std::string& w) : Error("capacity", w) {}
};
struct EmptyInputError : Error {
  explicit EmptyInputError(const std::string& w) : Error("empty_input", w) {}
};
struct InventoryError : Error {
  explicit InventoryError(const std::string& w) : Error("inventory", w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error("parse", w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error("io", w) {}
};

}  // namespace annealbench
