#pragma once

#include <stdexcept>
#include <string>

namespace picgrp {

// Input errors (bad data, malformed objects, bounds) map to CLI exit code 1;
// hypothesis errors (a theorem's hypotheses are not met) map to exit code 2.
enum class ErrorClass { input, hypothesis };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), cls_(cls), kind_(std::move(kind)) {}

  ErrorClass error_class() const noexcept { return cls_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorClass cls_;
  std::string kind_;
};

inline Error input_error(std::string kind, const std::string& what) {
  return Error(ErrorClass::input, std::move(kind), what);
}

inline Error hypothesis_error(std::string kind, const std::string& what) {
  return Error(ErrorClass::hypothesis, std::move(kind), what);
}

}  // namespace picgrp
