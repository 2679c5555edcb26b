#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgspec {

// Bad arguments: dimension mismatch, unknown label, asymmetric Omega, ...
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A descriptor or model failed one of its structural axioms.
class validation_error : public std::runtime_error {
 public:
  validation_error(std::string axiom, const std::string& detail)
      : std::runtime_error(axiom + ": " + detail), axiom_(std::move(axiom)) {}

  const std::string& axiom() const noexcept { return axiom_; }

 private:
  std::string axiom_;
};

// truncation_sweep: the operator could not be built at one of the sizes.
class sweep_error : public std::runtime_error {
 public:
  sweep_error(std::size_t size, const std::string& what)
      : std::runtime_error("build failed at size " + std::to_string(size) + ": " + what),
        size_(size) {}

  std::size_t failing_size() const noexcept { return size_; }

 private:
  std::size_t size_;
};

class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The eigensolver did not reach the requested tolerance.
class solver_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qgspec
