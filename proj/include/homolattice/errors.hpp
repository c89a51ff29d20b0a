#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homolattice {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrix : std::runtime_error {
  SingularMatrix() : std::runtime_error("matrix is singular over GF(2)") {}
};

struct AsymmetricCode : std::runtime_error {
  AsymmetricCode(size_t x_rank, size_t z_rank)
      : std::runtime_error("independent X and Z stabilizer counts differ (" +
                           std::to_string(x_rank) + " vs " +
                           std::to_string(z_rank) + "); pad the code first") {}
};

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotTransversal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  size_t line;
  ParseError(size_t line_number, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
};

}  // namespace homolattice
