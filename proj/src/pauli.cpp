#include "homolattice/pauli.hpp"

#include <bit>

namespace homolattice {

PauliOperator::PauliOperator(BitVector x, BitVector z)
    : x_(std::move(x)), z_(std::move(z)) {
  if (x_.size() != z_.size())
    throw DimensionMismatch("PauliOperator: x/z lengths differ");
}

PauliOperator PauliOperator::single_x(size_t n, size_t q) {
  PauliOperator p(n);
  p.x_.set(q);
  return p;
}

PauliOperator PauliOperator::single_z(size_t n, size_t q) {
  PauliOperator p(n);
  p.z_.set(q);
  return p;
}

PauliOperator PauliOperator::single_y(size_t n, size_t q) {
  PauliOperator p(n);
  p.x_.set(q);
  p.z_.set(q);
  return p;
}

PauliOperator PauliOperator::x_type(const BitVector& support) {
  return PauliOperator(support, BitVector(support.size()));
}

PauliOperator PauliOperator::z_type(const BitVector& support) {
  return PauliOperator(BitVector(support.size()), support);
}

PauliOperator PauliOperator::from_word(std::string_view word) {
  PauliOperator p(word.size());
  for (size_t i = 0; i < word.size(); ++i) {
    switch (word[i]) {
      case 'I': break;
      case 'X': p.x_.set(i); break;
      case 'Z': p.z_.set(i); break;
      case 'Y': p.x_.set(i); p.z_.set(i); break;
      default:
        throw DimensionMismatch("Pauli word must contain only I/X/Y/Z");
    }
  }
  return p;
}

size_t PauliOperator::weight() const {
  size_t total = 0;
  auto xw = x_.words();
  auto zw = z_.words();
  for (size_t i = 0; i < xw.size(); ++i)
    total += std::popcount(xw[i] | zw[i]);
  return total;
}

std::vector<size_t> PauliOperator::support() const {
  std::vector<size_t> out;
  for (size_t q = 0; q < n(); ++q)
    if (x_.get(q) || z_.get(q)) out.push_back(q);
  return out;
}

std::string PauliOperator::to_word() const {
  std::string s(n(), 'I');
  for (size_t q = 0; q < n(); ++q) {
    const bool xb = x_.get(q), zb = z_.get(q);
    if (xb && zb)
      s[q] = 'Y';
    else if (xb)
      s[q] = 'X';
    else if (zb)
      s[q] = 'Z';
  }
  return s;
}

}  // namespace homolattice
