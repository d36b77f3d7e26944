#include "clarith/natural.hpp"

#include <stdexcept>

namespace clarith {

std::uint64_t bit_length(const Natural& n) {
  if (n.is_zero()) return 1;
  return boost::multiprecision::msb(n) + 1;
}

std::uint64_t bit_width(const Natural& n) {
  return n.is_zero() ? 0 : bit_length(n);
}

std::string to_decimal(const Natural& n) { return n.str(); }

Natural parse_natural(std::string_view digits) {
  if (digits.empty()) throw std::invalid_argument("empty numeral");
  Natural value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal numeral: " + std::string(digits));
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace clarith
