#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace clarith {

/// Unbounded natural number. Payloads and term values are always >= 0.
using Natural = boost::multiprecision::cpp_int;

/// Length of the binary numeral for n, with |0| = 1.
std::uint64_t bit_length(const Natural& n);

/// Ordinary bit width: 0 for n = 0, otherwise bit_length(n).
std::uint64_t bit_width(const Natural& n);

std::string to_decimal(const Natural& n);

/// Parses a non-empty string of decimal digits. Throws std::invalid_argument.
Natural parse_natural(std::string_view digits);

}  // namespace clarith
