#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

namespace sortreduce {

using BigInt = mpz_class;

/// 50 significant decimal digits; used for every model and length computation.
using Real = boost::multiprecision::mpfr_float_50;

/// Parses an exact integer written as plain decimal ("1000003"), scientific
/// notation with an integral value ("2.19e12", "3.13E+102") or a power ("10^12").
/// Throws FormatError when the text does not denote an integer.
BigInt parse_integer_literal(std::string_view text);

std::string to_decimal(const BigInt& value);

/// Number of bits in |value|; 0 for zero.
std::size_t bit_length(const BigInt& value);

bool fits_int64(const BigInt& value);

Real to_real(const BigInt& value);

/// Natural logarithm of a positive integer, exact up to working precision.
Real ln(const BigInt& value);

/// floor(x) for finite x >= 0.
BigInt floor_to_integer(const Real& x);

/// Formats with the given number of significant digits ("9.49e+07", "1651.31").
std::string format_significant(const Real& x, int digits = 6);

}  // namespace sortreduce
