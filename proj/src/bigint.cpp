#include "sortreduce/bigint.hpp"

#include <cctype>
#include <limits>

#include "sortreduce/errors.hpp"

namespace sortreduce {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_signed_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw FormatError("not an integer: '" + std::string(whole) + "'");
  BigInt value(std::string(s), 10);
  return negative ? BigInt(-value) : value;
}

long parse_exponent(std::string_view s, std::string_view whole) {
  BigInt e = parse_signed_decimal(s, whole);
  if (!e.fits_slong_p() || abs(e) > 1000000) {
    throw FormatError("exponent out of range in '" + std::string(whole) + "'");
  }
  return e.get_si();
}

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

BigInt parse_integer_literal(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw FormatError("empty integer literal");

  if (auto caret = s.find('^'); caret != std::string_view::npos) {
    BigInt base = parse_signed_decimal(s.substr(0, caret), s);
    long e = parse_exponent(s.substr(caret + 1), s);
    if (e < 0) throw FormatError("negative power in '" + std::string(s) + "'");
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
  }

  auto epos = s.find_first_of("eE");
  if (epos == std::string_view::npos && s.find('.') == std::string_view::npos) {
    return parse_signed_decimal(s, s);
  }

  std::string_view mantissa = s.substr(0, epos);
  long exponent = epos == std::string_view::npos ? 0 : parse_exponent(s.substr(epos + 1), s);
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long fraction_len = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty())) {
      throw FormatError("malformed number '" + std::string(s) + "'");
    }
    digits = std::string(ip) + std::string(fp);
    fraction_len = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) throw FormatError("malformed number '" + std::string(s) + "'");
    digits = std::string(mantissa);
  }
  BigInt value(digits, 10);
  long shift = exponent - fraction_len;
  if (shift >= 0) {
    value *= pow10(static_cast<unsigned long>(shift));
  } else {
    BigInt div = pow10(static_cast<unsigned long>(-shift));
    if (value % div != 0) throw FormatError("not an integer: '" + std::string(s) + "'");
    value /= div;
  }
  return negative ? BigInt(-value) : value;
}

std::string to_decimal(const BigInt& value) { return value.get_str(10); }

std::size_t bit_length(const BigInt& value) {
  if (value == 0) return 0;
  return mpz_sizeinbase(value.get_mpz_t(), 2);
}

bool fits_int64(const BigInt& value) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return value.fits_slong_p();
}

Real to_real(const BigInt& value) {
  Real r;
  mpfr_set_z(r.backend().data(), value.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real ln(const BigInt& value) {
  if (value <= 0) throw RegimeError("logarithm of a non-positive integer");
  return boost::multiprecision::log(to_real(value));
}

BigInt floor_to_integer(const Real& x) {
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), x.backend().data(), MPFR_RNDD);
  return z;
}

std::string format_significant(const Real& x, int digits) {
  return x.str(digits, std::ios_base::fmtflags(0));
}

}  // namespace sortreduce
