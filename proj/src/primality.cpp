#include "sortreduce/primality.hpp"

#include <array>
#include <random>

namespace sortreduce {
namespace {

constexpr auto small_primes = [] {
  std::array<unsigned, 168> primes{};
  std::size_t count = 0;
  for (unsigned n = 2; n < 1000; ++n) {
    bool prime = true;
    for (unsigned p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes[count++] = n;
  }
  return primes;
}();

// One Miller-Rabin round: n odd, n - 1 = d * 2^s with d odd.
bool witness_passes(const BigInt& n, const BigInt& n_minus_1, const BigInt& d, unsigned long s,
                    const BigInt& base) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

bool is_probable_prime(const BigInt& n, unsigned rounds, std::uint64_t seed) {
  if (n < 2) return false;
  for (unsigned p : small_primes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 1000 * 1000) return true;  // no factor below 1000

  const BigInt n_minus_1 = n - 1;
  BigInt d = n_minus_1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  std::mt19937_64 gen(seed);
  const BigInt span = n - 3;  // bases in [2, n - 2]
  const std::size_t words = (bit_length(n) + 63) / 64 + 1;
  for (unsigned i = 0; i < rounds; ++i) {
    BigInt raw = 0;
    for (std::size_t w = 0; w < words; ++w) raw = (raw << 64) + BigInt(static_cast<unsigned long>(gen()));
    BigInt base = raw % span + 2;
    if (!witness_passes(n, n_minus_1, d, s, base)) return false;
  }
  return true;
}

BigInt next_prime(const BigInt& n) {
  if (n <= 2) return 2;
  BigInt c = n;
  if (mpz_even_p(c.get_mpz_t())) ++c;
  while (!is_probable_prime(c)) c += 2;
  return c;
}

}  // namespace sortreduce
