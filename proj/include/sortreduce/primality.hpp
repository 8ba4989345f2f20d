#pragma once

#include <cstdint>

#include "sortreduce/bigint.hpp"

namespace sortreduce {

/// Trial division by the primes below 1000 followed by Miller-Rabin with
/// `rounds` pseudo-random bases. A composite passes with probability at most
/// 4^-rounds; the default gives 2^-128.
bool is_probable_prime(const BigInt& n, unsigned rounds = 64, std::uint64_t seed = 0x5eed5eedULL);

/// Smallest probable prime >= n.
BigInt next_prime(const BigInt& n);

}  // namespace sortreduce
