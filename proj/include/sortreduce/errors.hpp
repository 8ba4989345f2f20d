#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace sortreduce {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A pairwise reduction was asked to divide by a zero projection.
class ZeroPivotError : public Error {
 public:
  using Error::Error;
};

/// Not enough distinct smaller positions exist for the requested arity.
class ArityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class SingularError : public Error {
 public:
  using Error::Error;
};

class NotCodimensionOneError : public Error {
 public:
  NotCodimensionOneError(std::size_t rank, const std::string& what)
      : Error(what), rank_(rank) {}
  /// Rank of the reduced dual matrix modulo P.
  std::size_t rank() const { return rank_; }

 private:
  std::size_t rank_;
};

class BasisError : public Error {
 public:
  using Error::Error;
};

/// A model formula was evaluated outside the parameter range where it is defined.
class RegimeError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A harvesting sub-run did not produce a lattice vector.
class HarvestError : public Error {
 public:
  HarvestError(mpz_class q, const std::string& what) : Error(what), q_(std::move(q)) {}
  const mpz_class& q() const { return q_; }

 private:
  mpz_class q_;
};

}  // namespace sortreduce
