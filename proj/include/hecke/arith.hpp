#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hecke {

/// (prime, exponent) pairs in increasing prime order.
using Factorization = std::vector<std::pair<std::uint64_t, int>>;

/// Linear sieve up to a fixed limit: smallest prime factors, primes, Möbius and divisor counts.
class Sieve {
 public:
  explicit Sieve(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  std::uint32_t smallest_factor(std::uint64_t n) const { return spf_[n]; }
  bool is_prime(std::uint64_t n) const { return n >= 2 && spf_[n] == n; }
  int mobius(std::uint64_t n) const { return mu_[n]; }
  std::uint32_t tau(std::uint64_t n) const { return tau_[n]; }

  /// Factorization of n; uses the table when n <= limit, trial division by the
  /// sieved primes otherwise (n must then have no prime factor above limit^2).
  Factorization factor(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> tau_;
};

/// Number of divisors from a factorization.
std::uint64_t divisor_count(const Factorization& f);

/// Squarefree test by trial division.
bool is_squarefree(std::uint64_t n);

/// Divisors of n in increasing order.
std::vector<std::uint64_t> divisors(const Factorization& f);

/// a^e for small integers; no overflow checks.
std::uint64_t ipow(std::uint64_t a, int e);

/// Dirichlet convolution (a * b)(n) for 1 <= n <= N; index 0 is ignored and set to 0.
std::vector<double> dirichlet_convolve(const std::vector<double>& a, const std::vector<double>& b,
                                       std::size_t N);

}  // namespace hecke
