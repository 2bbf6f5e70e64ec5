#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/arith.hpp"
#include "hecke/class_field.hpp"

namespace hecke {

/// r(n) for 1 <= n <= N of one class group character. r[0] is unused (0).
struct CoefficientTable {
  std::uint64_t D = 0;
  std::size_t char_index = 0;
  std::size_t N = 0;
  std::vector<double> r;

  double operator[](std::size_t n) const { return r[n]; }
};

/// Default memory allowance for coefficient construction, in bytes.
inline constexpr std::uint64_t kCoefficientMemoryBudget = 3ull << 30;
inline constexpr std::uint64_t kMaxCoefficientN = 10'000'000;

/// Bytes needed to build a table of length N.
std::uint64_t coefficient_bytes(std::uint64_t N);

/// R_Q(n) = #{(x,y) : Q(x,y) = n} for 0 <= n <= N.
std::vector<std::uint32_t> theta_counts(const Form& q, std::uint64_t N);

/// Adds weight * [Q(x,y) = n] into acc[n - N0 - 1] for N0 < n <= N1.
void theta_accumulate(const Form& q, std::uint64_t N0, std::uint64_t N1, std::complex<double> weight,
                      std::vector<std::complex<double>>& acc);

/// r(n) = (1/w) sum_A psi(A) R_A(n); fails when any imaginary residue reaches 1e-10.
CoefficientTable r_coefficients(const FieldData& field, const HeckeCharacter& psi, std::size_t char_index,
                                std::uint64_t N, std::uint64_t memory_budget = kCoefficientMemoryBudget);

/// Extends a table to length N by enumerating only the new range.
void extend_coefficients(CoefficientTable& table, const FieldData& field, const HeckeCharacter& psi,
                         std::uint64_t N);

struct HeckeViolation {
  std::size_t n;
  double expected;
  double got;
  std::string kind;  // "unit", "multiplicative", "prime-power", "divisor-bound", "divisor-sum"
};

struct HeckeReport {
  std::size_t checked = 0;
  std::vector<HeckeViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Multiplicativity, prime-power recursion, |r(n)| <= tau(n), and the divisor sum identity when principal.
HeckeReport verify_hecke(const CoefficientTable& table, const FieldData& field, bool principal,
                         double tol = 1e-9);

/// Local square-root coefficients alpha(p^k), k = 0..kmax.
std::vector<double> alpha_prime_power(double rp, int chi_p, int kmax);

/// alpha(nu) for 0 <= nu <= X (index 0 unused).
std::vector<double> alpha_coefficients(const CoefficientTable& table, std::uint64_t X);

/// Smoothing weight: 1 for nu^2 <= X, else 2 log(X/nu) / log X.
double smoothing_weight(double nu, double X);

struct MollifierTable {
  double X = 1.0;
  double logX = 0.0;
  std::vector<double> alpha;  // index 0 unused
  std::vector<double> beta;

  std::size_t size() const { return beta.size() - 1; }
};

MollifierTable mollifier_weights(const std::vector<double>& alpha, double X);

/// r(p^k), 0 <= k <= kmax, from r(p) and chi(p).
std::vector<double> prime_power_coefficients(double rp, int chi_p, int kmax);

/// Number of terms needed so that sum_{k>K} (k+1)(k+a+1) q^k < tol, for q = p^{-sigma}.
int k_series_terms(double q, int a, double tol);

/// Local factor of K at p^a for a complex argument.
template <class S>
S k_local(std::uint64_t p, int a, S s, double rp, int chi_p, double tol);

/// K(m, s) evaluated directly (no caching). Requires Re s >= 3/4.
double k_function(std::uint64_t m, double s, const CoefficientTable& table, const Sieve& sieve, double tol);
std::complex<double> k_function(std::uint64_t m, std::complex<double> s, const CoefficientTable& table,
                                const Sieve& sieve, double tol);

/// K(., s) at fixed real s with memoized local factors. Fill with precompute() before concurrent use.
class KFunction {
 public:
  KFunction(const CoefficientTable& table, const Sieve& sieve, double s, double tol);

  double operator()(std::uint64_t m) const;
  double local(std::uint64_t p, int a) const;
  /// Caches every local factor p^a <= limit.
  void precompute(std::uint64_t limit);
  double s() const { return s_; }

 private:
  const CoefficientTable* table_;
  const Sieve* sieve_;
  double s_;
  double tol_;
  std::unordered_map<std::uint64_t, double> memo_;  // key p^a
};

/// b(n) = sum_{n1 n2 = n} |alpha(n1) alpha(n2)| for n <= alpha.size()-1.
std::vector<double> b_coefficients(const std::vector<double>& alpha);

/// Multiplicative B with B(p) = |r(p)| and B(p^k) = tau(p^k) for k > 1.
std::vector<double> big_b_coefficients(const CoefficientTable& table, const Sieve& sieve, std::size_t N);

}  // namespace hecke
