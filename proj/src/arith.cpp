#include "hecke/arith.hpp"

#include <algorithm>

#include "hecke/error.hpp"

namespace hecke {

Sieve::Sieve(std::uint64_t limit)
    : limit_(std::max<std::uint64_t>(limit, 1)),
      spf_(limit_ + 1, 0),
      mu_(limit_ + 1, 0),
      tau_(limit_ + 1, 0) {
  // exponent of the smallest prime in n, needed for tau
  std::vector<std::uint8_t> spf_exp(limit_ + 1, 0);
  mu_[1] = 1;
  tau_[1] = 1;
  for (std::uint64_t i = 2; i <= limit_; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
      mu_[i] = -1;
      tau_[i] = 2;
      spf_exp[i] = 1;
    }
    for (std::uint32_t p : primes_) {
      std::uint64_t ip = i * p;
      if (p > spf_[i] || ip > limit_) break;
      spf_[ip] = p;
      if (p == spf_[i]) {
        mu_[ip] = 0;
        spf_exp[ip] = static_cast<std::uint8_t>(spf_exp[i] + 1);
        tau_[ip] = tau_[i] / (spf_exp[i] + 1) * (spf_exp[ip] + 1);
      } else {
        mu_[ip] = static_cast<std::int8_t>(-mu_[i]);
        spf_exp[ip] = 1;
        tau_[ip] = tau_[i] * 2;
      }
    }
  }
}

Factorization Sieve::factor(std::uint64_t n) const {
  Factorization out;
  if (n == 0) throw DomainError("factor: n must be positive");
  if (n <= limit_) {
    while (n > 1) {
      std::uint64_t p = spf_[n];
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
    return out;
  }
  for (std::uint32_t p : primes_) {
    if (static_cast<std::uint64_t>(p) * p > n) break;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) {
    if (n > limit_ * limit_) throw DomainError("factor: argument exceeds sieve range");
    out.emplace_back(n, 1);
  }
  return out;
}

std::uint64_t divisor_count(const Factorization& f) {
  std::uint64_t t = 1;
  for (auto [p, e] : f) t *= static_cast<std::uint64_t>(e + 1);
  return t;
}

bool is_squarefree(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    if (n % p == 0) n /= p;
  }
  return true;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : f) {
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t ipow(std::uint64_t a, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= a;
  return r;
}

std::vector<double> dirichlet_convolve(const std::vector<double>& a, const std::vector<double>& b,
                                       std::size_t N) {
  if (a.size() <= N || b.size() <= N) throw DomainError("dirichlet_convolve: inputs shorter than N");
  std::vector<double> c(N + 1, 0.0);
  for (std::size_t i = 1; i <= N; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 1; i * j <= N; ++j) c[i * j] += a[i] * b[j];
  }
  return c;
}

}  // namespace hecke
