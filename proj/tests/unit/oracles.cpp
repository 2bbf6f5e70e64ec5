#include "oracles.hpp"

#include <cmath>
#include <numeric>

namespace oracle {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t tau(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) c += (d * d == n) ? 1 : 2;
  return c;
}

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

int at_prime(std::uint64_t D, std::uint64_t p) {
  if (p == 2) {
    if (D % 2 == 0) return 0;
    std::uint64_t r = (8 - D % 8) % 8;  // -D mod 8
    return r == 1 ? 1 : -1;
  }
  if (D % p == 0) return 0;
  std::uint64_t a = (p - D % p) % p;
  std::uint64_t e = powmod(a, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

}  // namespace

int kronecker_neg(std::uint64_t D, std::uint64_t n) {
  int out = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      out *= at_prime(D, p);
      n /= p;
    }
  }
  if (n > 1) out *= at_prime(D, n);
  return out;
}

long class_number(std::uint64_t D) {
  int w = D == 3 ? 6 : (D == 4 ? 4 : 2);
  long s = 0;
  for (std::uint64_t a = 1; a < D; ++a) s += kronecker_neg(D, a) * static_cast<long>(a);
  return -w * s / (2 * static_cast<long>(D));
}

std::vector<long> eta23(std::size_t N) {
  std::vector<long> c(N + 1, 0);
  // coefficient of q^{k+1} stored at c[k+1]
  std::vector<long> p(N, 0);
  p[0] = 1;
  for (std::size_t n = 1; n < N; ++n) {
    for (std::size_t step : {n, 23 * n}) {
      if (step >= N) continue;
      for (std::size_t k = N - 1; k >= step; --k) p[k] -= p[k - step];
    }
  }
  for (std::size_t k = 0; k < N; ++k) c[k + 1] = p[k];
  return c;
}

std::vector<long> lattice_counts(const hecke::Form& q, std::size_t N) {
  std::vector<long> out(N + 1, 0);
  // a x^2 + b x y + c y^2 >= (D/4c) x^2 and >= (D/4a) y^2
  double D = static_cast<double>(-q.discriminant());
  long X = static_cast<long>(std::sqrt(4.0 * q.c * N / D)) + 1;
  long Y = static_cast<long>(std::sqrt(4.0 * q.a * N / D)) + 1;
  for (long x = -X; x <= X; ++x)
    for (long y = -Y; y <= Y; ++y) {
      long v = q.a * x * x + q.b * x * y + q.c * y * y;
      if (v >= 0 && static_cast<std::size_t>(v) <= N) ++out[v];
    }
  return out;
}

double selberg_literal(const std::vector<double>& beta, std::size_t n, double theta,
                       const std::function<double(std::uint64_t)>& K) {
  long double s = 1.0L - theta, total = 0.0L;
  for (std::size_t v1 = n; v1 >= 1; --v1)
    for (std::size_t v2 = n; v2 >= 1; --v2)
      for (std::size_t v3 = n; v3 >= 1; --v3)
        for (std::size_t v4 = n; v4 >= 1; --v4) {
          long double b = static_cast<long double>(beta[v1]) * beta[v2] * beta[v3] * beta[v4];
          if (b == 0.0L) continue;
          std::uint64_t P = v1 * v4, Q = v2 * v3, q = std::gcd(P, Q);
          long double ratio = static_cast<long double>(q) / static_cast<long double>(v1 * v3);
          total += b / static_cast<long double>(v2 * v4) * std::pow(ratio, s) * K(P / q) * K(Q / q);
        }
  return static_cast<double>(total);
}

}  // namespace oracle
