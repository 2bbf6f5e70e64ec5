#include "hecke/special_functions.hpp"

#include <cmath>
#include <sstream>

#include "hecke/error.hpp"

namespace hecke {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 200000;
const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::acos(-1.0));

}  // namespace

cplx lgamma_complex(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw DomainError("lgamma_complex: pole at a non-positive integer");
  cplx shift = 0.0;
  // move into the region where Stirling with 8 correction terms is exact to rounding
  while (std::abs(z.imag()) < 15.0 ? z.real() < 15.0 : z.real() < 0.0) {
    shift += std::log(z);
    z += 1.0;
  }
  static const double B[] = {1.0 / 12,       -1.0 / 360,        1.0 / 1260,     -1.0 / 1680,
                             1.0 / 1188,     -691.0 / 360360,   1.0 / 156,      -3617.0 / 122400};
  cplx iz = 1.0 / z, iz2 = iz * iz, ser = 0.0;
  for (int k = 7; k >= 0; --k) ser = ser * iz2 + B[k];
  ser *= iz;
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + ser - shift;
}

IncompleteGamma::IncompleteGamma(cplx s) : s_(s) {
  double kr = std::round(s.real());
  near_pole_ = kr <= 0.0 && std::abs(s - cplx(kr, 0.0)) < 0.25;
  lg_ = near_pole_ ? cplx(0.0) : lgamma_complex(s);
}

cplx IncompleteGamma::operator()(cplx z) {
  if (!(z.real() > 0.0)) throw DomainError("incomplete gamma kernel requires Re z > 0");
  if (!near_pole_ && std::abs(z) < std::max(std::abs(s_), 1.5)) {
    cf_ = false;
    return series(z);
  }
  cf_ = true;
  return continued_fraction(z);
}

cplx IncompleteGamma::series(cplx z) {
  // G = z^{-s} Gamma(s) - e^{-z} sum_k z^k / (s)_{k+1}
  // complex products are spelled out: this loop dominates every L-value
  const double zr = z.real(), zi = z.imag();
  const double az2 = zr * zr + zi * zi;
  // |s+k| > |z| once k exceeds this
  const double kmin = std::sqrt(std::max(0.0, az2 - s_.imag() * s_.imag())) - s_.real();
  if (inv_.empty()) inv_.push_back(1.0 / s_);
  double tr = inv_[0].real(), ti = inv_[0].imag();
  double sr = tr, si = ti;
  const double eps2 = kEps * kEps;
  int k = 1;
  for (; k < kMaxIter; ++k) {
    if (static_cast<std::size_t>(k) >= inv_.size()) inv_.push_back(1.0 / (s_ + static_cast<double>(k)));
    const double ir = inv_[k].real(), ii = inv_[k].imag();
    const double ur = zr * ir - zi * ii, ui = zr * ii + zi * ir;
    const double nr = tr * ur - ti * ui;
    ti = tr * ui + ti * ur;
    tr = nr;
    sr += tr;
    si += ti;
    if (tr * tr + ti * ti < eps2 * (sr * sr + si * si) && k > kmin) break;
  }
  iters_ = k;
  if (k == kMaxIter) throw ConvergenceError("incomplete gamma series did not converge");
  return std::exp(lg_ - s_ * std::log(z)) - std::exp(-z) * cplx(sr, si);
}

cplx IncompleteGamma::continued_fraction(cplx z) {
  // modified Lentz on 1/(z+1-s- 1(1-s)/(z+3-s- 2(2-s)/(z+5-s- ...)))
  const double tiny = 1e-150;
  double br = z.real() + 1.0 - s_.real(), bi = z.imag() - s_.imag();
  double cr = 1.0 / tiny, ci = 0.0;
  double den = br * br + bi * bi;
  double dr = br / den, di = -bi / den;
  double hr = dr, hi = di;
  const double sr = s_.real(), si = s_.imag();
  const double eps2 = kEps * kEps;
  int i = 1;
  for (; i < kMaxIter; ++i) {
    const double fi = static_cast<double>(i);
    // a_i = -i (i - s)
    const double ar = -fi * (fi - sr), ai = fi * si;
    br += 2.0;
    // d = 1 / (a d + b)
    double xr = ar * dr - ai * di + br, xi = ar * di + ai * dr + bi;
    if (xr * xr + xi * xi < tiny * tiny) xr = tiny, xi = 0.0;
    den = xr * xr + xi * xi;
    dr = xr / den;
    di = -xi / den;
    // c = b + a / c
    den = cr * cr + ci * ci;
    xr = br + (ar * cr + ai * ci) / den;
    xi = bi + (ai * cr - ar * ci) / den;
    if (xr * xr + xi * xi < tiny * tiny) xr = tiny, xi = 0.0;
    cr = xr;
    ci = xi;
    const double er = dr * cr - di * ci, ei = dr * ci + di * cr;
    const double nh = hr * er - hi * ei;
    hi = hr * ei + hi * er;
    hr = nh;
    if ((er - 1.0) * (er - 1.0) + ei * ei < eps2) break;
  }
  iters_ = i;
  if (i == kMaxIter) {
    std::ostringstream os;
    os << "incomplete gamma continued fraction did not converge at s=" << s_ << ", z=" << z;
    throw ConvergenceError(os.str());
  }
  return std::exp(-z) * cplx(hr, hi);
}

cplx upper_incomplete_gamma(cplx s, double x, double tol) {
  if (!(x > 0.0) || x > kMaxGammaX) throw DomainError("upper_incomplete_gamma: x outside (0, 1e5]");
  if (std::abs(s.imag()) > kMaxGammaImag) throw DomainError("upper_incomplete_gamma: |Im s| outside envelope");
  if (std::abs(s.real()) > kMaxGammaReal) throw DomainError("upper_incomplete_gamma: |Re s| outside envelope");
  if (!(tol >= 1e-14)) throw DomainError("upper_incomplete_gamma: tolerance below attainable accuracy");
  IncompleteGamma G(s);
  return std::exp(s * std::log(x)) * G(cplx(x, 0.0));
}

}  // namespace hecke
