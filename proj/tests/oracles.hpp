#pragma once
// Independent reference implementations used only by the tests: long-double
// ascending series for Hankel functions, Boost Bessel functions, and
// tanh-sinh quadrature for singular boundary integrals.
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/hankel.hpp>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

struct Hankel {
  cplx h0, h1, j0, j1;
};

/// H0, H1 (and J0, J1) from the ascending series in long double; adequate
/// for |z| <= 8 anywhere in the first quadrant.
inline Hankel hankel_series(cplx zd) {
  const lcplx z(zd.real(), zd.imag());
  const long double pi = std::numbers::pi_v<long double>;
  const long double gamma = std::numbers::egamma_v<long double>;
  const lcplx q = z * z / 4.0L;
  lcplx j0 = 0, j1 = 0, s0 = 0, s1 = 0;
  lcplx term0 = 1;          // (-q)^m / (m!)^2
  lcplx term1 = z / 2.0L;   // (-1)^m (z/2)^{2m+1} / (m! (m+1)!)
  long double hm = 0;       // harmonic number H_m
  for (int m = 0; m < 200; ++m) {
    const long double hm1 = hm + 1.0L / (m + 1);
    j0 += term0;
    j1 += term1;
    s0 += hm * term0;
    s1 += (hm + hm1) * term1;
    term0 *= -q / static_cast<long double>((m + 1) * (m + 1));
    term1 *= -q / static_cast<long double>((m + 1) * (m + 2));
    hm = hm1;
  }
  const lcplx lg = std::log(z / 2.0L) + gamma;
  const lcplx y0 = (2.0L / pi) * (lg * j0 - s0);
  const lcplx y1 = (2.0L / pi) * lg * j1 - 2.0L / (pi * z) - s1 / pi;
  const lcplx i(0, 1);
  const lcplx h0 = j0 + i * y0, h1 = j1 + i * y1;
  auto d = [](lcplx v) { return cplx(static_cast<double>(v.real()), static_cast<double>(v.imag())); };
  return {d(h0), d(h1), d(j0), d(j1)};
}

/// (i/4) H0(k r) for real k through Boost.
inline cplx phi(double k, double r) {
  return cplx(0.0, 0.25) * boost::math::cyl_hankel_1(0, k * r);
}

/// Half-plane Green's function G_m, m = 1 or 2, for real k through Boost.
inline cplx green(int m, double k, double mx, double my, double px, double py) {
  const double r = std::hypot(mx - px, my - py);
  const double rs = std::hypot(mx - px, my + py);
  return phi(k, r) + (m == 1 ? -1.0 : 1.0) * phi(k, rs);
}

/// Gradient of G_m with respect to the target M.
inline std::pair<cplx, cplx> green_gradient(int m, double k, double mx, double my, double px, double py) {
  auto dphi = [&](double dx, double dy) -> std::pair<cplx, cplx> {
    const double r = std::hypot(dx, dy);
    const cplx d = cplx(0.0, -0.25) * k * boost::math::cyl_hankel_1(1, k * r) / r;
    return {d * dx, d * dy};
  };
  const auto a = dphi(mx - px, my - py);
  const auto b = dphi(mx - px, my + py);
  const double s = m == 1 ? -1.0 : 1.0;
  return {a.first + s * b.first, a.second + s * b.second};
}

/// Integral of a complex function over [a, b], endpoint singularities allowed.
inline cplx integrate(const std::function<cplx(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double re = ts.integrate([&](double t) { return f(t).real(); }, a, b);
  const double im = ts.integrate([&](double t) { return f(t).imag(); }, a, b);
  return {re, im};
}

}  // namespace oracle
