#pragma once

// Bessel and Hankel functions of orders 0 and 1.
//
// Arguments are restricted to the closed first quadrant, arg z in [0, pi/2],
// which is everything k*r produces for Im k >= 0, Re k > 0, r > 0.
//
// Evaluation regimes (by |z|):
//   |z| <= kSeriesRadius       ascending power series (J, and Y via the log form)
//   ... <= kAsymptoticRadius   steepest-descent integral for H^(1), trapezoid rule
//   beyond                     Hankel asymptotic expansion
// The middle regime exists because the asymptotic series cannot reach 1e-12
// below |z| ~ 25 and the power series loses too many digits above |z| ~ 5.

#include <complex>

namespace helmbie::special {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kSeriesRadius = 4.0;
inline constexpr double kAsymptoticRadius = 30.0;

enum class BesselKind { J, Y };

struct HankelValue {
  cplx h0;  // H_0^(1)(z)
  cplx h1;  // H_1^(1)(z)
};

// H_n^(1)(z) = log_coeff * ln z + regular            (n = 0)
// H_n^(1)(z) = log_coeff * ln z - 2i/(pi z) + regular (n = 1)
// with log_coeff = (2i/pi) J_n(z); regular is entire in z.
struct LogSplit {
  cplx log_coeff;
  cplx regular;
};

/// J_n(x) or Y_n(x) for n in {0, 1}, x > 0 (x = 0 allowed for J).
double bessel_real(int order, BesselKind kind, double x);

/// J_n(z) for complex z, n in {0, 1}. No sector restriction.
cplx bessel_j(int order, cplx z);

/// H_n^(1)(z), n in {0, 1}.
cplx hankel1(int order, cplx z);

/// Both orders at once; cheaper than two hankel1 calls.
HankelValue hankel01(cplx z);

/// Logarithmic split of H_0^(1). z = 0 is accepted and returns the limits.
LogSplit log_split_h0(cplx z);

/// Logarithmic split of H_1^(1); z must be nonzero.
LogSplit log_split_h1(cplx z);

/// Modified Bessel K_0(t), t > 0, through H_0^(1)(i t) = (2/(i pi)) K_0(t).
double bessel_k0(double t);

namespace testing {

enum class Fault { None, TruncatedAsymptotics };

/// Deliberately corrupts the large-argument regime. Only for exercising the
/// verification harness; never enable in production runs.
void set_fault(Fault fault);
Fault current_fault();

}  // namespace testing

}  // namespace helmbie::special
