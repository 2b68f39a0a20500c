#pragma once

// Half-plane Green's functions built by reflection across y = 0, reference
// plane-wave solutions for the unperturbed half-plane, and point-source
// fields used as manufactured solutions.
//
// Conventions: time dependence e^{-i omega t}; Phi(r) = (i/4) H0^(1)(k r);
// boundary normals point into D (positive y component).

#include <complex>
#include <string>
#include <string_view>

#include "helmbie/geometry.hpp"

namespace helmbie {

using cplx = std::complex<double>;

enum class BoundaryCondition { Dirichlet, Neumann };

std::string_view to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(std::string_view text);

/// Wavenumber with Re k > 0, Im k >= 0.
class Wavenumber {
 public:
  explicit Wavenumber(cplx k);
  Wavenumber(double re, double im) : Wavenumber(cplx(re, im)) {}

  cplx value() const { return k_; }
  double wavelength() const;
  bool is_real() const { return k_.imag() == 0.0; }

 private:
  cplx k_;
};

/// m = 1 (odd image, vanishes on y = 0) or m = 2 (even image).
enum class GreenKind { Dirichlet = 1, Neumann = 2 };
enum class DiffPoint { Source, Target };

inline GreenKind green_for(BoundaryCondition bc) {
  return bc == BoundaryCondition::Dirichlet ? GreenKind::Dirichlet : GreenKind::Neumann;
}

cplx fundamental(const Wavenumber& k, const Vec2& m, const Vec2& p);

/// G_m(k; M, P) = Phi(|M - P|) + (-1)^m Phi(|M - P*|).
cplx greens(GreenKind kind, const Wavenumber& k, const Vec2& m, const Vec2& p);

/// Derivative of greens along `normal` taken at P (Source) or at M (Target).
cplx dgreens(GreenKind kind, DiffPoint wrt, const Wavenumber& k, const Vec2& m, const Vec2& p, const Vec2& normal);

struct FieldValue {
  cplx value;
  cplx dx;
  cplx dy;

  cplx y_derivative() const { return dy; }
  cplx normal_derivative(const Vec2& n) const { return n.x() * dx + n.y() * dy; }
};

/// Downgoing plane wave plus its reflection from the flat boundary y = 0.
/// `incidence` is measured from the downward vertical, in radians.
FieldValue reference_halfplane(BoundaryCondition bc, const Wavenumber& k, double incidence, const Vec2& m);

/// Image pair of point sources located outside the closed domain; its field
/// satisfies the homogeneous boundary condition on the flat part exactly.
class ManufacturedSource {
 public:
  ManufacturedSource(const BoundaryProfile& profile, const Vec2& source);

  const Vec2& location() const { return source_; }
  FieldValue field(BoundaryCondition bc, const Wavenumber& k, const Vec2& m) const;

 private:
  Vec2 source_;
};

cplx point_source_oracle(BoundaryCondition bc, const Wavenumber& k, const BoundaryProfile& profile, const Vec2& source,
                         const Vec2& m);

}  // namespace helmbie
