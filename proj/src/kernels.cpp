#include "helmbie/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "helmbie/error.hpp"
#include "helmbie/panel_quadrature.hpp"
#include "helmbie/special_functions.hpp"

namespace helmbie {

namespace {
using namespace std::complex_literals;

void require_distinct(const Vec2& a, const Vec2& b) {
  if ((a - b).norm() == 0.0) throw Error(ErrorCode::CoincidentPoints, "kernel evaluated at coincident points");
}

double image_sign(GreenKind kind) { return kind == GreenKind::Dirichlet ? -1.0 : 1.0; }

// Placeholder for the normal a kernel does not use.
Vec2 dummy_normal() { return Vec2(0.0, 1.0); }

}  // namespace

std::string_view to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
}

BoundaryCondition parse_boundary_condition(std::string_view text) {
  if (text == "dirichlet") return BoundaryCondition::Dirichlet;
  if (text == "neumann") return BoundaryCondition::Neumann;
  throw Error(ErrorCode::ConfigInvalid, "bc must be \"dirichlet\" or \"neumann\", got \"" + std::string(text) + "\"");
}

Wavenumber::Wavenumber(cplx k) : k_(k) {
  if (!(k.real() > 0.0) || !(k.imag() >= 0.0) || !std::isfinite(k.real()) || !std::isfinite(k.imag())) {
    std::ostringstream msg;
    msg << "wavenumber must satisfy Re k > 0 and Im k >= 0, got " << k;
    throw Error(ErrorCode::InvalidWavenumber, msg.str());
  }
}

double Wavenumber::wavelength() const { return 2.0 * std::numbers::pi / k_.real(); }

cplx fundamental(const Wavenumber& k, const Vec2& m, const Vec2& p) {
  require_distinct(m, p);
  return 0.25i * special::hankel01(k.value() * (m - p).norm()).h0;
}

cplx greens(GreenKind kind, const Wavenumber& k, const Vec2& m, const Vec2& p) {
  const Vec2 p_image = mirror(p);
  require_distinct(m, p);
  require_distinct(m, p_image);
  const double r = (m - p).norm();
  const double r_image = (m - p_image).norm();
  const cplx direct = 0.25i * special::hankel01(k.value() * r).h0;
  if (r == r_image) return kind == GreenKind::Dirichlet ? cplx(0.0) : 2.0 * direct;
  return direct + image_sign(kind) * 0.25i * special::hankel01(k.value() * r_image).h0;
}

cplx dgreens(GreenKind kind, DiffPoint wrt, const Wavenumber& k, const Vec2& m, const Vec2& p, const Vec2& normal) {
  require_distinct(m, p);
  require_distinct(m, mirror(p));
  const double s = image_sign(kind);
  if (wrt == DiffPoint::Source) {
    // Phi(|M - P*|) = Phi(|M* - P|): differentiate in P with the image target M*.
    return free_kernel(LayerKernel::DoubleSource, k.value(), m, dummy_normal(), p, normal) +
           s * free_kernel(LayerKernel::DoubleSource, k.value(), mirror(m), dummy_normal(), p, normal);
  }
  return free_kernel(LayerKernel::DoubleTarget, k.value(), m, normal, p, dummy_normal()) +
         s * free_kernel(LayerKernel::DoubleTarget, k.value(), mirror(m), mirror(normal), p, dummy_normal());
}

FieldValue reference_halfplane(BoundaryCondition bc, const Wavenumber& k, double incidence, const Vec2& m) {
  const cplx kk = k.value();
  const double s = std::sin(incidence);
  const double c = std::cos(incidence);
  const cplx down = std::exp(1.0i * kk * (m.x() * s - m.y() * c));
  const cplx up = std::exp(1.0i * kk * (m.x() * s + m.y() * c));
  const double sign = bc == BoundaryCondition::Dirichlet ? -1.0 : 1.0;
  FieldValue f;
  f.value = down + sign * up;
  f.dx = 1.0i * kk * s * f.value;
  f.dy = -1.0i * kk * c * down + sign * 1.0i * kk * c * up;
  return f;
}

ManufacturedSource::ManufacturedSource(const BoundaryProfile& profile, const Vec2& source) : source_(source) {
  const double h = profile.height(source.x());
  if (!(source.y() < h) || !(-source.y() < h)) {
    std::ostringstream msg;
    msg << "source (" << source.x() << ", " << source.y() << ") or its mirror lies in the closed domain";
    throw Error(ErrorCode::SourceInsideDomain, msg.str());
  }
}

FieldValue ManufacturedSource::field(BoundaryCondition bc, const Wavenumber& k, const Vec2& m) const {
  const cplx kk = k.value();
  const double sign = bc == BoundaryCondition::Dirichlet ? -1.0 : 1.0;
  FieldValue f{0.0, 0.0, 0.0};
  for (int image = 0; image < 2; ++image) {
    const Vec2 src = image == 0 ? source_ : mirror(source_);
    const double w = image == 0 ? 1.0 : sign;
    const Vec2 d = m - src;
    const double r = d.norm();
    const special::HankelValue h = special::hankel01(kk * r);
    f.value += w * 0.25i * h.h0;
    const cplx radial = -0.25i * kk * h.h1 / r;
    f.dx += w * radial * d.x();
    f.dy += w * radial * d.y();
  }
  return f;
}

cplx point_source_oracle(BoundaryCondition bc, const Wavenumber& k, const BoundaryProfile& profile, const Vec2& source,
                         const Vec2& m) {
  return ManufacturedSource(profile, source).field(bc, k, m).value;
}

}  // namespace helmbie
