#include "helmbie/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "helmbie/error.hpp"

namespace helmbie {

namespace {

using nlohmann::json;
using std::numbers::pi;

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ConfigInvalid, field + ": " + what);
}

const json& member(const json& j, const std::string& parent, const char* key) {
  const std::string field = parent.empty() ? key : parent + "." + key;
  if (!j.is_object() || !j.contains(key)) invalid(field, "missing");
  return j.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) invalid(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) invalid(field, "must be finite");
  return v;
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) invalid(field, "expected an integer");
  return j.get<int>();
}

Vec2 point(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) invalid(field, "expected an [x, y] pair");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

std::vector<Vec2> points(const json& j, const std::string& field) {
  if (!j.is_array()) invalid(field, "expected an array of [x, y] pairs");
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Excitation parse_excitation(const json& j) {
  if (!j.is_object() || j.size() != 1) invalid("excitation", "expected exactly one of plane_wave, point_source");
  if (j.contains("plane_wave")) {
    const json& pw = j.at("plane_wave");
    const double deg = number(member(pw, "excitation.plane_wave", "incidence_deg"), "excitation.plane_wave.incidence_deg");
    if (!(std::abs(deg) < 90.0)) invalid("excitation.plane_wave.incidence_deg", "must lie in (-90, 90)");
    return PlaneWave{deg * pi / 180.0};
  }
  if (j.contains("point_source")) {
    const json& ps = j.at("point_source");
    return PointSource{Vec2(number(member(ps, "excitation.point_source", "x"), "excitation.point_source.x"),
                            number(member(ps, "excitation.point_source", "y"), "excitation.point_source.y"))};
  }
  invalid("excitation", "expected plane_wave or point_source");
}

// Library errors raised while validating a field are reported against it.
template <typename F>
auto checked(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid) throw;
    invalid(field, e.what());
  }
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) invalid("config", "expected a JSON object");
  RunConfig c;

  c.profile = points(member(j, "", "profile"), "profile");
  const BoundaryProfile profile = checked("profile", [&] { return build_profile(c.profile); });
  if (profile.min_height() < 0.0) invalid("profile", "heights must be non-negative");

  const json& k = member(j, "", "wavenumber");
  const double re = number(member(k, "wavenumber", "re"), "wavenumber.re");
  const double im = k.contains("im") ? number(k.at("im"), "wavenumber.im") : 0.0;
  if (!(re > 0.0)) invalid("wavenumber.re", "must be positive");
  if (im < 0.0) invalid("wavenumber.im", "must be non-negative");
  c.wavenumber = cplx(re, im);

  const json& bc = member(j, "", "bc");
  if (!bc.is_string()) invalid("bc", "expected \"dirichlet\" or \"neumann\"");
  const std::string bc_text = bc.get<std::string>();
  if (bc_text != "dirichlet" && bc_text != "neumann") invalid("bc", "expected \"dirichlet\" or \"neumann\"");
  c.bc = parse_boundary_condition(bc_text);

  c.excitation = parse_excitation(member(j, "", "excitation"));
  if (const auto* ps = std::get_if<PointSource>(&c.excitation)) {
    checked("excitation.point_source", [&] { return ManufacturedSource(profile, ps->location); });
  }

  if (j.contains("mesh")) {
    const json& m = j.at("mesh");
    if (!m.is_object()) invalid("mesh", "expected an object");
    if (m.contains("n_panels")) {
      const int n = integer(m.at("n_panels"), "mesh.n_panels");
      if (n < 4) invalid("mesh.n_panels", "must be at least 4");
      c.mesh.n_panels = static_cast<std::size_t>(n);
    }
    if (m.contains("grading_q")) c.mesh.grading = number(m.at("grading_q"), "mesh.grading_q");
    if (m.contains("gauss_per_panel")) {
      const int g = integer(m.at("gauss_per_panel"), "mesh.gauss_per_panel");
      if (g < 1 || g > 16) invalid("mesh.gauss_per_panel", "must lie in [1, 16]");
      c.mesh.gauss_per_panel = static_cast<std::size_t>(g);
    }
  }
  if (!(c.mesh.grading >= 1.0)) invalid("mesh.grading_q", "must be at least 1");

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    if (!s.is_object()) invalid("solver", "expected an object");
    if (s.contains("method")) {
      const json& m = s.at("method");
      if (m == "dense") {
        c.solver.solver = LinearSolver::Dense;
      } else if (m == "gmres") {
        c.solver.solver = LinearSolver::Gmres;
      } else {
        invalid("solver.method", "expected \"dense\" or \"gmres\"");
      }
    }
    if (s.contains("tolerance")) c.solver.gmres_tolerance = number(s.at("tolerance"), "solver.tolerance");
    if (!(c.solver.gmres_tolerance > 0.0)) invalid("solver.tolerance", "must be positive");
  }

  if (j.contains("eval")) {
    const json& e = j.at("eval");
    if (!e.is_object()) invalid("eval", "expected an object");
    if (e.contains("grid")) {
      const json& g = e.at("grid");
      GridSpec grid;
      grid.x0 = number(member(g, "eval.grid", "x0"), "eval.grid.x0");
      grid.x1 = number(member(g, "eval.grid", "x1"), "eval.grid.x1");
      grid.y0 = number(member(g, "eval.grid", "y0"), "eval.grid.y0");
      grid.y1 = number(member(g, "eval.grid", "y1"), "eval.grid.y1");
      grid.nx = integer(member(g, "eval.grid", "nx"), "eval.grid.nx");
      grid.ny = integer(member(g, "eval.grid", "ny"), "eval.grid.ny");
      if (grid.nx < 1 || grid.ny < 1) invalid("eval.grid", "nx and ny must be positive");
      if (grid.x1 < grid.x0 || grid.y1 < grid.y0) invalid("eval.grid", "expected x0 <= x1 and y0 <= y1");
      double top = 0.0;
      for (const Vec2& b : c.profile) top = std::max(top, b.y());
      if (!(grid.y0 > top)) invalid("eval.grid.y0", "grid must lie above the highest boundary point");
      c.eval.grid = grid;
    }
    if (e.contains("farfield_angles_deg")) {
      const json& a = e.at("farfield_angles_deg");
      if (!a.is_array()) invalid("eval.farfield_angles_deg", "expected an array");
      for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string field = "eval.farfield_angles_deg[" + std::to_string(i) + "]";
        const double deg = number(a[i], field);
        if (!(deg > 0.0 && deg < 180.0)) invalid(field, "must lie in (0, 180)");
        c.eval.farfield_angles_deg.push_back(deg);
      }
    }
    if (e.contains("probes")) {
      c.eval.probes = points(e.at("probes"), "eval.probes");
      for (std::size_t i = 0; i < c.eval.probes.size(); ++i) {
        if (!profile.contains(c.eval.probes[i].x(), c.eval.probes[i].y())) {
          invalid("eval.probes[" + std::to_string(i) + "]", "must lie above the boundary");
        }
      }
    }
  }

  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) invalid("output_dir", "expected a string");
    c.output_dir = j.at("output_dir").get<std::string>();
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "config: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("config: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["profile"] = json::array();
  for (const Vec2& p : c.profile) j["profile"].push_back({p.x(), p.y()});
  j["wavenumber"] = {{"re", c.wavenumber.real()}, {"im", c.wavenumber.imag()}};
  j["bc"] = std::string(to_string(c.bc));
  if (const auto* pw = std::get_if<PlaneWave>(&c.excitation)) {
    j["excitation"] = {{"plane_wave", {{"incidence_deg", pw->incidence * 180.0 / pi}}}};
  } else if (const auto* ps = std::get_if<PointSource>(&c.excitation)) {
    j["excitation"] = {{"point_source", {{"x", ps->location.x()}, {"y", ps->location.y()}}}};
  }
  j["mesh"] = {{"n_panels", c.mesh.n_panels}, {"grading_q", c.mesh.grading}, {"gauss_per_panel", c.mesh.gauss_per_panel}};
  j["solver"] = {{"method", c.solver.solver == LinearSolver::Dense ? "dense" : "gmres"},
                 {"tolerance", c.solver.gmres_tolerance}};
  json e = json::object();
  if (c.eval.grid) {
    const GridSpec& g = *c.eval.grid;
    e["grid"] = {{"x0", g.x0}, {"x1", g.x1}, {"y0", g.y0}, {"y1", g.y1}, {"nx", g.nx}, {"ny", g.ny}};
  }
  e["farfield_angles_deg"] = c.eval.farfield_angles_deg;
  e["probes"] = json::array();
  for (const Vec2& p : c.eval.probes) e["probes"].push_back({p.x(), p.y()});
  j["eval"] = e;
  if (!c.output_dir.empty()) j["output_dir"] = c.output_dir;
  return j;
}

std::vector<Vec2> grid_points(const GridSpec& g) {
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny));
  for (int iy = 0; iy < g.ny; ++iy) {
    const double y = g.ny == 1 ? g.y0 : g.y0 + (g.y1 - g.y0) * iy / (g.ny - 1);
    for (int ix = 0; ix < g.nx; ++ix) {
      const double x = g.nx == 1 ? g.x0 : g.x0 + (g.x1 - g.x0) * ix / (g.nx - 1);
      out.emplace_back(x, y);
    }
  }
  return out;
}

}  // namespace helmbie
