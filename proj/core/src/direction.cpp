#include "qrs/direction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qrs/spectral.hpp"

namespace qrs {

Direction::Direction(double x, double y, double z) : x_(x), y_(y), z_(z) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw InvariantError("direction components must be finite");
  }
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (std::abs(norm - 1.0) > tol::direction_unit) {
    throw InvariantError("direction must be a unit vector");
  }
}

Direction Direction::from_polar(double theta_rad) {
  return from_spherical(theta_rad, 0.0);
}

Direction Direction::from_spherical(double theta_rad, double phi_rad) {
  const double s = std::sin(theta_rad);
  double x = s * std::cos(phi_rad);
  double y = s * std::sin(phi_rad);
  double z = std::cos(theta_rad);
  // renormalize away the last-ulp drift so the invariant holds exactly
  const double n = std::sqrt(x * x + y * y + z * z);
  return Direction(x / n, y / n, z / n);
}

double Direction::polar_angle() const {
  return std::acos(std::clamp(z_, -1.0, 1.0));
}

double Direction::azimuth() const {
  if (x_ == 0.0 && y_ == 0.0) return 0.0;
  double phi = std::atan2(y_, x_);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return phi;
}

double angle_between(const Direction& a, const Direction& b) {
  const double dot = a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

Matrix pauli_dot(const Direction& n) {
  Matrix m(2, 2);
  m(0, 0) = Complex(n.z(), 0.0);
  m(0, 1) = Complex(n.x(), -n.y());
  m(1, 0) = Complex(n.x(), n.y());
  m(1, 1) = Complex(-n.z(), 0.0);
  return m;
}

std::pair<Vector, Vector> spin_eigenbasis(const Direction& n) {
  const double theta = n.polar_angle();
  const double phi = n.azimuth();
  const Complex e_phi = std::polar(1.0, phi);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);

  Vector plus(2), minus(2);
  plus[0] = Complex(c, 0.0);
  plus[1] = s * e_phi;
  minus[0] = Complex(s, 0.0);
  minus[1] = -c * e_phi;
  return {canonical_phase(std::move(plus)), canonical_phase(std::move(minus))};
}

std::pair<PureState, PureState> spin_eigenbasis(const Direction& n,
                                                const SubsystemId& qubit) {
  if (qubit.dim != 2) {
    throw DimensionError("spin eigenbasis needs a two-level subsystem");
  }
  auto [plus, minus] = spin_eigenbasis(n);
  CompositeSpace space({qubit});
  return {PureState(space, std::move(plus)),
          PureState(space, std::move(minus))};
}

}  // namespace qrs
