#ifndef QRS_DIRECTION_HPP
#define QRS_DIRECTION_HPP

#include <utility>

#include "qrs/space.hpp"
#include "qrs/state.hpp"
#include "qrs/types.hpp"

namespace qrs {

// Unit 3-vector selecting a spin measurement axis.
class Direction {
 public:
  Direction(double x, double y, double z);

  // Axis in the x-z plane at polar angle theta from +z: (sin, 0, cos).
  static Direction from_polar(double theta_rad);
  static Direction from_spherical(double theta_rad, double phi_rad);

  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }

  double polar_angle() const;  // acos(z), in [0, pi]
  double azimuth() const;      // atan2(y, x) mapped into [0, 2*pi)

  friend bool operator==(const Direction& a, const Direction& b) {
    return a.x_ == b.x_ && a.y_ == b.y_ && a.z_ == b.z_;
  }

 private:
  double x_, y_, z_;
};

// Angle between two directions, in [0, pi].
double angle_between(const Direction& a, const Direction& b);

// The 2x2 operator n . sigma (Pauli vector).
Matrix pauli_dot(const Direction& n);

// Eigenvectors of n . sigma for eigenvalues +1 and -1, in the (up, down)
// basis, phase-fixed per the canonical convention.
std::pair<Vector, Vector> spin_eigenbasis(const Direction& n);

// Same, wrapped as states of a named qubit.
std::pair<PureState, PureState> spin_eigenbasis(const Direction& n,
                                                const SubsystemId& qubit);

}  // namespace qrs

#endif  // QRS_DIRECTION_HPP
