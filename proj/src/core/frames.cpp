#include "terrasense/core/frames.hpp"

#include <cmath>

#include "terrasense/core/errors.hpp"

namespace terrasense {

void VehicleParams::validate() const {
  const double fields[] = {width,        length,     weight,
                           cg_height,    wheel_radius, torque_constant,
                           gear_ratio,   sprung_mass,  wheel_stiffness,
                           wheel_damping};
  for (double f : fields) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw InvalidArgumentError("vehicle parameters must be strictly positive");
    }
  }
}

double VehicleParams::natural_frequency_hz() const {
  return std::sqrt(wheel_stiffness / sprung_mass) / (2.0 * M_PI);
}

std::string to_string(TerrainClass c) {
  switch (c) {
    case TerrainClass::PloughedTerrain: return "ploughed";
    case TerrainClass::UnploughedTerrain: return "unploughed";
    case TerrainClass::DirtRoad: return "dirt_road";
    case TerrainClass::Gravel: return "gravel";
  }
  throw InvalidArgumentError("unknown terrain class");
}

TerrainClass terrain_class_from_string(const std::string& name) {
  if (name == "ploughed") return TerrainClass::PloughedTerrain;
  if (name == "unploughed") return TerrainClass::UnploughedTerrain;
  if (name == "dirt_road" || name == "dirt-road" || name == "dirt")
    return TerrainClass::DirtRoad;
  if (name == "gravel") return TerrainClass::Gravel;
  throw InvalidArgumentError("unknown terrain class '" + name + "'");
}

std::string display_name(TerrainClass c) {
  switch (c) {
    case TerrainClass::PloughedTerrain: return "Ploughed terrain";
    case TerrainClass::UnploughedTerrain: return "Unploughed terrain";
    case TerrainClass::DirtRoad: return "Dirt road";
    case TerrainClass::Gravel: return "Gravel";
  }
  throw InvalidArgumentError("unknown terrain class");
}

Eigen::Matrix3d rotation_matrix_rpy(const Attitude& attitude) {
  if (!std::isfinite(attitude.roll) || !std::isfinite(attitude.pitch) ||
      !std::isfinite(attitude.yaw)) {
    throw InvalidArgumentError("attitude angles must be finite");
  }
  const double cphi = std::cos(attitude.roll), sphi = std::sin(attitude.roll);
  const double cth = std::cos(attitude.pitch), sth = std::sin(attitude.pitch);
  const double cpsi = std::cos(attitude.yaw), spsi = std::sin(attitude.yaw);

  Eigen::Matrix3d r;
  r << cpsi * cth, cpsi * sth * sphi - spsi * cphi, cpsi * sth * cphi + spsi * sphi,
       spsi * cth, spsi * sth * sphi + cpsi * cphi, spsi * sth * cphi - cpsi * sphi,
       -sth,       cth * sphi,                      cth * cphi;
  return r;
}

Eigen::Vector3d weight_in_vrf(double weight, const Attitude& attitude) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw InvalidArgumentError("weight must be strictly positive");
  }
  if (!std::isfinite(attitude.roll) || !std::isfinite(attitude.pitch)) {
    throw InvalidArgumentError("attitude angles must be finite");
  }
  const double cphi = std::cos(attitude.roll), sphi = std::sin(attitude.roll);
  const double cth = std::cos(attitude.pitch), sth = std::sin(attitude.pitch);
  return {weight * sth, -weight * cth * sphi, -weight * cth * cphi};
}

}  // namespace terrasense
