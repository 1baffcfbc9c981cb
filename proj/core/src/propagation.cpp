#include "cbrs/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace cbrs {

const char* deployment_class_name(DeploymentClass c) {
  switch (c) {
    case DeploymentClass::outdoor: return "outdoor";
    case DeploymentClass::indoor_residential: return "indoor-residential";
    case DeploymentClass::indoor_commercial: return "indoor-commercial";
    case DeploymentClass::custom: return "custom";
  }
  return "custom";
}

SetbackSpec SetbackSpec::for_class(DeploymentClass c) {
  SetbackSpec spec;
  spec.deployment_class = c;
  switch (c) {
    case DeploymentClass::outdoor:
      spec.building_loss_db = 0.0;
      break;
    case DeploymentClass::indoor_residential:
      spec.building_loss_db = 10.0;
      break;
    case DeploymentClass::indoor_commercial:
      spec.building_loss_db = 20.0;
      break;
    case DeploymentClass::custom:
      break;
  }
  return spec;
}

double required_path_loss_db(const SetbackSpec& spec) {
  if (!(spec.freq_mhz > 0.0)) {
    throw std::invalid_argument("frequency must be positive");
  }
  if (spec.building_loss_db < 0.0) {
    throw std::invalid_argument("building loss must be non-negative");
  }
  const double pl = spec.eirp_dbm + spec.rx_gain_dbi - spec.boundary_limit_dbm -
                    spec.building_loss_db;
  if (!(pl > 0.0)) {
    throw std::invalid_argument("link budget leaves no path loss to absorb");
  }
  return pl;
}

double fspl_distance_m(double path_loss_db, double freq_mhz) {
  if (!(freq_mhz > 0.0)) {
    throw std::invalid_argument("frequency must be positive");
  }
  const double exponent =
      (path_loss_db - kFsplConstantDb - 20.0 * std::log10(freq_mhz)) / 20.0;
  return std::pow(10.0, exponent) * 1000.0;
}

double setback_distance_m(const SetbackSpec& spec) {
  return fspl_distance_m(required_path_loss_db(spec), spec.freq_mhz);
}

double setback_for_deployment(DeploymentClass c) {
  return setback_distance_m(SetbackSpec::for_class(c));
}

} // namespace cbrs
