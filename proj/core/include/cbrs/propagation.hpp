#pragma once

#include <string>

namespace cbrs {

/// FSPL model constant for d in km and f in MHz:
/// PL = 20 log10(d_km) + 20 log10(f_MHz) + 32.44.
inline constexpr double kFsplConstantDb = 32.44;

inline constexpr double kDefaultEirpDbm = 30.0;  // per 10 MHz
inline constexpr double kDefaultBoundaryLimitDbm = -80.0;
inline constexpr double kDefaultFreqMhz = 3600.0;

enum class DeploymentClass { outdoor, indoor_residential, indoor_commercial, custom };

const char* deployment_class_name(DeploymentClass c);

/// Link-budget inputs that determine the boundary set-back distance.
struct SetbackSpec {
  DeploymentClass deployment_class = DeploymentClass::custom;
  double eirp_dbm = kDefaultEirpDbm;
  double boundary_limit_dbm = kDefaultBoundaryLimitDbm;
  double building_loss_db = 0.0;
  double freq_mhz = kDefaultFreqMhz;
  double rx_gain_dbi = 0.0;

  static SetbackSpec for_class(DeploymentClass c);
};

/// eirp + rx gain - boundary limit - building loss. Throws
/// std::invalid_argument when the result is not positive (set-back undefined)
/// or the spec is malformed (freq <= 0, building loss < 0).
double required_path_loss_db(const SetbackSpec& spec);

/// Inverts the free-space path loss model; returns meters.
double fspl_distance_m(double path_loss_db, double freq_mhz);

/// Set-back distance in meters for a deployment spec.
double setback_distance_m(const SetbackSpec& spec);

/// Composes required_path_loss_db and fspl_distance_m for a named class.
double setback_for_deployment(DeploymentClass c);

} // namespace cbrs
