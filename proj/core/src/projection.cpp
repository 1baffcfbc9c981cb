#include "cbrs/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbrs {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

// Third flattening and derived series, evaluated once.
struct KrugerSeries {
  double n;        // third flattening
  double e;        // first eccentricity
  double e2;       // e squared
  double radius;   // rectifying radius A
  double alpha[6]; // forward series
  double beta[6];  // inverse series
};

KrugerSeries make_series() {
  KrugerSeries s{};
  const double f = kWgs84Flattening;
  const double n = f / (2.0 - f);
  const double n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n, n6 = n5 * n;
  s.n = n;
  s.e2 = f * (2.0 - f);
  s.e = std::sqrt(s.e2);
  s.radius = kWgs84SemiMajorM / (1.0 + n) *
             (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);
  s.alpha[0] = n / 2.0 - 2.0 / 3.0 * n2 + 5.0 / 16.0 * n3 + 41.0 / 180.0 * n4 -
               127.0 / 288.0 * n5 + 7891.0 / 37800.0 * n6;
  s.alpha[1] = 13.0 / 48.0 * n2 - 3.0 / 5.0 * n3 + 557.0 / 1440.0 * n4 +
               281.0 / 630.0 * n5 - 1983433.0 / 1935360.0 * n6;
  s.alpha[2] = 61.0 / 240.0 * n3 - 103.0 / 140.0 * n4 + 15061.0 / 26880.0 * n5 +
               167603.0 / 181440.0 * n6;
  s.alpha[3] = 49561.0 / 161280.0 * n4 - 179.0 / 168.0 * n5 +
               6601661.0 / 7257600.0 * n6;
  s.alpha[4] = 34729.0 / 80640.0 * n5 - 3418889.0 / 1995840.0 * n6;
  s.alpha[5] = 212378941.0 / 319334400.0 * n6;
  s.beta[0] = n / 2.0 - 2.0 / 3.0 * n2 + 37.0 / 96.0 * n3 - 1.0 / 360.0 * n4 -
              81.0 / 512.0 * n5 + 96199.0 / 604800.0 * n6;
  s.beta[1] = 1.0 / 48.0 * n2 + 1.0 / 15.0 * n3 - 437.0 / 1440.0 * n4 +
              46.0 / 105.0 * n5 - 1118711.0 / 3870720.0 * n6;
  s.beta[2] = 17.0 / 480.0 * n3 - 37.0 / 840.0 * n4 - 209.0 / 4480.0 * n5 +
              5569.0 / 90720.0 * n6;
  s.beta[3] = 4397.0 / 161280.0 * n4 - 11.0 / 504.0 * n5 -
              830251.0 / 7257600.0 * n6;
  s.beta[4] = 4583.0 / 161280.0 * n5 - 108847.0 / 3991680.0 * n6;
  s.beta[5] = 20648693.0 / 638668800.0 * n6;
  return s;
}

const KrugerSeries& series() {
  static const KrugerSeries s = make_series();
  return s;
}

// Conformal latitude in tangent form: tau' as a function of tau = tan(phi).
double tau_prime(double tau) {
  const KrugerSeries& s = series();
  const double sigma =
      std::sinh(s.e * std::atanh(s.e * tau / std::sqrt(1.0 + tau * tau)));
  return tau * std::sqrt(1.0 + sigma * sigma) -
         sigma * std::sqrt(1.0 + tau * tau);
}

// Newton inversion of tau_prime.
double tau_from_tau_prime(double tp) {
  const KrugerSeries& s = series();
  double tau = tp / (1.0 - s.e2);  // spherical-ish first guess
  for (int it = 0; it < 12; ++it) {
    const double sigma =
        std::sinh(s.e * std::atanh(s.e * tau / std::sqrt(1.0 + tau * tau)));
    const double f = tau * std::sqrt(1.0 + sigma * sigma) -
                     sigma * std::sqrt(1.0 + tau * tau) - tp;
    const double df = (std::sqrt(1.0 + sigma * sigma) *
                           std::sqrt(1.0 + tau * tau) -
                       sigma * tau) *
                      (1.0 - s.e2) * std::sqrt(1.0 + tau * tau) /
                      (1.0 + (1.0 - s.e2) * tau * tau);
    const double step = f / df;
    tau -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(tau))) break;
  }
  return tau;
}

} // namespace

double utm_central_meridian_deg(int zone) {
  return -183.0 + 6.0 * static_cast<double>(zone);
}

UtmZone select_utm_zone(std::span<const GeodeticPoint> points) {
  if (points.empty()) throw std::invalid_argument("utm zone of empty point set");
  double lat_sum = 0.0, lon_sum = 0.0;
  for (const auto& p : points) {
    lat_sum += p.lat_deg;
    lon_sum += p.lon_deg;
  }
  const double lat = lat_sum / static_cast<double>(points.size());
  const double lon = lon_sum / static_cast<double>(points.size());
  int zone = static_cast<int>(std::floor((lon + 180.0) / 6.0)) + 1;
  zone = std::clamp(zone, 1, 60);
  return {zone, lat >= 0.0 ? Hemisphere::north : Hemisphere::south};
}

UtmPoint geodetic_to_utm(const GeodeticPoint& p, UtmZone zone) {
  if (std::abs(p.lat_deg) > 84.0) {
    throw std::domain_error("latitude outside UTM range");
  }
  if (zone.zone < 1 || zone.zone > 60) {
    throw std::domain_error("UTM zone outside 1..60");
  }
  const KrugerSeries& s = series();
  const double phi = p.lat_deg * kDegToRad;
  double dlon = p.lon_deg - utm_central_meridian_deg(zone.zone);
  while (dlon > 180.0) dlon -= 360.0;
  while (dlon < -180.0) dlon += 360.0;
  if (std::abs(dlon) > 30.0) {
    throw std::domain_error("point too far from zone central meridian");
  }
  const double lam = dlon * kDegToRad;

  const double tp = tau_prime(std::tan(phi));
  const double cos_lam = std::cos(lam);
  const double xi_p = std::atan2(tp, cos_lam);
  const double eta_p =
      std::asinh(std::sin(lam) / std::sqrt(tp * tp + cos_lam * cos_lam));

  double xi = xi_p;
  double eta = eta_p;
  for (int j = 0; j < 6; ++j) {
    const double two_j = 2.0 * static_cast<double>(j + 1);
    xi += s.alpha[j] * std::sin(two_j * xi_p) * std::cosh(two_j * eta_p);
    eta += s.alpha[j] * std::cos(two_j * xi_p) * std::sinh(two_j * eta_p);
  }

  UtmPoint out;
  out.zone = zone.zone;
  out.hemisphere = zone.hemisphere;
  out.easting_m = kUtmFalseEastingM + kUtmScaleFactor * s.radius * eta;
  double northing = kUtmScaleFactor * s.radius * xi;
  if (zone.hemisphere == Hemisphere::south) northing += kUtmFalseNorthingSouthM;
  out.northing_m = northing;
  return out;
}

GeodeticPoint utm_to_geodetic(const UtmPoint& p) {
  if (p.zone < 1 || p.zone > 60) {
    throw std::domain_error("UTM zone outside 1..60");
  }
  const KrugerSeries& s = series();
  double northing = p.northing_m;
  if (p.hemisphere == Hemisphere::south) northing -= kUtmFalseNorthingSouthM;
  const double xi = northing / (kUtmScaleFactor * s.radius);
  const double eta = (p.easting_m - kUtmFalseEastingM) / (kUtmScaleFactor * s.radius);

  double xi_p = xi;
  double eta_p = eta;
  for (int j = 0; j < 6; ++j) {
    const double two_j = 2.0 * static_cast<double>(j + 1);
    xi_p -= s.beta[j] * std::sin(two_j * xi) * std::cosh(two_j * eta);
    eta_p -= s.beta[j] * std::cos(two_j * xi) * std::sinh(two_j * eta);
  }

  const double sinh_eta = std::sinh(eta_p);
  const double cos_xi = std::cos(xi_p);
  const double tp =
      std::sin(xi_p) / std::sqrt(sinh_eta * sinh_eta + cos_xi * cos_xi);
  const double tau = tau_from_tau_prime(tp);

  GeodeticPoint out;
  out.lat_deg = std::atan(tau) * kRadToDeg;
  out.lon_deg = utm_central_meridian_deg(p.zone) +
                std::atan2(sinh_eta, cos_xi) * kRadToDeg;
  return out;
}

double haversine_distance(const GeodeticPoint& a, const GeodeticPoint& b) {
  const double phi1 = a.lat_deg * kDegToRad;
  const double phi2 = b.lat_deg * kDegToRad;
  const double dphi = phi2 - phi1;
  const double dlam = (b.lon_deg - a.lon_deg) * kDegToRad;
  const double sp = std::sin(dphi / 2.0);
  const double sl = std::sin(dlam / 2.0);
  const double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  return 2.0 * kEarthMeanRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

} // namespace cbrs
