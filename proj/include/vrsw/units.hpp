#pragma once

// SI inputs are converted once at the boundary; everything internal runs in
// kilometers and days.

namespace vrsw::units {

inline constexpr double kSecondsPerDay = 86400.0;

constexpr double seconds_to_days(double s) { return s / kSecondsPerDay; }
constexpr double meters_to_km(double m) { return m * 1e-3; }

// m/s^2 -> km/day^2
constexpr double gravity_si_to_internal(double m_per_s2) {
  return m_per_s2 * 1e-3 * kSecondsPerDay * kSecondsPerDay;
}

// 1/s -> 1/day
constexpr double per_second_to_per_day(double per_s) {
  return per_s * kSecondsPerDay;
}

// m/s -> km/day
constexpr double speed_si_to_internal(double m_per_s) {
  return m_per_s * 1e-3 * kSecondsPerDay;
}

}  // namespace vrsw::units
