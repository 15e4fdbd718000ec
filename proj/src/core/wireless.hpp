#pragma once

#include <cmath>
#include <stdexcept>

namespace craft {

// Wireless channel model for the user -> edge hop. Wired links carry fixed
// bitrates; only the wireless hop depends on how many users share a site and
// how many access points it deploys.

// Mean interference power at an edge site, in watts. The attached-user to
// access-point ratio is real-valued; at or below 1 the spectrum is clean.
inline double mean_interference(int n_attached, int ac, double p_watts, double h_bar) {
  if (ac < 1) throw std::domain_error("mean_interference: access-point count must be >= 1");
  if (n_attached < 0) throw std::domain_error("mean_interference: negative attached-user count");
  const double ratio = static_cast<double>(n_attached) / static_cast<double>(ac);
  if (ratio <= 1.0) return 0.0;
  return (ratio - 1.0) * p_watts * h_bar;
}

// Signal-to-interference-plus-noise ratio, dimensionless.
inline double sinr(double p_watts, double h_bar, double sigma2_watts, double i_bar_watts) {
  if (sigma2_watts <= 0.0) throw std::domain_error("sinr: noise power must be > 0");
  if (i_bar_watts < 0.0) throw std::domain_error("sinr: negative interference");
  return p_watts * h_bar / (sigma2_watts + i_bar_watts);
}

// Shannon capacity of the wireless hop, bits per second.
inline double wireless_bitrate(double w_hz, double sinr_value) {
  if (w_hz <= 0.0) throw std::domain_error("wireless_bitrate: bandwidth must be > 0");
  if (sinr_value < 0.0) throw std::domain_error("wireless_bitrate: negative SINR");
  return w_hz * std::log2(1.0 + sinr_value);
}

}  // namespace craft
