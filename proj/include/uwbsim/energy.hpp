#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace uwbsim {

/// Average power per radio state for one device class.
struct PowerProfile {
  std::string name;
  double p_tx = 0.0;          // mW
  double p_rx = 0.0;          // mW
  double p_idle = 0.0;        // mW
  double p_sleep = 0.0;       // mW
  double t_packet = 0.0;      // us
  double e_transition = 0.0;  // uJ, lumped state-transition overhead per SS-TWR

  /// Throws InvalidParameter on negative powers, t_packet <= 0 or e_transition < 0.
  void validate() const;
};

/// Built-in profiles: "3db", "dw1000", "dwm1001".
std::span<const PowerProfile> builtin_profiles();
std::optional<PowerProfile> find_builtin_profile(std::string_view name);

/// Initiator energy for one SS-TWR exchange (one TX and one RX packet), in uJ.
double energy_per_sstwr(const PowerProfile& profile);

/// Average power over one update period (s), resting in sleep or idle
/// between exchanges, in mW. Throws DomainError if the period is not longer
/// than two packets.
double average_power(const PowerProfile& profile, double update_period, bool sleep_between);

}  // namespace uwbsim
