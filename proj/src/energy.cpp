#include "uwbsim/energy.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "uwbsim/error.hpp"

namespace uwbsim {

namespace {

// TX/RX/idle/sleep in mW, packet duration in us, transition overhead in uJ.
// The DW1000 values are datasheet figures at 3.3 V; DWM1001 values are
// measured module figures (DW1000 plus BLE SoC), same 287 us packet.
const std::array<PowerProfile, 3> kProfiles{{
    {"3db", 20.7, 40.7, 6.6, 6.25e-4, 400.0, 3.44},
    {"dw1000", 237.6, 392.7, 59.4, 3.3e-4, 287.0, 0.0},
    {"dwm1001", 297.7, 507.21, 47.9, 3.9, 287.0, 0.0},
}};

}  // namespace

void PowerProfile::validate() const {
  for (double p : {p_tx, p_rx, p_idle, p_sleep}) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw InvalidParameter(fmt::format("profile '{}': powers must be finite and >= 0", name));
    }
  }
  if (!(t_packet > 0.0) || !std::isfinite(t_packet)) {
    throw InvalidParameter(fmt::format("profile '{}': t_packet must be > 0 (got {})", name, t_packet));
  }
  if (!(e_transition >= 0.0) || !std::isfinite(e_transition)) {
    throw InvalidParameter(fmt::format("profile '{}': e_transition must be >= 0 (got {})", name, e_transition));
  }
}

std::span<const PowerProfile> builtin_profiles() { return kProfiles; }

std::optional<PowerProfile> find_builtin_profile(std::string_view name) {
  for (const PowerProfile& p : kProfiles) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

double energy_per_sstwr(const PowerProfile& profile) {
  profile.validate();
  // mW * us = nJ
  return (profile.p_tx + profile.p_rx) * profile.t_packet * 1e-3 + profile.e_transition;
}

double average_power(const PowerProfile& profile, double update_period, bool sleep_between) {
  const double active_s = 2.0 * profile.t_packet * 1e-6;
  if (!(update_period > active_s) || !std::isfinite(update_period)) {
    throw DomainError(fmt::format("update period {} s is too short: must exceed two packets ({} s)", update_period,
                                  active_s));
  }
  const double rest_mw = sleep_between ? profile.p_sleep : profile.p_idle;
  // uJ / s = uW; mW * s = mJ.
  const double energy_mj = energy_per_sstwr(profile) * 1e-3 + rest_mw * (update_period - active_s);
  return energy_mj / update_period;
}

}  // namespace uwbsim
