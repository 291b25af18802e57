#pragma once

#include <string>

namespace rqd {

// 1 a.u. of time in seconds (Hartree convention).
inline constexpr double kAuTimeInSeconds = 2.418884326509e-17;

enum class TimeUnit { au, s, ns, ps, ms };

TimeUnit parse_time_unit(const std::string& name);
std::string time_unit_name(TimeUnit u);

// Converts between time units through extended precision so that a
// round trip is identity to within 1 ulp.
double convert_time(double value, TimeUnit from, TimeUnit to);

} // namespace rqd
