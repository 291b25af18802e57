#include "rqd/units.hpp"

#include <stdexcept>

namespace rqd {

namespace {

// seconds per unit
long double unit_in_seconds(TimeUnit u) {
    switch (u) {
        case TimeUnit::au: return 2.418884326509e-17L;
        case TimeUnit::s: return 1.0L;
        case TimeUnit::ns: return 1e-9L;
        case TimeUnit::ps: return 1e-12L;
        case TimeUnit::ms: return 1e-3L;
    }
    throw std::invalid_argument("unknown time unit");
}

} // namespace

TimeUnit parse_time_unit(const std::string& name) {
    if (name == "au" || name == "a.u." || name == "a.u") return TimeUnit::au;
    if (name == "s") return TimeUnit::s;
    if (name == "ns") return TimeUnit::ns;
    if (name == "ps") return TimeUnit::ps;
    if (name == "ms") return TimeUnit::ms;
    throw std::invalid_argument("unknown time unit: " + name);
}

std::string time_unit_name(TimeUnit u) {
    switch (u) {
        case TimeUnit::au: return "au";
        case TimeUnit::s: return "s";
        case TimeUnit::ns: return "ns";
        case TimeUnit::ps: return "ps";
        case TimeUnit::ms: return "ms";
    }
    return "?";
}

double convert_time(double value, TimeUnit from, TimeUnit to) {
    if (from == to) return value;
    const long double r = unit_in_seconds(from) / unit_in_seconds(to);
    return static_cast<double>(static_cast<long double>(value) * r);
}

} // namespace rqd
