#include "crossext/report.hpp"

#include <cstdint>
#include <sstream>

namespace crossext {

std::string ValidationReport::summary(std::size_t max_items) const {
    if (ok) return "valid";
    std::ostringstream os;
    os << witnesses.size() << " violation(s)";
    std::size_t n = witnesses.size() < max_items ? witnesses.size() : max_items;
    for (std::size_t i = 0; i < n; ++i)
        os << "; [" << witnesses[i].check << "] " << witnesses[i].detail;
    if (witnesses.size() > n) os << "; ...";
    return os.str();
}

std::string version_string() { return "crossext 0.1.0"; }

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

} // namespace crossext
