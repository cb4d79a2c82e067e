#pragma once

#include <string>
#include <vector>

namespace crossext {

struct Witness {
    std::string check;   // which identity family failed
    std::string detail;  // concrete indices / values
};

/// Outcome of an exhaustive verification: valid, or a list of concrete
/// counterexamples naming every violated identity.
struct ValidationReport {
    bool ok = true;
    std::vector<Witness> witnesses;

    void fail(std::string check, std::string detail) {
        ok = false;
        witnesses.push_back({std::move(check), std::move(detail)});
    }
    void merge(const ValidationReport& other) {
        ok = ok && other.ok;
        witnesses.insert(witnesses.end(), other.witnesses.begin(), other.witnesses.end());
    }
    std::string summary(std::size_t max_items = 8) const;
};

std::string version_string();

/// FNV-1a 64-bit content hash, used for report provenance.
std::string fnv1a_hex(const std::string& data);

} // namespace crossext
