#pragma once

#include <string>
#include <vector>

namespace oclp {

/// One verified quantity: |value| is compared against bound by the producer,
/// which sets pass accordingly (some checks are one-sided; the producer
/// documents the convention per quantity).
struct CheckRecord {
    std::string quantity;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

}  // namespace oclp
