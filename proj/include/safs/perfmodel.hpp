#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "safs/types.hpp"

namespace safs {

/// Relative per-instance performance by server type and co-located instance
/// count. Baremetal is defined only at n=1 (a dedicated host); container and
/// vm curves cover n=1..4.
///
/// Invariants (enforced by load_model / check_model):
///   - ratios(baremetal, 1) == 1.0 and nothing else for baremetal
///   - every ratio in (0, 1]
///   - per type, strictly decreasing in n
///   - n * r(n) >= r(1): splitting a host n ways never yields less total
///     capacity than one instance had
struct PerformanceModel {
    double baseline_index = 1000.0; // index units of one dedicated server
    std::map<ServerType, std::vector<double>> ratios;
};

/// Per-instance relative performance fractions measured at n=1, with the
/// n=2..4 tail shipped as overridable defaults.
PerformanceModel default_model();

void check_model(const PerformanceModel& m);

// Optional JSON config:
//   { "baseline_index": 1000.0,
//     "ratios": { "container": [r1,r2,r3,r4], "vm": [r1,r2,r3,r4] } }
// Missing keys keep their defaults. Throws IoError, FormatError on bad input
// and InvalidModel on invariant violations.
PerformanceModel load_model(const std::string& path);
PerformanceModel parse_model(std::string_view text);

/// A looked-up value plus the extrapolation warning, when one applies.
struct IndexValue {
    double value = 0.0;
    std::optional<std::string> warning;
};

// Table lookup for n <= 4; beyond that the n=4 value is scaled by 4/n (equal
// division of the host) and a warning is attached. Throws
// UnsupportedColocation for (baremetal, n > 1).
IndexValue relative_performance(const PerformanceModel& m, ServerType type, int n);

// baseline_index * relative_performance.
IndexValue capacity_index(const PerformanceModel& m, ServerType type, int n);

} // namespace safs
