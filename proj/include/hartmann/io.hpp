#pragma once

#include <map>
#include <string>
#include <vector>

#include "hartmann/diagnostics.hpp"
#include "hartmann/solver.hpp"

namespace hartmann {

/// On-disk snapshot: one JSON header line (t, grid, params echo, field list,
/// byte order, layout, scalar type) followed by the raw little-endian
/// float64 payloads in the declared order, each row x-major.
struct SnapshotData {
    double t = 0.0;
    GridSpec grid;
    std::vector<std::string> field_names;
    std::map<std::string, Field> fields;
};

void write_snapshot(const std::string& path, const State& s, const Params& p);
SnapshotData read_snapshot(const std::string& path);

/// Diagnostics CSV: one '#' comment line echoing the fitted constants, a
/// fixed header, then one row per recorded sample (%.17g, byte-stable).
/// stop_reason is written on the final row only.
void write_diagnostics_csv(const std::string& path, const DiagnosedRun& run);

/// Serialize a double with round-trip precision (%.17g).
std::string format_double(double v);

} // namespace hartmann
