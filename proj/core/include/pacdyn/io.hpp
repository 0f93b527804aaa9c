#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pacdyn/diagnostics.hpp"
#include "pacdyn/grid.hpp"
#include "pacdyn/model.hpp"

namespace pacdyn {

/// Snapshot file: two comment lines
///   # N=<n> t=<time> step=<k>
///   # kappa=<v> surface=<variant>
/// followed by N+1 comma-separated rows of N+1 values (row j holds y = j h),
/// 17 significant digits.
struct Snapshot {
    int N = 0;
    double t = 0.0;
    long step = 0;
    double kappa = 0.0;
    std::string surface;
    Field u;
};

void write_snapshot(std::ostream& os, const GridSpec& g, const Field& u, double t, long step,
                    double kappa, const SurfacePotentialSpec& s);
/// Throws IoError on a malformed header or body.
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot_file(const std::string& path);

std::string snapshot_filename(long step);

/// series.csv: header line, then one row per DiagRecord.
inline constexpr const char* kSeriesHeader =
    "step,time,mass_bulk,mass_surf,energy_bulk,energy_surf,energy_total,steady_residual,"
    "solver_iterations";

void write_series_header(std::ostream& os);
void write_series_row(std::ostream& os, const DiagRecord& r);
/// Throws IoError on a bad header or malformed row. A trailing partial line
/// (a run killed mid-write) is ignored.
std::vector<DiagRecord> read_series(std::istream& is);

} // namespace pacdyn
