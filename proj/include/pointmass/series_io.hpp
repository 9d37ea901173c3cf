// CSV input/output for run series, snapshots and kernel tables.
// Numbers are written in shortest round-trip form, independent of locale.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pointmass/solver.hpp"

namespace pointmass {

std::string format_number(double v);
double parse_number(const std::string& s);

inline constexpr const char* kSeriesHeader = "t,V,u_inf,mass,momentum,energy_plus_dissipation";
inline constexpr const char* kSnapshotHeader = "x,tau,u";

void write_series_row(std::ostream& os, const SeriesRow& r);
void write_series(const std::string& path, const std::vector<SeriesRow>& rows);
std::vector<SeriesRow> read_series(const std::string& path);

/// snap_t<value>.csv
std::string snapshot_filename(double t);
void write_snapshot(const std::string& path, const Snapshot& s);
/// The time is taken from the file name when it follows the pattern.
Snapshot read_snapshot(const std::string& path);

/// Generic numeric table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(const std::string& path);

}  // namespace pointmass
