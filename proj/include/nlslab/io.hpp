#pragma once

#include <string>
#include <vector>

#include "nlslab/functionals.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/propagator.hpp"

namespace nlslab {

/// Deterministic decimal rendering of a double ("%.17g" with a fixed "-0"
/// and exponent normalization) so CSV output is byte-stable across runs.
std::string format_double(double v);

/// Binary field snapshot: header {magic "NLSF", version u32, n u32,
/// box_length f64} followed by n^2 little-endian complex f64 pairs.
void write_field(const std::string& path, const Field& field);
Field read_field(const std::string& path);

/// Trajectory archive: directory of snapshots plus a JSON index
/// {dt, stride, times[]}.
void write_trajectory(const std::string& dir, const Trajectory& traj);
Trajectory read_trajectory(const std::string& dir);

/// CSV table with an explicit header row; every cell rendered through
/// format_double for string cells pass through verbatim.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
    void add_row(const std::vector<std::string>& cells);
};

void write_csv(const std::string& path, const CsvTable& table);

/// Diagnostics stream with the fixed column order
/// {t, mass, energy, e_iu, px, py, ma, ma2, l4acc, c0, c1}.
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace nlslab
