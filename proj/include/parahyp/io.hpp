#pragma once

#include <string>
#include <vector>

#include "parahyp/envelope.hpp"
#include "parahyp/solver.hpp"

namespace parahyp {

// All writers are atomic: content goes to a temp file in the target
// directory, then a rename.
void atomic_write_text(const std::string& path, const std::string& content);
void ensure_directory(const std::string& path);

// Shortest-exact decimal for a double ("%.17g", trimmed); same bytes on
// every run of the same build.
std::string format_double(double v);

// Inverse of format_double for the full double range including subnormals
// (std::stod raises out_of_range for those on glibc). The whole string must
// parse; throws InvalidArgument otherwise.
double parse_double(const std::string& text);

// One '#' header block documents the column meanings and pins the transform
// normalization: f(x) = sum_k G_k exp(i k.x), ||f||_L2^2 = (2pi)^dim sum|G_k|^2.
std::string csv_normalization_comment();

void write_csv(const std::string& path,
               const std::vector<std::string>& comment_lines,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

// Minimal reader for the files written above (comments skipped); used to
// re-derive pass/fail from emitted artifacts.
struct CsvData {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<double> column(const std::string& name) const;
};
CsvData read_csv(const std::string& path);

// Trajectory CSV: t, Hs, L2, A, B, intB, L2_c0.. per diagnostic sample.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

// Envelope CSV: k, a_k (shell norm), c_k.
void write_envelope_csv(const FrequencyEnvelope& env,
                        const std::vector<double>& shell_norms,
                        const std::string& path);

// State dump, little-endian:
//   magic "PARAHYP\0" | u32 version=1 | u32 dim | u32 points_per_axis
//   | u32 components | u64 sample_count
//   then per sample: f64 time, components * points f64 values.
void write_state_dump(const Trajectory& traj, const std::string& path);

struct StateDump {
  GridSpec grid;
  int components = 1;
  std::vector<double> times;
  std::vector<Field> states;
};
StateDump read_state_dump(const std::string& path);

// Plain-text gnuplot script plotting each numeric column against the first.
void write_plotscript(const std::string& csv_path,
                      const std::vector<std::string>& columns);

}  // namespace parahyp
