#include "parahyp/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <sys/stat.h>
#include <sys/types.h>

namespace parahyp {

namespace {

std::string dirname_of(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  if (slash == std::string::npos) return ".";
  if (slash == 0) return "/";
  return path.substr(0, slash);
}

void write_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void write_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void write_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  write_u64(out, bits);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw Error("state dump: truncated header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = read_u32(in);
  v |= static_cast<std::uint64_t>(read_u32(in)) << 32;
  return v;
}

double read_f64(std::istream& in) {
  const std::uint64_t bits = read_u64(in);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

}  // namespace

void ensure_directory(const std::string& path) {
  if (path.empty() || path == "." || path == "/") return;
  struct stat st;
  if (stat(path.c_str(), &st) == 0) {
    if (S_ISDIR(st.st_mode)) return;
    throw Error("ensure_directory: '" + path + "' exists and is not a directory");
  }
  ensure_directory(dirname_of(path));
  if (mkdir(path.c_str(), 0755) != 0 && errno != EEXIST)
    throw Error("ensure_directory: cannot create '" + path + "': " +
                std::strerror(errno));
}

void atomic_write_text(const std::string& path, const std::string& content) {
  ensure_directory(dirname_of(path));
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot rename '" + tmp + "' to '" + path + "': " +
                std::strerror(errno));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Use the shortest representation that round-trips exactly.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    double back;
    std::sscanf(shorter, "%lf", &back);
    if (back == v || (v != v && back != back)) return shorter;
  }
  return buf;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  // from_chars rejects a leading '+'; accept it for hand-written configs.
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw InvalidArgument("parse_double: '" + text + "' is not a number");
  return v;
}

std::string csv_normalization_comment() {
  return "# Fourier convention: f(x) = sum_k G_k exp(i k.x); "
         "||f||_L2^2 = (2pi)^dim sum_k |G_k|^2";
}

void write_csv(const std::string& path,
               const std::vector<std::string>& comment_lines,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::string out;
  out += csv_normalization_comment();
  out += '\n';
  for (const std::string& line : comment_lines) {
    out += line.empty() || line[0] == '#' ? line : "# " + line;
    out += '\n';
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw InvalidArgument("write_csv: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  atomic_write_text(path, out);
}

std::vector<double> CsvData::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) {
      std::vector<double> out;
      out.reserve(rows.size());
      for (const auto& row : rows) out.push_back(row[i]);
      return out;
    }
  throw InvalidArgument("csv column '" + name + "' not found");
}

CsvData read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  CsvData data;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!have_header) {
      data.columns = cells;
      have_header = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& c : cells) row.push_back(parse_double(c));
    if (row.size() != data.columns.size())
      throw Error("csv '" + path + "': ragged row");
    data.rows.push_back(std::move(row));
  }
  if (!have_header) throw Error("csv '" + path + "': no header row");
  return data;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::vector<std::string> columns = {"t", "Hs", "L2", "A", "B", "intB"};
  const int m = traj.diag.empty()
                    ? 0
                    : static_cast<int>(traj.diag.front().comp_l2.size());
  for (int c = 0; c < m; ++c) columns.push_back("L2_c" + std::to_string(c));
  std::vector<std::vector<double>> rows;
  for (const TrajectorySample& smp : traj.diag) {
    std::vector<double> row = {smp.t, smp.hs, smp.l2, smp.A, smp.B, smp.intB};
    row.insert(row.end(), smp.comp_l2.begin(), smp.comp_l2.end());
    rows.push_back(std::move(row));
  }
  std::vector<std::string> comments = {
      "# trajectory diagnostics; s = " + format_double(traj.s)};
  if (traj.blown_up)
    comments.push_back("# blowup detected at t = " +
                       format_double(traj.blowup_time));
  write_csv(path, comments, columns, rows);
}

void write_envelope_csv(const FrequencyEnvelope& env,
                        const std::vector<double>& shell_norms,
                        const std::string& path) {
  if (shell_norms.size() != env.c.size())
    throw InvalidArgument("write_envelope_csv: shell norm count mismatch");
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < env.c.size(); ++k)
    rows.push_back({static_cast<double>(k), shell_norms[k], env.c[k]});
  write_csv(path,
            {"# frequency envelope; s = " + format_double(env.s) +
                 ", delta_dn = " + format_double(env.delta_dn) +
                 ", delta_up = " + format_double(env.delta_up)},
            {"k", "a_k", "c_k"}, rows);
}

void write_state_dump(const Trajectory& traj, const std::string& path) {
  if (traj.states.empty())
    throw InvalidArgument("write_state_dump: no states stored");
  const GridSpec& g = traj.grid;
  const int m = traj.states.front().components;
  std::string out;
  out.append("PARAHYP", 7);
  out.push_back('\0');
  write_u32(out, 1);
  write_u32(out, static_cast<std::uint32_t>(g.dim));
  write_u32(out, static_cast<std::uint32_t>(g.n));
  write_u32(out, static_cast<std::uint32_t>(m));
  write_u64(out, traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    write_f64(out, traj.state_times[i]);
    for (int c = 0; c < m; ++c)
      for (double v : traj.states[i].values[c]) write_f64(out, v);
  }
  atomic_write_text(path, out);
}

StateDump read_state_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, "PARAHYP\0", 8) != 0)
    throw Error("state dump '" + path + "': bad magic");
  const std::uint32_t version = read_u32(in);
  if (version != 1)
    throw Error("state dump '" + path + "': unsupported version " +
                std::to_string(version));
  const std::uint32_t dim = read_u32(in);
  const std::uint32_t n = read_u32(in);
  const std::uint32_t m = read_u32(in);
  const std::uint64_t count = read_u64(in);
  StateDump dump;
  dump.grid = GridSpec(static_cast<int>(dim), static_cast<int>(n));
  dump.components = static_cast<int>(m);
  for (std::uint64_t i = 0; i < count; ++i) {
    dump.times.push_back(read_f64(in));
    Field f(dump.grid, dump.components);
    for (std::uint32_t c = 0; c < m; ++c)
      for (double& v : f.values[c]) v = read_f64(in);
    if (!in) throw Error("state dump '" + path + "': truncated sample");
    dump.states.push_back(std::move(f));
  }
  return dump;
}

void write_plotscript(const std::string& csv_path,
                      const std::vector<std::string>& columns) {
  if (columns.size() < 2)
    throw InvalidArgument("write_plotscript: need at least two columns");
  std::string out;
  out += "set datafile separator ','\n";
  out += "set key outside\n";
  out += "set xlabel '" + columns[0] + "'\n";
  out += "plot ";
  for (std::size_t i = 1; i < columns.size(); ++i) {
    if (i > 1) out += ", \\\n     ";
    out += "'" + csv_path + "' using 1:" + std::to_string(i + 1) +
           " with lines title '" + columns[i] + "'";
  }
  out += '\n';
  atomic_write_text(csv_path + ".gp", out);
}

}  // namespace parahyp
