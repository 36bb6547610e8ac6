#include "evodom/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "evodom/errors.hpp"

namespace evodom {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // normalize -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void write_row(std::ostream& os, double t, double y, double v1, double v2,
               double rho) {
  os << format_double(t) << ',' << format_double(y) << ',' << format_double(v1)
     << ',' << format_double(v2) << ',' << format_double(rho * y) << ','
     << format_double(v1) << ',' << format_double(v2) << '\n';
}

constexpr const char* kTrajectoryHeader = "t,y,v1,v2,x,u1,u2";

void write_snapshot(std::ostream& os, double t, const Field& v1,
                    const Field& v2, double left1, double left2, double right1,
                    double right2, const EvolutionLaw& law, const Grid& grid) {
  const double rho = law.rho(t);
  write_row(os, t, grid.y_left(), left1, left2, rho);
  for (int i = 0; i < grid.n(); ++i)
    write_row(os, t, grid.nodes()[i], v1[i], v2[i], rho);
  write_row(os, t, grid.y_right(), right1, right2, rho);
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const EvolutionLaw& law, const Grid& grid,
                          std::optional<double> blowup_t) {
  os << kTrajectoryHeader << '\n';
  for (const StatePair& s : traj)
    write_snapshot(os, s.t, s.v1, s.v2, 0.0, 0.0, 0.0, 0.0, law, grid);
  if (blowup_t) {
    os << format_double(*blowup_t);
    for (int i = 0; i < 6; ++i) os << ",nan";
    os << '\n';
  }
}

void write_candidate_csv(std::ostream& os, const std::vector<double>& times,
                         const std::vector<Field>& v1,
                         const std::vector<Field>& v2,
                         const std::vector<double>& v1_boundary,
                         const std::vector<double>& v2_boundary,
                         const EvolutionLaw& law, const Grid& grid) {
  os << kTrajectoryHeader << '\n';
  for (std::size_t k = 0; k < times.size(); ++k)
    write_snapshot(os, times[k], v1[k], v2[k], v1_boundary[k], v2_boundary[k],
                   v1_boundary[k], v2_boundary[k], law, grid);
}

namespace {

double parse_field(const std::string& cell, const std::string& where) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  double value = 0.0;
  auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ConfigError(where + ": cannot parse number \"" + cell + "\"");
  return value;
}

}  // namespace

CandidateFile read_candidate_csv(const std::string& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open candidate file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader)
    throw ConfigError(path + ": first line must be the trajectory header \"" +
                      kTrajectoryHeader + "\"");

  const int rows_per_snapshot = grid.n() + 2;
  CandidateFile out;
  std::vector<std::array<double, 4>> block;  // t, y, v1, v2
  int line_no = 1;
  auto flush_block = [&]() {
    if (block.empty()) return;
    const std::string where = path + " (snapshot ending at line " +
                              std::to_string(line_no) + ")";
    if (static_cast<int>(block.size()) != rows_per_snapshot)
      throw ConfigError(where + ": expected " +
                        std::to_string(rows_per_snapshot) +
                        " rows per snapshot (including both boundary rows), "
                        "got " +
                        std::to_string(block.size()));
    const double t = block.front()[0];
    auto near = [](double a, double b) {
      return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    if (!near(block.front()[1], grid.y_left()) ||
        !near(block.back()[1], grid.y_right()))
      throw ConfigError(where + ": boundary rows must carry y_left/y_right");
    Field v1(grid.n()), v2(grid.n());
    for (int i = 0; i < grid.n(); ++i) {
      const auto& r = block[i + 1];
      if (!near(r[1], grid.nodes()[i]))
        throw ConfigError(where +
                          ": node coordinates do not match the grid (row y = " +
                          format_double(r[1]) + ")");
      v1[i] = r[2];
      v2[i] = r[3];
    }
    if (!out.times.empty() && !(t > out.times.back()))
      throw ConfigError(where + ": snapshot times must increase");
    out.times.push_back(t);
    out.v1.push_back(std::move(v1));
    out.v2.push_back(std::move(v2));
    out.v1_left.push_back(block.front()[2]);
    out.v2_left.push_back(block.front()[3]);
    out.v1_right.push_back(block.back()[2]);
    out.v2_right.push_back(block.back()[3]);
    block.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    std::array<double, 4> row{};
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col < 4) row[col] = parse_field(cell, where);
      ++col;
    }
    if (col != 7)
      throw ConfigError(where + ": expected 7 comma-separated fields, got " +
                        std::to_string(col));
    for (int c = 0; c < 4; ++c)
      if (!std::isfinite(row[c]))
        throw ConfigError(where +
                          ": non-finite value in a t/y/v column (truncated "
                          "or marker rows cannot be verified)");
    if (!block.empty() && row[0] != block.front()[0]) flush_block();
    block.push_back(row);
  }
  ++line_no;
  flush_block();
  if (out.times.size() < 2)
    throw ConfigError(path + ": need at least two snapshots");
  return out;
}

void write_convergence_csv(std::ostream& os,
                           const std::vector<IterationRecord>& trace) {
  os << "iter,gap_upper,gap_lower,periodicity_residual,violation\n";
  for (const IterationRecord& r : trace)
    os << r.iter << ',' << format_double(r.gap_upper) << ','
       << format_double(r.gap_lower) << ','
       << format_double(r.periodicity_residual) << ','
       << format_double(r.violation) << '\n';
}

}  // namespace evodom
