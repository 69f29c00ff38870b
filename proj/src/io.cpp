// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinext/io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace spinext {

namespace {

std::string at(const std::string& path, int line, int column) {
  std::string s = path;
  if (line > 0) s += ":" + std::to_string(line);
  if (column > 0) s += ":" + std::to_string(column);
  return s;
}

// Full double precision; parses back to the identical value.
std::string fmt_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

// Report precision, 15 significant digits.
std::string fmt_report(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void strip_carriage_return(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::size_t skip_spaces(const std::string& line, std::size_t pos) {
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  return pos;
}

long parse_integer(const std::string& line, std::size_t& pos,
                   const std::string& path, int lineno,
                   const char* what) {
  pos = skip_spaces(line, pos);
  const char* begin = line.c_str() + pos;
  char* end = nullptr;
  const long value = std::strtol(begin, &end, 10);
  if (end == begin)
    throw IoError(path, lineno, int(pos) + 1,
                  std::string("expected ") + what);
  pos += std::size_t(end - begin);
  return value;
}

double parse_real(const std::string& line, std::size_t& pos,
                  const std::string& path, int lineno, const char* what) {
  pos = skip_spaces(line, pos);
  const char* begin = line.c_str() + pos;
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin)
    throw IoError(path, lineno, int(pos) + 1,
                  std::string("expected ") + what);
  if (!std::isfinite(value))
    throw IoError(path, lineno, int(pos) + 1,
                  std::string(what) + " is not finite");
  pos += std::size_t(end - begin);
  return value;
}

void require_line_end(const std::string& line, std::size_t pos,
                      const std::string& path, int lineno) {
  pos = skip_spaces(line, pos);
  if (pos != line.size())
    throw IoError(path, lineno, int(pos) + 1, "trailing characters");
}

}  // namespace

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw IoError(path, "cannot open for writing");
  out << text;
  out.flush();
  if (!out.good()) throw IoError(path, "write failed");
}

IoError::IoError(const std::string& message) : std::runtime_error(message) {}

IoError::IoError(const std::string& path, const std::string& message)
    : std::runtime_error(path + ": " + message) {}

IoError::IoError(const std::string& path, int line, const std::string& message)
    : std::runtime_error(at(path, line, 0) + ": " + message) {}

IoError::IoError(const std::string& path, int line, int column,
                 const std::string& message)
    : std::runtime_error(at(path, line, column) + ": " + message) {}

IngestedWavefunction parse_wavefunction(std::istream& in,
                                        const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) throw IoError(origin, 1, "missing header");
  strip_carriage_return(line);
  std::size_t pos = 0;
  const long orbitals = parse_integer(line, pos, origin, 1, "orbital count");
  const long particles = parse_integer(line, pos, origin, 1, "particle count");
  require_line_end(line, pos, origin, 1);
  if (orbitals < 1 || orbitals > kMaxOrbitals)
    throw IoError(origin, 1, 1, "orbital count out of range");
  if (particles < 0 || particles > 2 * orbitals)
    throw IoError(origin, 1, 1, "particle count out of range");

  FockState::AmplitudeMap amps;
  double norm_sq = 0.0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    strip_carriage_return(line);
    pos = skip_spaces(line, 0);
    if (pos == line.size())
      throw IoError(origin, lineno, int(pos) + 1, "empty line");
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
    const std::string occ = line.substr(start, pos - start);
    if (occ.size() != std::size_t(2 * orbitals))
      throw IoError(origin, lineno, int(start) + 1,
                    "occupation string must have " +
                        std::to_string(2 * orbitals) + " characters");
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < occ.size(); ++k) {
      if (occ[k] == '1')
        bits |= std::uint64_t{1} << k;
      else if (occ[k] != '0')
        throw IoError(origin, lineno, int(start + k) + 1,
                      "occupation characters must be 0 or 1");
    }
    if (std::popcount(bits) != particles)
      throw IoError(origin, lineno, int(start) + 1,
                    "determinant has " + std::to_string(std::popcount(bits)) +
                        " particles, expected " + std::to_string(particles));
    if (amps.count(bits))
      throw IoError(origin, lineno, int(start) + 1, "duplicate determinant");
    const double re = parse_real(line, pos, origin, lineno, "real part");
    const double im = parse_real(line, pos, origin, lineno, "imaginary part");
    require_line_end(line, pos, origin, lineno);
    amps.emplace(bits, cplx(re, im));
    norm_sq += re * re + im * im;
  }
  FockState state(int(orbitals), int(particles), std::move(amps));
  return {std::move(state), std::sqrt(norm_sq)};
}

IngestedWavefunction ingest_wavefunction(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw IoError(path, "cannot open");
  return parse_wavefunction(in, path);
}

std::string format_wavefunction(const FockState& state) {
  std::string out = std::to_string(state.num_orbitals()) + " " +
                    std::to_string(state.particles()) + "\n";
  for (const auto& [det, amp] : state.sorted_terms()) {
    out += det.to_string(state.num_orbitals());
    out += " " + fmt_exact(amp.real()) + " " + fmt_exact(amp.imag()) + "\n";
  }
  return out;
}

void export_wavefunction(const std::string& path, const FockState& state) {
  write_text_file(path, format_wavefunction(state));
}

Eigen::MatrixXcd parse_complex_matrix_csv(std::istream& in,
                                          const std::string& origin) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_carriage_return(line);
    if (skip_spaces(line, 0) == line.size())
      throw IoError(origin, lineno, 1, "empty row");
    std::vector<double> cells;
    std::size_t pos = 0;
    while (true) {
      cells.push_back(parse_real(line, pos, origin, lineno, "matrix entry"));
      pos = skip_spaces(line, pos);
      if (pos == line.size()) break;
      if (line[pos] != ',')
        throw IoError(origin, lineno, int(pos) + 1, "expected a comma");
      ++pos;
    }
    if (cells.size() % 2 != 0)
      throw IoError(origin, lineno, 1,
                    "rows need an even cell count (real, imaginary pairs)");
    if (!rows.empty() && cells.size() != rows.front().size())
      throw IoError(origin, lineno, 1,
                    "row has " + std::to_string(cells.size()) +
                        " cells, expected " +
                        std::to_string(rows.front().size()));
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw IoError(origin, 1, "matrix file is empty");
  const Eigen::Index nr = Eigen::Index(rows.size());
  const Eigen::Index nc = Eigen::Index(rows.front().size() / 2);
  Eigen::MatrixXcd m(nr, nc);
  for (Eigen::Index r = 0; r < nr; ++r)
    for (Eigen::Index c = 0; c < nc; ++c)
      m(r, c) = cplx(rows[std::size_t(r)][std::size_t(2 * c)],
                     rows[std::size_t(r)][std::size_t(2 * c + 1)]);
  return m;
}

Eigen::MatrixXcd read_complex_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw IoError(path, "cannot open");
  return parse_complex_matrix_csv(in, path);
}

std::string format_complex_matrix_csv(const Eigen::MatrixXcd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ",";
      out += fmt_exact(m(r, c).real()) + "," + fmt_exact(m(r, c).imag());
    }
    out += "\n";
  }
  return out;
}

void write_complex_matrix_csv(const std::string& path,
                              const Eigen::MatrixXcd& m) {
  write_text_file(path, format_complex_matrix_csv(m));
}

OrbitalRotation read_unitary_csv(const std::string& path) {
  const Eigen::MatrixXcd m = read_complex_matrix_csv(path);
  if (m.rows() != m.cols())
    throw IoError(path, "unitary must be square, got " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  return OrbitalRotation(m);
}

std::string format_real_matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ",";
      out += fmt_exact(m(r, c));
    }
    out += "\n";
  }
  return out;
}

void write_real_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  write_text_file(path, format_real_matrix_csv(m));
}

void write_spin_density_csv(const std::string& path,
                            const SpinDensityMatrix& rho) {
  write_complex_matrix_csv(path, rho.matrix);
}

std::string format_report_csv(const EntanglementReport& report) {
  std::string out;
  if (report.gme.has_value()) {
    const auto cuts = enumerate_bipartitions(report.n);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const double s = report.gme->entropies[i];
      out += "bipartition," + std::to_string(cuts[i].mask_a()) + "," +
             fmt_report(s) + "," + fmt_report(std::sqrt(2.0 * s)) + "\n";
    }
  }
  for (const auto& [pair, c] : report.pair_concurrences) {
    out += "pair," + std::to_string(pair.first + 1) + "," +
           std::to_string(pair.second + 1) + "," + fmt_report(c) + "," +
           fmt_report(report.pair_linear_entropies.at(pair)) + ",";
    const auto p = report.werner_p.find(pair);
    if (p != report.werner_p.end()) out += fmt_report(p->second);
    out += "\n";
  }
  return out;
}

void write_report_csv(const std::string& path,
                      const EntanglementReport& report) {
  write_text_file(path, format_report_csv(report));
}

}  // namespace spinext
