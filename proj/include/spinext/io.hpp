// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "spinext/entanglement.hpp"
#include "spinext/extraction.hpp"
#include "spinext/fock.hpp"

namespace spinext {

/// Failure while reading or writing an external data file. The message
/// carries path:line:column when the position is known.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& message);
  IoError(const std::string& path, const std::string& message);
  IoError(const std::string& path, int line, const std::string& message);
  IoError(const std::string& path, int line, int column,
          const std::string& message);
};

/// Overwrites `path` with `text`, throwing IoError on failure.
void write_text_file(const std::string& path, const std::string& text);

struct IngestedWavefunction {
  FockState state;  // amplitudes exactly as stored in the file
  double norm;      // Euclidean norm of the stored amplitudes
};

/// Wavefunction text format: header line `M n_particles`, then one line
/// per determinant: 2M-character 0/1 occupation string (character k is
/// canonical spin-orbital k), real part, imaginary part.
IngestedWavefunction parse_wavefunction(std::istream& in,
                                        const std::string& origin);
IngestedWavefunction ingest_wavefunction(const std::string& path);

/// Canonical text form: determinants sorted by ascending bitmask,
/// amplitudes at full double precision. Ingest of such a file followed by
/// export reproduces it byte for byte.
std::string format_wavefunction(const FockState& state);
void export_wavefunction(const std::string& path, const FockState& state);

/// Complex matrix CSV: one row per matrix row, 2C cells of interleaved
/// real and imaginary parts.
Eigen::MatrixXcd parse_complex_matrix_csv(std::istream& in,
                                          const std::string& origin);
Eigen::MatrixXcd read_complex_matrix_csv(const std::string& path);
std::string format_complex_matrix_csv(const Eigen::MatrixXcd& m);
void write_complex_matrix_csv(const std::string& path,
                              const Eigen::MatrixXcd& m);

/// Reads a square complex matrix and checks unitarity.
OrbitalRotation read_unitary_csv(const std::string& path);

std::string format_real_matrix_csv(const Eigen::MatrixXd& m);
void write_real_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

/// Row-major 2^n x 2^n complex entries, interleaved real/imaginary; the
/// leading qubit is the first extraction orbital.
void write_spin_density_csv(const std::string& path,
                            const SpinDensityMatrix& rho);

/// Flat report rows, spins 1-based:
///   bipartition,<mask of side A>,<S_L>,<sqrt(2 S_L)>
///   pair,<i>,<j>,<C>,<S_L>,<p>
/// Rows appear only for measures present in the report; a pair's Werner
/// cell is left empty when no decomposition was requested.
std::string format_report_csv(const EntanglementReport& report);
void write_report_csv(const std::string& path,
                      const EntanglementReport& report);

}  // namespace spinext
