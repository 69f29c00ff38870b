// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "spinext/entanglement.hpp"
#include "spinext/models.hpp"

namespace spinext {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kConfigSchema = "spinext-config-v1";
inline constexpr const char* kRecordSchema = "spinext-record-v1";

/// Invalid or out-of-contract configuration (schema violations, unknown
/// keys, out-of-range indices, mismatched dimensions).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClosedShellSource {
  std::string unitary_path;
  int electrons = 0;
};
struct SingletProductSource {
  std::string unitary_path;
  int electrons = 0;
};
struct TightBindingSource {
  LatticeSpec lattice;
  int electrons = 0;
};
struct HubbardSource {
  LatticeSpec lattice;
  int electrons = 0;
  int two_sz = 0;
};
struct WavefunctionFileSource {
  std::string path;
};
struct HeisenbergSource {
  SpinSystemSpec spins;
};

using PipelineSource =
    std::variant<ClosedShellSource, SingletProductSource, TightBindingSource,
                 HubbardSource, WavefunctionFileSource, HeisenbergSource>;

struct MeasureFlags {
  bool gme = true;
  bool pairs = false;
  bool werner = false;
};

enum class OutputFormat { json, csv, text };

struct OutputSpec {
  std::string path;  // base path; .run.json/.csv/.txt extensions are added
  OutputFormat format = OutputFormat::json;
};

struct PipelineConfig {
  std::string origin;    // config file path, used in error messages
  std::string base_dir;  // directory for resolving relative data paths
  std::string label;
  PipelineSource source;
  std::optional<std::string> rotation_path;
  std::vector<int> extraction;  // 0-based orbital indices
  MeasureFlags measures;
  std::optional<OutputSpec> output;
  std::optional<std::uint64_t> seed;
  nlohmann::json echo;  // the parsed document, embedded in the run record
};

/// Parses and structurally validates a config document. Every unknown key
/// anywhere in the document is an error. User-facing indices (extraction
/// orbitals, lattice sites, spins) are 1-based in the document.
PipelineConfig parse_config(const nlohmann::json& doc,
                            const std::string& origin,
                            const std::string& base_dir);
PipelineConfig load_config(const std::string& path);

/// Fail-fast semantic checks: resolves the source dimension (reading
/// referenced files when needed) and validates extraction indices and the
/// optional rotation against it. No heavy computation.
void validate_pipeline(const PipelineConfig& config);

struct RunRecord {
  std::string label;
  int n = 0;
  double wall_seconds = 0.0;
  double source_norm = 1.0;
  double weight = 0.0;
  double purity = 0.0;
  EntanglementReport report;
  std::optional<double> energy;     // solver sources only
  std::optional<bool> degenerate;   // solver sources only
  std::optional<std::uint64_t> seed;
  nlohmann::json config_echo;

  nlohmann::json to_json() const;
};

/// Builds the source state, applies the optional rotation, extracts the
/// requested spins, runs the requested measures, and persists the record
/// when the config names an output.
RunRecord run_pipeline(const PipelineConfig& config);

/// Human-readable single-run report (full precision).
std::string render_record_text(const RunRecord& record);

/// One summary-table row. Ties for the minimal cut resolve to the first
/// bipartition in canonical order; the full tie list lives in the record.
struct TableRow {
  std::string label;
  int n = 0;
  std::optional<double> gme;
  std::string min_cut;
  std::optional<double> max_pair;
  std::string max_pair_label;
};

TableRow table_row(const RunRecord& record);
TableRow table_row_from_json(const nlohmann::json& doc,
                             const std::string& origin);

/// Aligned text / CSV, values rounded to 3 decimals, empty cells for
/// measures that were not requested. Rows keep input order.
std::string render_table_text(const std::vector<TableRow>& rows);
std::string render_table_csv(const std::vector<TableRow>& rows);

/// Canned demonstration configs ("ring4", "benzene6"); writes auxiliary
/// data files next to `output_base` when the demo needs them.
nlohmann::json demo_config(const std::string& name,
                           const std::string& output_base);

/// Process exit code for a failure: 2 config, 3 numerical precondition,
/// 4 I/O, 1 anything else.
int classify_exit(const std::exception& error);

}  // namespace spinext
