// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinext/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spinext/extraction.hpp"
#include "spinext/io.hpp"

namespace spinext {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& where,
                       const std::string& message) {
  if (where.empty()) throw ConfigError(origin + ": " + message);
  throw ConfigError(origin + ": " + where + ": " + message);
}

std::string child(const std::string& where, const char* key) {
  return where.empty() ? key : where + "." + key;
}

void check_keys(const json& obj, const std::vector<const char*>& allowed,
                const std::string& origin, const std::string& where) {
  for (const auto& item : obj.items()) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&](const char* a) { return item.key() == a; });
    if (!known) fail(origin, where, "unknown key \"" + item.key() + "\"");
  }
}

const json& require(const json& obj, const char* key,
                    const std::string& origin, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end())
    fail(origin, where, std::string("missing key \"") + key + "\"");
  return *it;
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string get_string(const json& v, const std::string& origin,
                       const std::string& where) {
  if (!v.is_string()) fail(origin, where, "expected a string");
  return v.get<std::string>();
}

long get_integer(const json& v, const std::string& origin,
                 const std::string& where) {
  if (!v.is_number_integer()) fail(origin, where, "expected an integer");
  return v.get<long>();
}

double get_number(const json& v, const std::string& origin,
                  const std::string& where) {
  if (!v.is_number()) fail(origin, where, "expected a number");
  return v.get<double>();
}

bool get_bool(const json& v, const std::string& origin,
              const std::string& where) {
  if (!v.is_boolean()) fail(origin, where, "expected a boolean");
  return v.get<bool>();
}

const json& get_object(const json& v, const std::string& origin,
                       const std::string& where) {
  if (!v.is_object()) fail(origin, where, "expected an object");
  return v;
}

const json& get_array(const json& v, const std::string& origin,
                      const std::string& where) {
  if (!v.is_array()) fail(origin, where, "expected an array");
  return v;
}

// Triples like [i, j, value] with 1-based site indices.
template <class Out, class Push>
void parse_triples(const json& arr, const std::string& origin,
                   const std::string& where, std::vector<Out>& out,
                   Push&& push) {
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const json& t = get_array(arr[k], origin, at);
    if (t.size() != 3) fail(origin, at, "expected [i, j, value]");
    const long i = get_integer(t[0], origin, at);
    const long j = get_integer(t[1], origin, at);
    const double v = get_number(t[2], origin, at);
    if (i < 1 || j < 1) fail(origin, at, "site indices are 1-based");
    out.push_back(push(int(i - 1), int(j - 1), v));
  }
}

LatticeSpec parse_lattice(const json& j, const std::string& origin,
                          const std::string& where) {
  get_object(j, origin, where);
  const std::string topology =
      get_string(require(j, "topology", origin, where), origin,
                 child(where, "topology"));
  LatticeSpec spec;
  if (topology == "chain") {
    check_keys(j,
               {"topology", "sites", "t", "t_second", "onsite_repulsion",
                "density_density"},
               origin, where);
    const long sites = get_integer(require(j, "sites", origin, where), origin,
                                   child(where, "sites"));
    const double t = get_number(require(j, "t", origin, where), origin,
                                child(where, "t"));
    if (const json* t2 = find(j, "t_second"))
      spec = LatticeSpec::chain(int(sites), t,
                                get_number(*t2, origin, child(where, "t_second")));
    else
      spec = LatticeSpec::chain(int(sites), t);
  } else if (topology == "ring") {
    check_keys(j, {"topology", "sites", "t", "onsite_repulsion",
                   "density_density"},
               origin, where);
    const long sites = get_integer(require(j, "sites", origin, where), origin,
                                   child(where, "sites"));
    const double t = get_number(require(j, "t", origin, where), origin,
                                child(where, "t"));
    spec = LatticeSpec::ring(int(sites), t);
  } else if (topology == "custom") {
    check_keys(j, {"topology", "sites", "edges", "onsite_repulsion",
                   "density_density"},
               origin, where);
    spec.sites = int(get_integer(require(j, "sites", origin, where), origin,
                                 child(where, "sites")));
    spec.topology = LatticeTopology::custom;
    parse_triples(get_array(require(j, "edges", origin, where), origin,
                            child(where, "edges")),
                  origin, child(where, "edges"), spec.edges,
                  [](int a, int b, double t) { return LatticeEdge{a, b, t}; });
  } else {
    fail(origin, child(where, "topology"),
         "expected \"chain\", \"ring\", or \"custom\"");
  }
  if (const json* u = find(j, "onsite_repulsion"))
    spec.onsite_repulsion =
        get_number(*u, origin, child(where, "onsite_repulsion"));
  if (const json* dd = find(j, "density_density"))
    parse_triples(get_array(*dd, origin, child(where, "density_density")),
                  origin, child(where, "density_density"),
                  spec.density_density, [](int a, int b, double v) {
                    return DensityCoupling{a, b, v};
                  });
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    fail(origin, where, e.what());
  }
  return spec;
}

SpinSystemSpec parse_spins(const json& j, const std::string& origin,
                           const std::string& where) {
  get_object(j, origin, where);
  const std::string topology =
      get_string(require(j, "topology", origin, where), origin,
                 child(where, "topology"));
  SpinSystemSpec spec;
  if (topology == "ring") {
    check_keys(j, {"topology", "count", "coupling"}, origin, where);
    const long count = get_integer(require(j, "count", origin, where), origin,
                                   child(where, "count"));
    const double coupling =
        get_number(require(j, "coupling", origin, where), origin,
                   child(where, "coupling"));
    try {
      spec = SpinSystemSpec::ring(int(count), coupling);
    } catch (const std::invalid_argument& e) {
      fail(origin, where, e.what());
    }
  } else if (topology == "custom") {
    check_keys(j, {"topology", "count", "couplings"}, origin, where);
    spec.count = int(get_integer(require(j, "count", origin, where), origin,
                                 child(where, "count")));
    parse_triples(get_array(require(j, "couplings", origin, where), origin,
                            child(where, "couplings")),
                  origin, child(where, "couplings"), spec.couplings,
                  [](int a, int b, double v) {
                    return SpinCoupling{a, b, v};
                  });
  } else {
    fail(origin, child(where, "topology"), "expected \"ring\" or \"custom\"");
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    fail(origin, where, e.what());
  }
  return spec;
}

PipelineSource parse_source(const json& j, const std::string& origin) {
  const std::string where = "source";
  get_object(j, origin, where);
  const std::string type = get_string(require(j, "type", origin, where),
                                      origin, child(where, "type"));
  const auto electrons = [&]() {
    return int(get_integer(require(j, "electrons", origin, where), origin,
                           child(where, "electrons")));
  };
  if (type == "closed_shell" || type == "singlet_product") {
    check_keys(j, {"type", "unitary", "electrons"}, origin, where);
    const std::string path =
        get_string(require(j, "unitary", origin, where), origin,
                   child(where, "unitary"));
    if (type == "closed_shell")
      return ClosedShellSource{path, electrons()};
    return SingletProductSource{path, electrons()};
  }
  if (type == "tight_binding") {
    check_keys(j, {"type", "lattice", "electrons"}, origin, where);
    return TightBindingSource{
        parse_lattice(require(j, "lattice", origin, where), origin,
                      child(where, "lattice")),
        electrons()};
  }
  if (type == "hubbard") {
    check_keys(j, {"type", "lattice", "electrons", "two_sz"}, origin, where);
    HubbardSource source{
        parse_lattice(require(j, "lattice", origin, where), origin,
                      child(where, "lattice")),
        electrons(), 0};
    if (const json* sz = find(j, "two_sz"))
      source.two_sz = int(get_integer(*sz, origin, child(where, "two_sz")));
    return source;
  }
  if (type == "wavefunction_file") {
    check_keys(j, {"type", "path"}, origin, where);
    return WavefunctionFileSource{get_string(
        require(j, "path", origin, where), origin, child(where, "path"))};
  }
  if (type == "heisenberg") {
    check_keys(j, {"type", "spins"}, origin, where);
    return HeisenbergSource{parse_spins(require(j, "spins", origin, where),
                                        origin, child(where, "spins"))};
  }
  fail(origin, child(where, "type"),
       "unknown source type \"" + type +
           "\" (expected closed_shell, singlet_product, tight_binding, "
           "hubbard, wavefunction_file, or heisenberg)");
}

MeasureFlags parse_measures(const json& j, const std::string& origin) {
  const std::string where = "measures";
  get_object(j, origin, where);
  check_keys(j, {"gme", "pairs", "werner"}, origin, where);
  MeasureFlags flags;
  if (const json* g = find(j, "gme"))
    flags.gme = get_bool(*g, origin, child(where, "gme"));
  if (const json* p = find(j, "pairs"))
    flags.pairs = get_bool(*p, origin, child(where, "pairs"));
  if (const json* w = find(j, "werner"))
    flags.werner = get_bool(*w, origin, child(where, "werner"));
  return flags;
}

OutputSpec parse_output(const json& j, const std::string& origin) {
  const std::string where = "output";
  get_object(j, origin, where);
  check_keys(j, {"path", "format"}, origin, where);
  OutputSpec out;
  out.path = get_string(require(j, "path", origin, where), origin,
                        child(where, "path"));
  if (out.path.empty()) fail(origin, child(where, "path"), "path is empty");
  if (const json* f = find(j, "format")) {
    const std::string format = get_string(*f, origin, child(where, "format"));
    if (format == "json")
      out.format = OutputFormat::json;
    else if (format == "csv")
      out.format = OutputFormat::csv;
    else if (format == "text")
      out.format = OutputFormat::text;
    else
      fail(origin, child(where, "format"),
           "expected \"json\", \"csv\", or \"text\"");
  }
  return out;
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

// Source dimensions plus whatever the probe had to read to learn them.
struct SourceInfo {
  int orbitals = 0;
  int particles = 0;
  bool spin_source = false;
  std::optional<Eigen::MatrixXcd> unitary;
  std::optional<IngestedWavefunction> ingested;
};

SourceInfo probe_source(const PipelineConfig& config) {
  SourceInfo info;
  std::visit(
      [&](const auto& source) {
        using T = std::decay_t<decltype(source)>;
        if constexpr (std::is_same_v<T, ClosedShellSource> ||
                      std::is_same_v<T, SingletProductSource>) {
          Eigen::MatrixXcd u =
              read_unitary_csv(resolve(config.base_dir, source.unitary_path))
                  .matrix();
          info.orbitals = int(u.rows());
          info.particles = source.electrons;
          info.unitary = std::move(u);
        } else if constexpr (std::is_same_v<T, TightBindingSource> ||
                             std::is_same_v<T, HubbardSource>) {
          info.orbitals = source.lattice.sites;
          info.particles = source.electrons;
        } else if constexpr (std::is_same_v<T, WavefunctionFileSource>) {
          info.ingested =
              ingest_wavefunction(resolve(config.base_dir, source.path));
          info.orbitals = info.ingested->state.num_orbitals();
          info.particles = info.ingested->state.particles();
        } else {
          static_assert(std::is_same_v<T, HeisenbergSource>);
          info.orbitals = source.spins.count;
          info.particles = source.spins.count;
          info.spin_source = true;
        }
      },
      config.source);
  return info;
}

void check_extraction(const PipelineConfig& config, const SourceInfo& info) {
  if (info.spin_source) {
    bool identity = int(config.extraction.size()) == info.orbitals;
    for (std::size_t i = 0; identity && i < config.extraction.size(); ++i)
      identity = config.extraction[i] == int(i);
    if (!identity)
      fail(config.origin, "extraction",
           "spin sources expose every spin; list 1.." +
               std::to_string(info.orbitals) + " in order");
    return;
  }
  try {
    ExtractionSpec{config.extraction}.validate(info.orbitals, info.particles);
  } catch (const std::invalid_argument& e) {
    fail(config.origin, "extraction", e.what());
  }
}

std::optional<OrbitalRotation> load_rotation(const PipelineConfig& config,
                                             const SourceInfo& info) {
  if (!config.rotation_path.has_value()) return std::nullopt;
  if (info.spin_source)
    fail(config.origin, "rotation", "requires a fermionic source");
  OrbitalRotation u =
      read_unitary_csv(resolve(config.base_dir, *config.rotation_path));
  if (u.dim() != info.orbitals)
    fail(config.origin, "rotation",
         "matrix is " + std::to_string(u.dim()) + "x" +
             std::to_string(u.dim()) + " but the source has " +
             std::to_string(info.orbitals) + " orbitals");
  return u;
}

std::string pair_label(int i, int j) {
  return "{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}";
}

// Pair concurrences equal up to numerical noise count as tied.
constexpr double kPairTieTol = 1e-9;

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

json report_to_json(const EntanglementReport& report) {
  json r = json::object();
  r["n"] = report.n;
  if (report.gme.has_value()) {
    const auto cuts = enumerate_bipartitions(report.n);
    json g = json::object();
    g["concurrence"] = report.gme->concurrence;
    json arg = json::array();
    for (const Bipartition& b : report.gme->argmin) arg.push_back(b.label());
    g["argmin"] = arg;
    json rows = json::array();
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const double s = report.gme->entropies[i];
      rows.push_back({{"mask", cuts[i].mask_a()},
                      {"label", cuts[i].label()},
                      {"linear_entropy", s},
                      {"concurrence", std::sqrt(2.0 * s)}});
    }
    g["bipartitions"] = rows;
    r["gme"] = g;
  }
  std::set<std::pair<int, int>> keys;
  for (const auto& [k, v] : report.pair_concurrences) keys.insert(k);
  for (const auto& [k, v] : report.werner_p) keys.insert(k);
  if (!keys.empty()) {
    json pairs = json::array();
    for (const auto& key : keys) {
      json p = json::object();
      p["i"] = key.first + 1;
      p["j"] = key.second + 1;
      const auto c = report.pair_concurrences.find(key);
      if (c != report.pair_concurrences.end()) {
        p["concurrence"] = c->second;
        p["linear_entropy"] = report.pair_linear_entropies.at(key);
      }
      const auto w = report.werner_p.find(key);
      if (w != report.werner_p.end()) {
        p["werner_p"] = w->second;
        p["werner_residual"] = report.werner_residuals.at(key);
      }
      pairs.push_back(p);
    }
    r["pairs"] = pairs;
  }
  return r;
}

void persist_record(const RunRecord& record, const OutputSpec& output,
                    const std::string& base_dir) {
  const std::string base = resolve(base_dir, output.path);
  const std::filesystem::path parent =
      std::filesystem::path(base).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) throw IoError(parent.string(), "cannot create directory");
  }
  write_text_file(base + ".run.json", record.to_json().dump(2) + "\n");
  if (output.format == OutputFormat::csv)
    write_report_csv(base + ".csv", record.report);
  else if (output.format == OutputFormat::text)
    write_text_file(base + ".txt", render_record_text(record));
}

}  // namespace

PipelineConfig parse_config(const json& doc, const std::string& origin,
                            const std::string& base_dir) {
  if (!doc.is_object()) throw ConfigError(origin + ": expected a JSON object");
  check_keys(doc,
             {"schema", "label", "source", "rotation", "extraction",
              "measures", "output", "seed"},
             origin, "");
  const std::string schema =
      get_string(require(doc, "schema", origin, ""), origin, "schema");
  if (schema != kConfigSchema)
    fail(origin, "schema",
         "unsupported value \"" + schema + "\", expected \"" +
             kConfigSchema + "\"");

  PipelineConfig config;
  config.origin = origin;
  config.base_dir = base_dir;
  config.echo = doc;
  if (const json* label = find(doc, "label")) {
    config.label = get_string(*label, origin, "label");
  } else {
    const std::string stem = std::filesystem::path(origin).stem().string();
    config.label = stem.empty() ? "run" : stem;
  }
  config.source = parse_source(require(doc, "source", origin, ""), origin);
  if (const json* rot = find(doc, "rotation"))
    config.rotation_path = get_string(*rot, origin, "rotation");

  const json& extraction =
      get_array(require(doc, "extraction", origin, ""), origin, "extraction");
  if (extraction.empty()) fail(origin, "extraction", "list is empty");
  std::set<long> seen;
  for (std::size_t k = 0; k < extraction.size(); ++k) {
    const std::string at = "extraction[" + std::to_string(k) + "]";
    const long v = get_integer(extraction[k], origin, at);
    if (v < 1) fail(origin, at, "orbital indices are 1-based");
    if (!seen.insert(v).second)
      fail(origin, at, "duplicate orbital " + std::to_string(v));
    config.extraction.push_back(int(v - 1));
  }

  if (const json* measures = find(doc, "measures"))
    config.measures = parse_measures(*measures, origin);
  if (const json* output = find(doc, "output"))
    config.output = parse_output(*output, origin);
  if (const json* seed = find(doc, "seed")) {
    const long v = get_integer(*seed, origin, "seed");
    if (v < 0) fail(origin, "seed", "must be non-negative");
    config.seed = std::uint64_t(v);
  }
  return config;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw IoError(path, "cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(doc, path,
                      std::filesystem::path(path).parent_path().string());
}

void validate_pipeline(const PipelineConfig& config) {
  const SourceInfo info = probe_source(config);
  check_extraction(config, info);
  load_rotation(config, info);
}

RunRecord run_pipeline(const PipelineConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SourceInfo info = probe_source(config);
  check_extraction(config, info);
  const std::optional<OrbitalRotation> rotation = load_rotation(config, info);

  RunRecord record;
  record.label = config.label;
  record.seed = config.seed;
  record.config_echo = config.echo;

  if (info.spin_source) {
    const auto& spins = std::get<HeisenbergSource>(config.source).spins;
    const SpinGroundState ground = heisenberg_ground_state(spins);
    record.energy = ground.energy;
    record.degenerate = ground.degenerate;
    record.n = spins.count;
    record.source_norm = ground.state.norm();
    record.weight = 1.0;
    record.purity = 1.0;
    const Eigen::VectorXcd psi = ground.state / record.source_norm;
    record.report = analyze_spin_state(psi, config.measures.gme,
                                       config.measures.pairs,
                                       config.measures.werner);
  } else {
    FockState state = std::visit(
        [&](const auto& source) -> FockState {
          using T = std::decay_t<decltype(source)>;
          if constexpr (std::is_same_v<T, ClosedShellSource>) {
            return build_closed_shell(OrbitalRotation(std::move(*info.unitary)),
                                      source.electrons);
          } else if constexpr (std::is_same_v<T, SingletProductSource>) {
            return build_singlet_product(
                OrbitalRotation(std::move(*info.unitary)), source.electrons);
          } else if constexpr (std::is_same_v<T, TightBindingSource>) {
            return tight_binding_determinant(source.lattice, source.electrons)
                .state;
          } else if constexpr (std::is_same_v<T, HubbardSource>) {
            HubbardOptions options;
            options.two_sz = source.two_sz;
            ElectronicGroundState ground =
                hubbard_ground_state(source.lattice, source.electrons, options);
            record.energy = ground.energy;
            record.degenerate = ground.degenerate;
            return std::move(ground.state);
          } else if constexpr (std::is_same_v<T, WavefunctionFileSource>) {
            return std::move(info.ingested->state);
          } else {
            // Spin sources take the branch above; keep the visitor total.
            throw std::logic_error("run_pipeline: unexpected source");
          }
        },
        config.source);
    if (rotation.has_value()) state = rotate_orbitals(state, *rotation);
    record.source_norm = state.norm();
    state = state.normalized();
    const SpinDensityMatrix sdm =
        nbrdm(state, ExtractionSpec{config.extraction});
    record.n = sdm.n;
    record.weight = sdm.weight;
    record.purity = purity(sdm);
    if (config.measures.gme) {
      const Eigen::VectorXcd psi = extract_pure(sdm);
      record.report = analyze_spin_state(psi, true, config.measures.pairs,
                                         config.measures.werner);
    } else if (config.measures.pairs || config.measures.werner) {
      record.report = analyze_spin_density(normalize_spin_state(sdm),
                                           config.measures.pairs,
                                           config.measures.werner);
    } else {
      record.report.n = sdm.n;
    }
  }

  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (config.output.has_value())
    persist_record(record, *config.output, config.base_dir);
  return record;
}

nlohmann::json RunRecord::to_json() const {
  json doc;
  doc["schema"] = kRecordSchema;
  doc["version"] = kVersion;
  doc["label"] = label;
  doc["config"] = config_echo;
  doc["wall_seconds"] = wall_seconds;
  if (seed.has_value()) doc["seed"] = *seed;
  doc["n"] = n;
  doc["source_norm"] = source_norm;
  doc["weight"] = weight;
  doc["purity"] = purity;
  if (energy.has_value()) doc["energy"] = *energy;
  if (degenerate.has_value()) doc["degenerate"] = *degenerate;
  doc["report"] = report_to_json(report);
  return doc;
}

std::string render_record_text(const RunRecord& record) {
  std::string out;
  out += "label: " + record.label + "\n";
  out += "spins: " + std::to_string(record.n) + "\n";
  out += "source_norm: " + fmt_full(record.source_norm) + "\n";
  out += "weight: " + fmt_full(record.weight) + "\n";
  out += "purity: " + fmt_full(record.purity) + "\n";
  if (record.energy.has_value())
    out += "energy: " + fmt_full(*record.energy) + "\n";
  if (record.degenerate.has_value())
    out += std::string("degenerate: ") + (*record.degenerate ? "yes" : "no") +
           "\n";
  const EntanglementReport& report = record.report;
  if (report.gme.has_value()) {
    out += "C_GME: " + fmt_full(report.gme->concurrence) + "\n";
    out += "minimal cuts:";
    for (const Bipartition& b : report.gme->argmin) out += " " + b.label();
    out += "\n";
    out += "bipartitions (label S_L sqrt(2 S_L)):\n";
    const auto cuts = enumerate_bipartitions(report.n);
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const double s = report.gme->entropies[i];
      out += "  " + cuts[i].label() + " " + fmt_full(s) + " " +
             fmt_full(std::sqrt(2.0 * s)) + "\n";
    }
  }
  if (!report.pair_concurrences.empty() || !report.werner_p.empty()) {
    out += "pairs (pair C S_L p residual):\n";
    std::set<std::pair<int, int>> keys;
    for (const auto& [k, v] : report.pair_concurrences) keys.insert(k);
    for (const auto& [k, v] : report.werner_p) keys.insert(k);
    for (const auto& key : keys) {
      out += "  " + pair_label(key.first, key.second);
      const auto c = report.pair_concurrences.find(key);
      if (c != report.pair_concurrences.end())
        out += " " + fmt_full(c->second) + " " +
               fmt_full(report.pair_linear_entropies.at(key));
      else
        out += " - -";
      const auto w = report.werner_p.find(key);
      if (w != report.werner_p.end())
        out += " " + fmt_full(w->second) + " " +
               fmt_full(report.werner_residuals.at(key));
      else
        out += " - -";
      out += "\n";
    }
  }
  return out;
}

TableRow table_row(const RunRecord& record) {
  TableRow row;
  row.label = record.label;
  row.n = record.n;
  if (record.report.gme.has_value()) {
    row.gme = record.report.gme->concurrence;
    if (!record.report.gme->argmin.empty())
      row.min_cut = record.report.gme->argmin.front().label();
  }
  // Ties within kPairTieTol keep the first pair in canonical order.
  for (const auto& [key, c] : record.report.pair_concurrences) {
    if (!row.max_pair.has_value() || c > *row.max_pair + kPairTieTol) {
      row.max_pair = c;
      row.max_pair_label = pair_label(key.first, key.second);
    }
  }
  return row;
}

TableRow table_row_from_json(const nlohmann::json& doc,
                             const std::string& origin) {
  if (!doc.is_object() || !doc.contains("schema") ||
      doc["schema"] != kRecordSchema)
    throw ConfigError(origin + ": not a " + std::string(kRecordSchema) +
                      " document");
  TableRow row;
  row.label = get_string(require(doc, "label", origin, ""), origin, "label");
  row.n = int(get_integer(require(doc, "n", origin, ""), origin, "n"));
  const json& report = require(doc, "report", origin, "");
  if (const json* gme = find(report, "gme")) {
    row.gme = get_number(require(*gme, "concurrence", origin, "report.gme"),
                         origin, "report.gme.concurrence");
    const json& argmin = get_array(
        require(*gme, "argmin", origin, "report.gme"), origin,
        "report.gme.argmin");
    if (!argmin.empty())
      row.min_cut = get_string(argmin[0], origin, "report.gme.argmin[0]");
  }
  if (const json* pairs = find(report, "pairs")) {
    for (const json& p : *pairs) {
      if (!p.contains("concurrence")) continue;
      const double c =
          get_number(p["concurrence"], origin, "report.pairs.concurrence");
      if (!row.max_pair.has_value() || c > *row.max_pair + kPairTieTol) {
        row.max_pair = c;
        row.max_pair_label =
            pair_label(int(get_integer(p["i"], origin, "report.pairs.i")) - 1,
                       int(get_integer(p["j"], origin, "report.pairs.j")) - 1);
      }
    }
  }
  return row;
}

namespace {

std::vector<std::vector<std::string>> table_cells(
    const std::vector<TableRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"label", "n", "C_GME", "min_cut", "C_pair", "pair"});
  for (const TableRow& row : rows) {
    cells.push_back({row.label, std::to_string(row.n),
                     row.gme.has_value() ? fmt3(*row.gme) : "",
                     row.min_cut,
                     row.max_pair.has_value() ? fmt3(*row.max_pair) : "",
                     row.max_pair_label});
  }
  return cells;
}

std::string csv_quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string quoted = "\"";
  for (char ch : cell) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

}  // namespace

std::string render_table_text(const std::vector<TableRow>& rows) {
  const auto cells = table_cells(rows);
  std::vector<std::size_t> widths(cells.front().size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());
  std::string out;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += "  ";
      out += row[c];
      if (c + 1 < row.size())
        out += std::string(widths[c] - row[c].size(), ' ');
    }
    out += "\n";
  }
  return out;
}

std::string render_table_csv(const std::vector<TableRow>& rows) {
  std::string out;
  for (const auto& row : table_cells(rows)) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ",";
      out += csv_quote(row[c]);
    }
    out += "\n";
  }
  return out;
}

nlohmann::json demo_config(const std::string& name,
                           const std::string& output_base) {
  // Stored paths are relative to the directory of output_base, so a config
  // written next to the artifacts re-runs from anywhere.
  const std::filesystem::path base(output_base);
  const std::string stem = base.filename().string();
  if (stem.empty()) throw ConfigError("demo: output base has no file name");
  if (!base.parent_path().empty()) {
    std::error_code ec;
    std::filesystem::create_directories(base.parent_path(), ec);
    if (ec) throw IoError(base.parent_path().string(), "cannot create directory");
  }
  if (name == "ring4") {
    write_complex_matrix_csv(output_base + "-unitary.csv",
                             fourier_rotation(4).matrix());
    return json{{"schema", kConfigSchema},
                {"label", "ring4-demo"},
                {"source", {{"type", "closed_shell"},
                            {"unitary", stem + "-unitary.csv"},
                            {"electrons", 4}}},
                {"extraction", {1, 2, 3, 4}},
                {"measures", {{"gme", true}, {"pairs", true}, {"werner", true}}},
                {"output", {{"path", stem}, {"format", "text"}}}};
  }
  if (name == "benzene6") {
    return json{{"schema", kConfigSchema},
                {"label", "benzene6-demo"},
                {"source",
                 {{"type", "tight_binding"},
                  {"lattice",
                   {{"topology", "ring"}, {"sites", 6}, {"t", -1.0}}},
                  {"electrons", 6}}},
                {"extraction", {1, 2, 3, 4, 5, 6}},
                {"measures", {{"gme", true}, {"pairs", true}, {"werner", true}}},
                {"output", {{"path", stem}, {"format", "text"}}}};
  }
  throw ConfigError("unknown demo \"" + name +
                    "\" (available: ring4, benzene6)");
}

int classify_exit(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error)) return 2;
  if (dynamic_cast<const IoError*>(&error)) return 4;
  if (dynamic_cast<const std::invalid_argument*>(&error)) return 2;
  if (dynamic_cast<const std::domain_error*>(&error)) return 3;
  if (dynamic_cast<const std::runtime_error*>(&error)) return 3;
  return 1;
}

}  // namespace spinext
