// Copyright 2026 The Spinext Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "spinext/io.hpp"
#include "spinext/models.hpp"
#include "spinext/pipeline.hpp"

namespace {

namespace fs = std::filesystem;
using spinext::ConfigError;
using spinext::PipelineConfig;
using spinext::RunRecord;
using spinext::TableRow;

int thread_count(std::size_t jobs) {
  int threads = int(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPINEXT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw ConfigError(std::string("SPINEXT_THREADS: expected a positive "
                                    "integer, got \"") +
                        env + "\"");
    threads = int(v);
  }
  if (threads < 1) threads = 1;
  if (std::size_t(threads) > jobs) threads = int(jobs);
  return threads;
}

int cmd_run(const std::string& config_path,
            const std::optional<std::uint64_t>& seed) {
  PipelineConfig config = spinext::load_config(config_path);
  if (seed.has_value()) config.seed = *seed;
  const RunRecord record = spinext::run_pipeline(config);
  std::cout << spinext::render_record_text(record);
  return 0;
}

int cmd_validate(const std::string& config_path) {
  spinext::validate_pipeline(spinext::load_config(config_path));
  std::cout << "ok: " << config_path << "\n";
  return 0;
}

int cmd_batch(const std::string& dir) {
  std::vector<fs::path> paths;
  {
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw spinext::IoError(dir, "cannot open directory");
    for (const auto& entry : it)
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw ConfigError(dir + ": no *.json configs found");

  struct Item {
    bool ok = false;
    std::string message;
    int code = 0;
    TableRow row;
  };
  std::vector<Item> items(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= paths.size()) return;
      try {
        const RunRecord record =
            spinext::run_pipeline(spinext::load_config(paths[k].string()));
        items[k].ok = true;
        items[k].row = spinext::table_row(record);
      } catch (const std::exception& e) {
        items[k].message = e.what();
        items[k].code = spinext::classify_exit(e);
      }
    }
  };
  const int threads = thread_count(paths.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  int exit_code = 0;
  std::vector<TableRow> rows;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    if (items[k].ok) {
      std::cout << "ok " << paths[k].string() << "\n";
      rows.push_back(items[k].row);
    } else {
      std::cout << "error " << paths[k].string() << ": " << items[k].message
                << "\n";
      if (exit_code == 0) exit_code = items[k].code;
    }
  }
  if (!rows.empty()) std::cout << "\n" << spinext::render_table_text(rows);
  return exit_code;
}

int cmd_table(const std::vector<std::string>& record_paths,
              const std::string& format) {
  std::vector<TableRow> rows;
  rows.reserve(record_paths.size());
  for (const std::string& path : record_paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw spinext::IoError(path, "cannot open");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path + ": " + e.what());
    }
    rows.push_back(spinext::table_row_from_json(doc, path));
  }
  if (format == "csv")
    std::cout << spinext::render_table_csv(rows);
  else
    std::cout << spinext::render_table_text(rows);
  return 0;
}

int cmd_demo(const std::string& name, const std::string& out) {
  const fs::path base = out.empty() ? fs::path("demo") / name : fs::path(out);
  const nlohmann::json config_doc = spinext::demo_config(name, base.string());
  const std::string config_path = base.string() + ".json";
  spinext::write_text_file(config_path, config_doc.dump(2) + "\n");
  const RunRecord record =
      spinext::run_pipeline(spinext::load_config(config_path));
  std::cout << spinext::render_record_text(record);
  std::cout << "config: " << config_path << "\n";
  std::cout << "record: " << base.string() << ".run.json\n";
  return 0;
}

int cmd_ham(const std::string& config_path, const std::string& out_path) {
  const PipelineConfig config = spinext::load_config(config_path);
  const Eigen::MatrixXd matrix = std::visit(
      [&](const auto& source) -> Eigen::MatrixXd {
        using T = std::decay_t<decltype(source)>;
        if constexpr (std::is_same_v<T, spinext::TightBindingSource>) {
          return spinext::hopping_matrix(source.lattice);
        } else if constexpr (std::is_same_v<T, spinext::HubbardSource>) {
          return spinext::hubbard_matrix(source.lattice, source.electrons,
                                         source.two_sz);
        } else if constexpr (std::is_same_v<T, spinext::HeisenbergSource>) {
          return spinext::heisenberg_matrix(source.spins);
        } else {
          throw ConfigError(config.origin +
                            ": source: this source type has no Hamiltonian "
                            "matrix (use tight_binding, hubbard, or "
                            "heisenberg)");
        }
      },
      config.source);
  spinext::write_real_matrix_csv(out_path, matrix);
  std::cout << "wrote " << out_path << " (" << matrix.rows() << "x"
            << matrix.cols() << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin entanglement workbench"};
  app.set_version_flag("--version", std::string(spinext::kVersion));
  app.require_subcommand(1);

  std::string run_config;
  std::uint64_t seed_value = 0;
  CLI::App* run = app.add_subcommand("run", "execute a pipeline config");
  run->add_option("config", run_config, "pipeline config (JSON)")->required();
  CLI::Option* seed_opt =
      run->add_option("--seed", seed_value, "RNG seed recorded with the run");

  std::string validate_config;
  CLI::App* validate =
      app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", validate_config, "pipeline config (JSON)")
      ->required();

  std::string batch_dir;
  CLI::App* batch =
      app.add_subcommand("batch", "run every *.json config in a directory");
  batch->add_option("config-dir", batch_dir, "directory of configs")
      ->required();

  std::vector<std::string> table_records;
  std::string table_format = "text";
  CLI::App* table =
      app.add_subcommand("table", "summarize run records as a table");
  table->add_option("records", table_records, "run record files (JSON)")
      ->required();
  table->add_option("--format", table_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  std::string demo_name;
  std::string demo_out;
  CLI::App* demo = app.add_subcommand("demo", "run a built-in example");
  demo->add_option("name", demo_name, "ring4 or benzene6")
      ->required()
      ->check(CLI::IsMember({"ring4", "benzene6"}));
  demo->add_option("--out", demo_out, "output base path (default demo/<name>)");

  std::string ham_config;
  std::string ham_out;
  CLI::App* ham =
      app.add_subcommand("ham", "export a model Hamiltonian matrix as CSV");
  ham->add_option("config", ham_config, "pipeline config (JSON)")->required();
  ham->add_option("out", ham_out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      std::optional<std::uint64_t> seed;
      if (seed_opt->count() > 0) seed = seed_value;
      return cmd_run(run_config, seed);
    }
    if (*validate) return cmd_validate(validate_config);
    if (*batch) return cmd_batch(batch_dir);
    if (*table) return cmd_table(table_records, table_format);
    if (*demo) return cmd_demo(demo_name, demo_out);
    if (*ham) return cmd_ham(ham_config, ham_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return spinext::classify_exit(e);
  }
  return 0;
}
