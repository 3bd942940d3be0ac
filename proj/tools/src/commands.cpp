// Copyright 2026 The Hawk Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hawk/cli/commands.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hawk/decoder.hpp"
#include "hawk/model_io.hpp"
#include "hawk/oracle.hpp"
#include "hawk/pgm.hpp"
#include "hawk/trace.hpp"

namespace hawk::cli {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fixed3(double value) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << value;
  return s.str();
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  }
  return hex.str();
}

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
}

void OutputDir::write_untracked(const std::string& name,
                                std::string_view bytes) {
  const auto path = root_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void OutputDir::write(const std::string& name, std::string_view bytes) {
  write_untracked(name, bytes);
  digests_[name] = sha256_hex(bytes);
}

void OutputDir::write_manifest(std::string_view command,
                               const RunConfig& config) {
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  for (const auto& [name, digest] : digests_) outputs[name] = digest;
  const nlohmann::ordered_json manifest = {
      {"artifact", "hawk"},
      {"version", kArtifactVersion},
      {"command", command},
      {"seed", config.seed},
      {"config", nlohmann::ordered_json::parse(run_config_to_json(config))},
      {"outputs", outputs}};
  write_untracked("manifest.json", manifest.dump(2) + "\n");
}

std::shared_ptr<const TargetModel> build_model(const RunConfig& config) {
  std::shared_ptr<const TargetModel> model;
  if (config.model.kind == "grid_markov") {
    model = make_grid_markov_target(config.grid, config.model.seed,
                                    config.model.vertical_weight);
  } else if (config.model.kind == "independent") {
    model = make_independent_target(config.grid, config.model.seed);
  } else {
    model = parse_model(read_file(config.model.path));
    if (!(model->grid() == config.grid)) {
      throw ConfigError("model.path", "model grid differs from config grid");
    }
  }
  return model;
}

DraftHeadSet build_heads(const RunConfig& config,
                         const std::shared_ptr<const TargetModel>& model,
                         int horizontal_depth, int vertical_depth) {
  if (config.heads.kind == "exact") {
    if (!model->is_prefix_independent()) {
      throw ConfigError("heads.kind",
                        "exact heads need a prefix-independent model");
    }
    return make_exact_heads(model, horizontal_depth, vertical_depth);
  }
  if (config.heads.kind == "file") {
    const TabularHeadFile file = parse_heads(read_file(config.heads.path));
    if (!(file.grid == config.grid)) {
      throw ConfigError("heads.path", "head grid differs from config grid");
    }
    return assemble_head_set(file.heads, config.grid, horizontal_depth,
                             vertical_depth);
  }
  FitOptions options;
  options.sample_count = config.heads.sample_count;
  options.smoothing = config.heads.smoothing;
  options.seed = derive_seed(config.seed, "heads");
  return fit_tabular_draft_heads(*model, horizontal_depth, vertical_depth,
                                 options);
}

EngineConfig engine_for_mode(const EngineConfig& base, DecodeMode mode) {
  EngineConfig e = base;
  e.mode = mode;
  if (mode != DecodeMode::kHawk) e.vertical_depth = 0;
  e.validate();
  return e;
}

int cmd_decode(const RunConfig& config, std::ostream& log) {
  validate_run_config(config);
  EngineConfig engine = config.engine;
  engine.record_trace = true;
  engine.validate();
  const auto model = build_model(config);
  const DraftHeadSet heads =
      engine.mode == DecodeMode::kVanilla
          ? DraftHeadSet{}
          : build_heads(config, model, engine.horizontal_depth,
                        engine.effective_vertical_depth());
  const Decoder decoder(model, heads, engine, config.model.seed);
  const DecodeResult result =
      decoder.decode_image(derive_seed(config.seed, "decode"));

  OutputDir out(config.output_dir);
  out.write("image.pgm", encode_pgm(result.tokens, config.grid));
  out.write("trace.csv",
            render([&](std::ostream& s) { write_trace_csv(s, result.trace); }));
  out.write("verify_steps.csv", render([&](std::ostream& s) {
              write_verify_steps_csv(s, result.trace);
            }));
  const MetricsReport reports[] = {result.metrics};
  out.write("metrics.csv",
            render([&](std::ostream& s) { write_metrics_csv(s, reports); }));
  if (engine.mode == DecodeMode::kHawk) {
    out.write("kl_trace.csv", render([&](std::ostream& s) {
                write_kl_trace_csv(s, kl_trace(result, engine));
              }));
  }
  out.write_untracked("summary.json", metrics_summary_json(reports));
  out.write_manifest("decode", config);

  log << "mode=" << mode_name(engine.mode)
      << " accept_length=" << fixed3(result.metrics.accept_length())
      << " modeled_speedup=" << fixed3(result.metrics.modeled_speedup())
      << " rounds=" << result.metrics.rounds << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
  validate_run_config(config);
  const auto model = build_model(config);
  const JointTable exact =
      enumerate_joint(*model, config.engine.target_sampling);
  const EngineConfig hawk_engine =
      engine_for_mode(config.engine, DecodeMode::kHawk);
  const DraftHeadSet heads =
      build_heads(config, model, hawk_engine.horizontal_depth,
                  hawk_engine.vertical_depth);

  struct Row {
    DecodeMode mode;
    double tv;
    double accept_length;
  };
  std::vector<Row> rows;
  for (DecodeMode mode : {DecodeMode::kVanilla, DecodeMode::kMedusa,
                          DecodeMode::kHawk, DecodeMode::kLantern}) {
    const EngineConfig engine = engine_for_mode(config.engine, mode);
    const Decoder decoder(model, heads, engine, config.model.seed);
    JointAccumulator acc(config.grid);
    MetricsReport metrics;
    const std::string tag = "verify/" + std::string(mode_name(mode));
    for (long long i = 0; i < config.oracle.samples; ++i) {
      const DecodeResult r = decoder.decode_image(
          derive_seed(config.seed, tag, static_cast<std::uint64_t>(i)));
      acc.add(r.tokens);
      metrics.merge(r.metrics);
    }
    rows.push_back(Row{mode, joint_tv(acc.table(), exact),
                       metrics.accept_length()});
  }

  const double tolerance = config.oracle.tolerance_factor * rows.front().tv;
  bool failed = false;
  std::ostringstream csv;
  csv << "mode,samples,joint_tv,tolerance,accept_length,status,expected\n";
  log << "exactness check: " << config.oracle.samples
      << " decodes per mode, tolerance " << format_number(tolerance) << " ("
      << format_number(config.oracle.tolerance_factor)
      << " x vanilla noise floor)\n";
  for (const Row& row : rows) {
    const bool within = row.tv <= tolerance;
    const bool expect_pass = row.mode != DecodeMode::kLantern;
    std::string status;
    if (expect_pass) {
      status = within ? "PASS" : "FAIL";
      failed = failed || !within;
    } else {
      status = within ? "XPASS" : "XFAIL";
    }
    csv << mode_name(row.mode) << ',' << config.oracle.samples << ','
        << format_number(row.tv) << ',' << format_number(tolerance) << ','
        << format_number(row.accept_length) << ',' << status << ','
        << (expect_pass ? "pass" : "fail") << '\n';
    log << "  " << std::left << std::setw(8) << mode_name(row.mode)
        << " tv=" << format_number(row.tv)
        << " accept_length=" << fixed3(row.accept_length) << " " << status
        << "\n";
  }
  OutputDir out(config.output_dir);
  out.write("verify.csv", csv.str());
  out.write_manifest("verify", config);
  return failed ? kExitAcceptanceFail : kExitOk;
}

int cmd_bench(const RunConfig& config, std::ostream& log) {
  validate_run_config(config);
  const auto model = build_model(config);
  bool wants_hawk = false;
  for (DecodeMode m : config.bench.modes) {
    wants_hawk = wants_hawk || m == DecodeMode::kHawk;
  }
  const int vsd = wants_hawk ? config.engine.vertical_depth : 0;
  if (wants_hawk && vsd < 1) {
    throw ConfigError("engine.vertical_depth", "must be >= 1 in hawk mode");
  }
  const DraftHeadSet heads =
      build_heads(config, model, config.engine.horizontal_depth, vsd);

  std::vector<MetricsReport> reports;
  for (DecodeMode mode : config.bench.modes) {
    EngineConfig engine = engine_for_mode(config.engine, mode);
    engine.record_trace = mode == DecodeMode::kHawk;
    const Decoder decoder(model, heads, engine, config.model.seed);
    MetricsReport total;
    total.mode = std::string(mode_name(mode));
    total.draft_overhead_ratio = engine.draft_overhead_ratio;
    for (int i = 0; i < config.bench.images; ++i) {
      const DecodeResult r = decoder.decode_image(
          derive_seed(config.seed, "bench", static_cast<std::uint64_t>(i)));
      total.merge(r.metrics);
      if (mode == DecodeMode::kHawk) {
        total.kl_trace.insert(total.kl_trace.end(), r.kl_trace.begin(),
                              r.kl_trace.end());
      }
    }
    if (mode == DecodeMode::kHawk) {
      RejectionCurveOptions options;
      options.positions = config.bench.curve_positions;
      options.max_candidates = config.bench.curve_max_candidates;
      options.seed = derive_seed(config.seed, "bench/rejection-curve");
      options.target_sampling = engine.target_sampling;
      options.transform_drafts = engine.transform_drafts;
      total.rejection_curve = rejection_curve(*model, heads, options).points;
    }
    reports.push_back(std::move(total));
  }

  OutputDir out(config.output_dir);
  out.write("metrics.csv",
            render([&](std::ostream& s) { write_metrics_csv(s, reports); }));
  for (const MetricsReport& r : reports) {
    if (r.mode != mode_name(DecodeMode::kHawk)) continue;
    out.write("rejection_curve.csv", render([&](std::ostream& s) {
                write_rejection_curve_csv(s, r.rejection_curve);
              }));
    out.write("kl_trace.csv", render([&](std::ostream& s) {
                write_kl_trace_csv(s, r.kl_trace);
              }));
  }
  out.write_untracked("summary.json", metrics_summary_json(reports));
  out.write_manifest("bench", config);

  log << std::left << std::setw(9) << "mode" << std::setw(15) << "accept_length"
      << std::setw(17) << "modeled_speedup"
      << "wall_ms\n";
  for (const MetricsReport& r : reports) {
    log << std::left << std::setw(9) << r.mode << std::setw(15)
        << fixed3(r.accept_length()) << std::setw(17)
        << fixed3(r.modeled_speedup()) << fixed3(r.wall_clock_ms) << "\n";
  }
  return kExitOk;
}

int cmd_fit(const RunConfig& config, std::ostream& log) {
  validate_run_config(config);
  if (config.heads.offsets.empty()) {
    throw ConfigError("heads.offsets", "must list at least one offset");
  }
  const auto model = build_model(config);
  FitOptions options;
  options.sample_count = config.heads.sample_count;
  options.smoothing = config.heads.smoothing;
  options.seed = derive_seed(config.seed, "heads");
  TabularHeadFile file;
  file.grid = config.grid;
  file.seed = options.seed;
  file.sample_count = options.sample_count;
  file.smoothing = options.smoothing;
  file.heads = fit_tabular_heads(*model, config.heads.offsets, options);

  std::ostringstream nll_csv;
  nll_csv << "offset,direction,rows,cols,heldout_nll\n";
  log << "offset  direction   heldout_nll\n";
  const std::uint64_t heldout_seed = derive_seed(config.seed, "heads/heldout");
  for (const auto& head : file.heads) {
    const int offset = head->offset();
    const bool vertical = offset % config.grid.width == 0;
    const double nll = heldout_nll(*model, *head, config.heads.heldout_samples,
                                   heldout_seed);
    nll_csv << offset << ',' << (vertical ? "vertical" : "horizontal") << ','
            << offset / config.grid.width << ',' << offset % config.grid.width
            << ',' << format_number(nll) << '\n';
    log << std::left << std::setw(8) << offset << std::setw(12)
        << (vertical ? "vertical" : "horizontal") << fixed3(nll) << "\n";
  }

  OutputDir out(config.output_dir);
  out.write("model.json", serialize_model(*model));
  out.write("heads.json", serialize_heads(file));
  out.write("nll.csv", nll_csv.str());
  out.write_manifest("fit", config);
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Spatial speculative decoding over raster token grids", "hawk"};
  app.require_subcommand(1);
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  auto* seed_opt = static_cast<CLI::Option*>(nullptr);
  auto* out_opt = static_cast<CLI::Option*>(nullptr);

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, std::ostream&);
  };
  const Sub subs[] = {
      {"decode", "Decode one image; write graymap, trace and metrics",
       &cmd_decode},
      {"verify", "Check exactness against the enumerated joint law",
       &cmd_verify},
      {"bench", "Accept length and rejection curves across modes", &cmd_bench},
      {"fit", "Fit tabular draft heads and report held-out NLL", &cmd_fit},
  };
  std::vector<CLI::App*> commands;
  for (const Sub& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    cmd->add_option("--config", config_path, "Run config (JSON)")->required();
    seed_opt = cmd->add_option("--seed", seed, "Override the master seed");
    out_opt = cmd->add_option("--out", out_dir, "Override the output directory");
    commands.push_back(cmd);
  }
  (void)seed_opt;
  (void)out_opt;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* cmd = commands[i];
    if (!cmd->parsed()) continue;
    try {
      RunConfig config = parse_run_config(read_file(config_path));
      if (cmd->count("--seed") > 0) config.seed = seed;
      if (cmd->count("--out") > 0) config.output_dir = out_dir;
      return subs[i].fn(config, out);
    } catch (const ValidationError& e) {
      err << "hawk " << subs[i].name << ": " << e.what() << "\n";
      return kExitValidation;
    } catch (const std::exception& e) {
      err << "hawk " << subs[i].name << ": runtime error: " << e.what() << "\n";
      return kExitRuntime;
    }
  }
  return kExitValidation;
}

}  // namespace hawk::cli
