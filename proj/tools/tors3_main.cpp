// Copyright 2026 The tors3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// tors3: certify rational points on the discriminant curves of the corpus
// maps and interpret them on X1(16) and X1(20).
//
// Exit codes: 0 all pass, 1 any failure, 2 configuration or parse error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tors3/curves.hpp"
#include "tors3/errors.hpp"
#include "tors3/pipeline.hpp"
#include "tors3/verdicts.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfigError = 2;

std::string output_dir(const std::string& flag, const std::string& configured) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("TORS3_OUTPUT_DIR"); env && *env) return env;
  return configured;
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw tors3::InvalidInput("cannot write " + path.string());
  out << text;
}

int corpus_validate(const std::string& corpus_path) {
  const auto corpus = tors3::load_corpus(corpus_path);
  int bad = 0;
  for (const auto& m : corpus) {
    std::cout << m.id;
    if (!m.curve_id.empty()) std::cout << " (" << m.curve_id << ")";
    try {
      const auto h = tors3::printed_model(m);
      std::cout << ": resolvent ok, genus " << tors3::genus(h) << "\n";
    } catch (const tors3::Error& e) {
      std::cout << ": " << e.what() << "\n";
      ++bad;
    }
  }
  std::cout << corpus.size() << " maps, " << bad << " failed\n";
  return bad ? kFail : kPass;
}

struct CertifyArgs {
  std::string config_path;
  std::vector<std::string> curves;
  std::vector<std::string> overrides;
  std::string out;
  int jobs = 0;
  bool no_scan = false;
};

int certify(const CertifyArgs& args) {
  tors3::RunConfig config =
      tors3::load_run_config(args.config_path.empty() ? tors3::default_config_path()
                                                      : args.config_path);
  for (const auto& o : args.overrides) tors3::apply_override(config, o);
  if (args.jobs > 0) config.parallelism = args.jobs;
  tors3::RunOptions options;
  options.scans = !args.no_scan;
  if (!args.curves.empty()) {
    std::vector<tors3::CurveConfig> kept;
    for (const auto& id : args.curves) {
      auto it = std::find_if(config.curves.begin(), config.curves.end(),
                             [&](const auto& c) { return c.certify.curve == id; });
      if (it == config.curves.end()) {
        throw tors3::InvalidInput("curve '" + id + "' is not in the config");
      }
      kept.push_back(*it);
    }
    config.curves = std::move(kept);
    // Family scans belong to full runs.
    options.scans = false;
  }

  const fs::path dir = output_dir(args.out, config.output_dir);
  const tors3::RunResult run = tors3::run_corpus(config, options);

  for (const auto& c : run.curves) {
    if (!c.error.empty()) std::cerr << c.curve << ": " << c.error << "\n";
    const json cert = c.certificate_json();
    if (!cert.is_null()) write_file(dir / (tors3::file_stem(c.curve) + ".json"), cert.dump(2) + "\n");
  }
  for (const auto& s : run.scans) {
    write_file(dir / (tors3::file_stem(s.map_id) + "_scan.csv"), s.to_csv());
  }
  write_file(dir / "summary.json", tors3::run_summary(run).dump(2) + "\n");

  const auto rows = tors3::reproduction_report(run);
  std::cout << tors3::format_report(rows);
  for (const auto& r : rows) {
    if (r.status != "pass") return kFail;
  }
  return kPass;
}

int verify(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tors3::InvalidInput("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw tors3::ParseError(path + ": " + e.what());
  }
  const auto issues = tors3::verify_certificate_json(j);
  for (const auto& i : issues) std::cout << "rejected: " << i << "\n";
  if (issues.empty()) std::cout << "accepted: " << j.value("curve", std::string()) << "\n";
  return issues.empty() ? kPass : kFail;
}

int scan(const std::string& corpus_path, const std::string& map_id, int height,
         const std::string& out, int jobs) {
  if (height < 1) throw tors3::InvalidInput("height must be at least 1");
  const auto corpus = tors3::load_corpus(corpus_path);
  const auto& m = tors3::find_map(corpus, map_id);
  const auto report = tors3::scan_family(m, height, jobs);
  const fs::path dir = output_dir(out, "tors3-out");
  write_file(dir / (tors3::file_stem(m.id) + "_scan.csv"), report.to_csv());
  std::cout << report.summary_json().dump(2) << "\n";
  return report.first_complex_witness && report.first_real_nonsquare_witness ? kPass : kFail;
}

int report(const std::string& out, const std::string& config_path) {
  std::string configured = "tors3-out";
  if (!config_path.empty()) configured = tors3::load_run_config(config_path).output_dir;
  const fs::path path = fs::path(output_dir(out, configured)) / "summary.json";
  if (!fs::exists(path)) {
    std::cout << "no run found at " << path.string() << "\n";
    return kPass;
  }
  std::ifstream in(path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw tors3::ParseError(path.string() + ": " + e.what());
  }
  const auto rows = tors3::report_from_summary(j);
  std::cout << tors3::format_report(rows);
  for (const auto& r : rows) {
    if (r.status != "pass") return kFail;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified rational points on discriminant curves of X1(16) and X1(20)"};
  app.require_subcommand(1);

  std::string corpus_path = tors3::default_corpus_path();
  auto* corpus_cmd = app.add_subcommand("corpus", "Corpus operations");
  corpus_cmd->require_subcommand(1);
  auto* validate_cmd = corpus_cmd->add_subcommand("validate", "Parse the corpus and check every resolvent");
  validate_cmd->add_option("--corpus", corpus_path, "Corpus file");

  CertifyArgs cargs;
  auto* certify_cmd = app.add_subcommand("certify", "Certify, re-verify and interpret");
  certify_cmd->add_option("--curve", cargs.curves, "Restrict to these curves, e.g. C2(20)");
  certify_cmd->add_option("--config", cargs.config_path, "Run config (default: data/default_config.json)");
  certify_cmd->add_option("--set", cargs.overrides, "Override, e.g. C2(20).N=5");
  certify_cmd->add_option("--out", cargs.out, "Output directory (else $TORS3_OUTPUT_DIR, else config)");
  certify_cmd->add_option("--jobs", cargs.jobs, "Parallelism width");
  certify_cmd->add_flag("--no-scan", cargs.no_scan, "Skip the family scans");

  std::string cert_path;
  auto* verify_cmd = app.add_subcommand("verify", "Re-verify a certificate from scratch");
  verify_cmd->add_option("certificate", cert_path, "Certificate JSON")->required();

  std::string map_id, scan_out;
  int height = 50, scan_jobs = 0;
  auto* scan_cmd = app.add_subcommand("scan", "Classify fibers by height");
  scan_cmd->add_option("--map", map_id, "Map id or curve id")->required();
  scan_cmd->add_option("--height", height, "Height bound");
  scan_cmd->add_option("--corpus", corpus_path, "Corpus file");
  scan_cmd->add_option("--out", scan_out, "Output directory");
  scan_cmd->add_option("--jobs", scan_jobs, "Threads (0: hardware)");

  std::string report_out, report_config;
  auto* report_cmd = app.add_subcommand("report", "Print the report of the last run");
  report_cmd->add_option("--out", report_out, "Output directory of the run");
  report_cmd->add_option("--config", report_config, "Run config naming the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    if (*validate_cmd) return corpus_validate(corpus_path);
    if (*certify_cmd) return certify(cargs);
    if (*verify_cmd) return verify(cert_path);
    if (*scan_cmd) return scan(corpus_path, map_id, height, scan_out, scan_jobs);
    if (*report_cmd) return report(report_out, report_config);
  } catch (const tors3::InvalidInput& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const tors3::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kPass;
}
