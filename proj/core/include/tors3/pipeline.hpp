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

#ifndef TORS3_PIPELINE_HPP_
#define TORS3_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tors3/certify.hpp"
#include "tors3/verdicts.hpp"

namespace tors3 {

enum class Route { kChabautySieve, kQuotient };

struct CurveConfig {
  Route route = Route::kChabautySieve;
  CertifyConfig certify;  // the quotient route reads the rank and search fields only
  std::vector<CurvePoint> expected_points;
};

// Run configuration; see data/default_config.json. Relative corpus paths
// are resolved against the config file's directory.
struct RunConfig {
  std::string corpus_path;
  std::string output_dir = "tors3-out";
  int parallelism = 1;
  int scan_height = 50;
  std::vector<CurveConfig> curves;

  // Every curve must exist in `corpus`; throws InvalidInput otherwise.
  void check_against(const std::vector<DegreeThreeMap>& corpus) const;
};

RunConfig parse_run_config(const nlohmann::json& j, const std::string& base_dir);
RunConfig load_run_config(const std::string& path);
std::string default_config_path();

// Applies "ID.key=value" for key in N, S (comma separated), chabauty_prime,
// precision, search_height. Throws InvalidInput on unknown curves or keys.
void apply_override(RunConfig& config, const std::string& assignment);

struct PointFiber {
  CurvePoint point;
  FiberInterpretation fiber;
};

struct CurveRun {
  std::string curve;
  std::string map_id;
  Route route = Route::kChabautySieve;
  std::optional<RationalPointCertificate> cert;
  std::optional<QuotientCertificate> quotient;
  std::vector<PointFiber> fibers;
  std::vector<CurvePoint> expected_points;
  bool certified = false;
  std::vector<std::string> verify_issues;  // empty after a clean re-check
  std::string error;                       // "stage: message" if a stage threw
  double seconds = 0;

  bool verified() const { return certified && verify_issues.empty() && error.empty(); }
  std::vector<CurvePoint> claimed_points() const;
  nlohmann::json certificate_json() const;
};

struct RunResult {
  std::vector<CurveRun> curves;
  std::vector<ScanReport> scans;
  std::vector<double> scan_seconds;
};

struct RunOptions {
  bool verify = true;
  bool scans = true;
};

// Per curve: resolvent check against the printed model, certification by
// the configured route, independent re-verification, and the fiber of
// every claimed point. Curves run in parallel up to config.parallelism.
RunResult run_corpus(const RunConfig& config, const RunOptions& options = {});

// Verifies a certificate of either route. Throws ParseError on malformed
// input.
std::vector<std::string> verify_certificate_json(const nlohmann::json& j);

struct ReportRow {
  std::string claim;
  std::string status;  // "pass", "fail" or "no-certificate"
  double seconds = 0;
  std::string detail;
};

std::vector<ReportRow> reproduction_report(const RunResult& run);
std::string format_report(const std::vector<ReportRow>& rows);

// The summary written next to the certificates, and its inverse for
// `report`.
nlohmann::json run_summary(const RunResult& run);
std::vector<ReportRow> report_from_summary(const nlohmann::json& summary);

// "C2(16)" -> "C2_16".
std::string file_stem(const std::string& id);

}  // namespace tors3

#endif  // TORS3_PIPELINE_HPP_
