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

#include "tors3/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "tors3/errors.hpp"

namespace tors3 {

using nlohmann::json;

namespace {

std::vector<CurvePoint> points_from(const json& a) {
  std::vector<CurvePoint> out;
  for (const auto& s : a) out.push_back(CurvePoint::parse(s.get<std::string>()));
  return out;
}

std::string point_set_string(std::vector<CurvePoint> pts) {
  std::sort(pts.begin(), pts.end());
  std::string s = "{";
  for (size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + pts[i].to_string();
  return s + "}";
}

std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
  return out;
}

}  // namespace

void RunConfig::check_against(const std::vector<DegreeThreeMap>& corpus) const {
  for (const auto& c : curves) find_map(corpus, c.certify.curve);
}

RunConfig parse_run_config(const json& j, const std::string& base_dir) {
  try {
    RunConfig cfg;
    std::filesystem::path corpus = j.value("corpus", std::string("corpus.txt"));
    if (corpus.is_relative()) corpus = std::filesystem::path(base_dir) / corpus;
    cfg.corpus_path = corpus.string();
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.parallelism = std::max(1, j.value("parallelism", 1));
    cfg.scan_height = j.value("scan_height", cfg.scan_height);
    for (const auto& c : j.value("curves", json::array())) {
      CurveConfig cc;
      const std::string route = c.value("route", std::string("chabauty_sieve"));
      if (route == "quotient") {
        cc.route = Route::kQuotient;
      } else if (route != "chabauty_sieve") {
        throw InvalidInput("unknown route '" + route + "'");
      }
      cc.certify = certify_config_from_json(c);
      if (cc.route == Route::kChabautySieve && cc.certify.chabauty_prime == 0) {
        throw InvalidInput(cc.certify.curve + ": chabauty_prime is required");
      }
      cc.expected_points = points_from(c.value("expected_points", json::array()));
      cfg.curves.push_back(std::move(cc));
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ParseError(std::string("run config: ") + e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_run_config(j, std::filesystem::path(path).parent_path().string());
}

std::string default_config_path() { return std::string(TORS3_DATA_DIR) + "/default_config.json"; }

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.rfind('.', eq);
  if (eq == std::string::npos || dot == std::string::npos) {
    throw InvalidInput("override must look like ID.key=value: " + assignment);
  }
  const std::string id = assignment.substr(0, dot);
  const std::string key = assignment.substr(dot + 1, eq - dot - 1);
  const std::string value = assignment.substr(eq + 1);
  for (auto& c : config.curves) {
    if (c.certify.curve != id) continue;
    try {
      if (key == "N") {
        c.certify.N = Integer(value);
      } else if (key == "S") {
        c.certify.S = parse_primes(value);
      } else if (key == "chabauty_prime") {
        c.certify.chabauty_prime = std::stoull(value);
      } else if (key == "precision") {
        c.certify.precision = std::stol(value);
      } else if (key == "search_height") {
        c.certify.search_height = std::stoi(value);
      } else {
        throw InvalidInput("unknown override key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw InvalidInput("bad value in override " + assignment);
    }
    return;
  }
  throw InvalidInput("override names unknown curve '" + id + "'");
}

std::vector<CurvePoint> CurveRun::claimed_points() const {
  if (cert) return cert->claimed_points;
  if (quotient) return quotient->claimed_points;
  return {};
}

json CurveRun::certificate_json() const {
  if (cert) return cert->to_json();
  if (quotient) return quotient->to_json();
  return nullptr;
}

namespace {

CurveRun run_curve(const std::vector<DegreeThreeMap>& corpus, const CurveConfig& cc,
                   const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CurveRun run;
  run.curve = cc.certify.curve;
  run.route = cc.route;
  run.expected_points = cc.expected_points;
  std::string stage = "corpus";
  try {
    const DegreeThreeMap& m = find_map(corpus, run.curve);
    run.map_id = m.id;
    stage = "resolvent";
    const HyperellipticModel h = printed_model(m);
    stage = "certify";
    if (cc.route == Route::kQuotient) {
      run.quotient = certify_quotient_route(h, cc.certify.rank_bound, cc.certify.rank_source,
                                            cc.certify.search_height, cc.certify.torsion_primes);
      run.certified = run.quotient->certified;
    } else {
      run.cert = certify_rational_points(h, cc.certify);
      run.certified = run.cert->certified;
    }
    if (options.verify && run.certified) {
      stage = "verify";
      run.verify_issues = verify_certificate_json(
          json::parse(run.certificate_json().dump()));
    }
    stage = "interpret";
    for (const auto& P : run.claimed_points()) run.fibers.push_back({P, interpret_point(m, P)});
  } catch (const std::exception& e) {
    run.error = stage + ": " + e.what();
  }
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace

RunResult run_corpus(const RunConfig& config, const RunOptions& options) {
  RunResult result;
  const auto corpus = load_corpus(config.corpus_path);
  if (corpus.empty()) return result;
  config.check_against(corpus);

  result.curves.resize(config.curves.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < config.curves.size(); i = next++) {
      result.curves[i] = run_curve(corpus, config.curves[i], options);
    }
  };
  std::vector<std::thread> pool;
  const size_t width = std::min<size_t>(static_cast<size_t>(config.parallelism),
                                        std::max<size_t>(config.curves.size(), 1));
  for (size_t w = 0; w < width; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (options.scans && config.scan_height > 0) {
    for (const auto& m : corpus) {
      const auto start = std::chrono::steady_clock::now();
      result.scans.push_back(scan_family(m, config.scan_height, config.parallelism));
      result.scan_seconds.push_back(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
  }
  return result;
}

std::vector<std::string> verify_certificate_json(const json& j) {
  if (!j.is_object()) throw ParseError("certificate must be a JSON object");
  std::vector<std::string> issues;
  bool certified = false;
  try {
    if (j.value("route", std::string()) == "quotient") {
      QuotientCertificate c = QuotientCertificate::from_json(j);
      certified = c.certified;
      issues = verify_quotient_certificate(c);
    } else {
      RationalPointCertificate c = RationalPointCertificate::from_json(j);
      certified = c.certified;
      issues = verify_certificate(c);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    // Well-formed but mathematically invalid content is a rejection.
    return {std::string("invalid content: ") + e.what()};
  }
  if (!certified) issues.insert(issues.begin(), "certificate is marked uncertified");
  return issues;
}

std::vector<ReportRow> reproduction_report(const RunResult& run) {
  std::vector<ReportRow> rows;
  // The cusp row covers the verified curves; the others already fail above.
  std::set<std::pair<std::string, std::string>> non_cusps, expected;
  for (const auto& c : run.curves) {
    ReportRow r;
    r.claim = c.curve + "(Q) = " + point_set_string(c.expected_points);
    r.seconds = c.seconds;
    const auto claimed = c.claimed_points();
    if (!c.error.empty()) {
      r.status = "fail";
      r.detail = c.error;
    } else if (!c.certified) {
      r.status = "no-certificate";
      const auto& f = c.cert ? c.cert->failures : c.quotient->failures;
      r.detail = f.empty() ? "" : f.front();
    } else if (!c.verify_issues.empty()) {
      r.status = "fail";
      r.detail = "re-verification: " + c.verify_issues.front();
    } else if (std::set<CurvePoint>(claimed.begin(), claimed.end()) !=
               std::set<CurvePoint>(c.expected_points.begin(), c.expected_points.end())) {
      r.status = "fail";
      r.detail = "certified " + point_set_string(claimed);
    } else {
      r.status = "pass";
      r.detail = std::to_string(claimed.size()) + " points";
    }
    rows.push_back(r);
    if (!c.verified()) continue;
    if (c.curve == "C4(16)") expected.insert({"C4(16)", "-1/4"});
    for (const auto& pf : c.fibers) {
      if (pf.fiber.kind == FiberKind::kEllipticPoint) {
        non_cusps.insert({c.curve, pf.fiber.t0 ? pf.fiber.t0->to_string() : "infinity"});
      }
    }
  }
  if (std::any_of(run.curves.begin(), run.curves.end(),
                  [](const CurveRun& c) { return c.verified(); })) {
    ReportRow r;
    r.claim = "certified points lie over cusps, except t = -1/4 on C4(16)";
    r.status = non_cusps == expected ? "pass" : "fail";
    for (const auto& [curve, t] : non_cusps) r.detail += curve + " t=" + t + " ";
    if (r.detail.empty()) r.detail = "no non-cusp fibers";
    rows.push_back(r);
  }
  for (size_t i = 0; i < run.scans.size(); ++i) {
    const ScanReport& s = run.scans[i];
    ReportRow r;
    r.seconds = i < run.scan_seconds.size() ? run.scan_seconds[i] : 0;
    r.claim = s.map_id + ": fibers with disc < 0 and with disc > 0 non-square at height <= " +
              std::to_string(s.height_bound);
    const bool ok = s.first_complex_witness && s.first_real_nonsquare_witness;
    r.status = ok ? "pass" : "fail";
    if (ok) {
      r.detail = "t = " + s.first_complex_witness->to_string() + ", t = " +
                 s.first_real_nonsquare_witness->to_string();
    }
    rows.push_back(r);
  }
  return rows;
}

std::string format_report(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << std::left << std::setw(15) << r.status << std::right << std::fixed
       << std::setprecision(2) << std::setw(8) << r.seconds << "s  " << r.claim;
    if (!r.detail.empty()) os << "  [" << r.detail << "]";
    os << "\n";
  }
  return os.str();
}

json run_summary(const RunResult& run) {
  json j;
  j["rows"] = json::array();
  for (const auto& r : reproduction_report(run)) {
    j["rows"].push_back(
        {{"claim", r.claim}, {"status", r.status}, {"seconds", r.seconds}, {"detail", r.detail}});
  }
  j["curves"] = json::array();
  for (const auto& c : run.curves) {
    json cj;
    cj["curve"] = c.curve;
    cj["map"] = c.map_id;
    cj["certified"] = c.certified;
    cj["verified"] = c.verified();
    cj["error"] = c.error;
    cj["claimed_points"] = json::array();
    for (const auto& P : c.claimed_points()) cj["claimed_points"].push_back(P.to_string());
    cj["fibers"] = json::array();
    for (const auto& pf : c.fibers) {
      cj["fibers"].push_back({{"point", pf.point.to_string()},
                              {"t", pf.fiber.t0 ? pf.fiber.t0->to_string() : "infinity"},
                              {"kind", pf.fiber.kind == FiberKind::kCusp ? "cusp" : "elliptic_point"},
                              {"reason", pf.fiber.reason}});
    }
    cj["seconds"] = c.seconds;
    j["curves"].push_back(cj);
  }
  j["scans"] = json::array();
  for (const auto& s : run.scans) j["scans"].push_back(s.summary_json());
  return j;
}

std::vector<ReportRow> report_from_summary(const json& summary) {
  std::vector<ReportRow> rows;
  try {
    for (const auto& r : summary.at("rows")) {
      rows.push_back({r.at("claim").get<std::string>(), r.at("status").get<std::string>(),
                      r.at("seconds").get<double>(), r.at("detail").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("run summary: ") + e.what());
  }
  return rows;
}

std::string file_stem(const std::string& id) {
  std::string out;
  for (char c : id) {
    if (c == '(' || c == '/') {
      out += '_';
    } else if (c != ')') {
      out += c;
    }
  }
  return out;
}

}  // namespace tors3
