#include "adisk/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "adisk/analytic_map.hpp"
#include "adisk/envelope.hpp"
#include "adisk/gluing.hpp"
#include "adisk/hull.hpp"
#include "adisk/leaves.hpp"
#include "adisk/measure.hpp"
#include "adisk/parallel.hpp"
#include "adisk/probes.hpp"
#include "adisk/rng.hpp"
#include "adisk/svg.hpp"

namespace adisk {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Point point_from_json(const json& j) {
  Point p;
  if (!j.is_array() || j.empty())
    throw ConfigError("point must be an array of [re, im] pairs");
  for (const auto& c : j) {
    if (!c.is_array() || c.size() != 2)
      throw ConfigError("point coordinates must be [re, im] pairs");
    p.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return p;
}

/// Accumulates artifacts and writes the manifest last.
struct ArtifactSink {
  fs::path dir;
  json manifest_rows = json::array();
  std::vector<std::string> paths;

  void write(const std::string& name, const std::string& bytes) {
    fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write artifact " + p.string());
    out << bytes;
    out.close();
    json row;
    row["path"] = name;
    row["bytes"] = bytes.size();
    row["fnv64"] = hex64(fnv1a64(bytes));
    manifest_rows.push_back(row);
    paths.push_back(p.string());
  }
};

std::string measure_scatter_svg(const EmpiricalMeasure& mu) {
  SvgPlot plot;
  std::vector<std::pair<double, double>> xy;
  xy.reserve(mu.size());
  for (const Point& p : mu.points()) xy.emplace_back(p[0].real(), p[0].imag());
  plot.add_scatter(xy, "#1f77b4", 1.2);
  return plot.render();
}

// ---------------------------------------------------------------------------
// Command implementations
// ---------------------------------------------------------------------------

void run_measure(const json& block, std::uint64_t seed, int grid_n, ArtifactSink& sink) {
  if (!block.contains("map")) throw ConfigError("measure: missing field 'map'");
  AnalyticMap f = AnalyticMap::from_json_string(block.at("map").dump());
  const int dmax = block.value("dmax", 4);
  const BoundaryGrid grid{grid_n};

  EmpiricalMeasure mu = pushforward(f, grid);
  std::ostringstream csv;
  mu.to_csv(csv);
  sink.write("measure.csv", csv.str());
  sink.write("moments.json", moments(mu, dmax).to_json_string(2) + "\n");
  sink.write("measure_scatter.svg", measure_scatter_svg(mu));

  const int probes = block.value("jensen_probes", 0);
  if (probes > 0) {
    auto dict = random_probe_dictionary(mu.dim(), probes, 3, seed);
    JensenReport rep = jensen_check(mu, center(mu), dict, block.value("jensen_slack", 1e-2));
    sink.write("jensen.json", rep.to_json_string(2) + "\n");
  }
}

void run_glue(const json& block, std::uint64_t seed, int grid_n, ArtifactSink& sink) {
  for (const char* field : {"f", "g"})
    if (!block.contains(field))
      throw ConfigError(std::string("glue: missing field '") + field + "'");
  AnalyticMap f = AnalyticMap::from_json_string(block.at("f").dump());
  AnalyticMap g = AnalyticMap::from_json_string(block.at("g").dump());
  const double alpha = block.value("alpha", 0.5);
  std::vector<double> r_list = block.value("r_list", std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4});
  const int dmax = block.value("dmax", 4);
  const BoundaryGrid grid{grid_n};

  auto rows = convergence_profile(f, g, alpha, r_list, grid, dmax, seed);
  std::ostringstream csv;
  profile_to_csv(rows, csv);
  sink.write("profile.csv", csv.str());

  SvgPlot plot;
  std::vector<std::pair<double, double>> curve;
  for (const auto& row : rows)
    curve.emplace_back(std::log10(row.r), std::log10(std::max(row.distance, 1e-17)));
  plot.add_polyline(curve, "#d62728", 2.0);
  plot.add_scatter(curve, "#d62728", 3.0);
  sink.write("profile.svg", plot.render());

  GlueConfig cfg;
  cfg.alpha = alpha;
  cfg.r = r_list.back();
  cfg.grid = grid;
  AnalyticMap glued = glue(f, g, cfg);
  sink.write("glued_map.json", glued.to_json_string(2) + "\n");
  EmpiricalMeasure mu = pushforward(glued, grid);
  std::ostringstream mcsv;
  mu.to_csv(mcsv);
  sink.write("glued_measure.csv", mcsv.str());

  const int probes = block.value("jensen_probes", 100);
  if (probes > 0) {
    auto dict = random_probe_dictionary(mu.dim(), probes, 3, seed);
    JensenReport rep =
        jensen_check(mu, f.eval(Cx(0.0, 0.0)), dict, block.value("jensen_slack", 5e-2));
    sink.write("jensen.json", rep.to_json_string(2) + "\n");
  }
}

UscFunction phi_from_json(const json& spec, int dim) {
  const std::string kind = spec.value("kind", "");
  if (kind == "boundary_re") {
    HermitianPoly re;
    re.dim = dim;
    std::vector<int> a(dim, 0), b(dim, 0);
    a[0] = 1;
    re.terms.push_back({Cx(1.0, 0.0), a, b});
    return UscFunction::boundary_data(re, spec.value("M", 1.5),
                                      spec.value("domain_radius", 1.0));
  }
  if (kind == "norm_sq") return UscFunction::norm_power(dim, 2.0);
  if (kind == "log_norm") return UscFunction::log_norm(dim);
  throw ConfigError("envelope: phi.kind must be boundary_re | norm_sq | log_norm");
}

void run_envelope(const json& block, std::uint64_t seed, int grid_n, ArtifactSink& sink) {
  if (!block.contains("points")) throw ConfigError("envelope: missing field 'points'");
  std::vector<Point> points;
  for (const auto& pj : block.at("points")) points.push_back(point_from_json(pj));
  if (points.empty()) throw ConfigError("envelope: empty point list");
  const int dim = static_cast<int>(points[0].size());
  const double R = block.value("domain_radius", 1.0);
  json phi_spec = block.value("phi", json{{"kind", "norm_sq"}});
  if (!phi_spec.contains("domain_radius")) phi_spec["domain_radius"] = R;
  UscFunction phi = phi_from_json(phi_spec, dim);

  EnvelopeConfig cfg;
  cfg.seed = seed;
  cfg.final_grid_n = grid_n;
  if (block.contains("restarts")) cfg.restarts = block.at("restarts").get<int>();
  if (block.contains("degrees")) cfg.degrees = block.at("degrees").get<std::vector<int>>();

  std::ostringstream csv;
  csv << "point,value\n";
  json witnesses = json::array();
  std::vector<std::pair<double, double>> curve;
  for (std::size_t i = 0; i < points.size(); ++i) {
    EnvelopeConfig sub = cfg;
    sub.seed = sub_seed(seed, i);
    EnvelopeResult res = poletsky_value(phi, points[i], R, sub);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, res.value);
    csv << buf;
    witnesses.push_back(json::parse(res.witness.to_json_string()));
    curve.emplace_back(static_cast<double>(i), res.value);
  }
  sink.write("envelope.csv", csv.str());
  sink.write("witnesses.json", witnesses.dump(2) + "\n");
  SvgPlot plot;
  plot.add_polyline(curve, "#2ca02c", 2.0);
  plot.add_scatter(curve, "#2ca02c", 3.0);
  sink.write("envelope.svg", plot.render());
}

CompactSet compact_from_json(const json& spec) {
  const std::string kind = spec.value("kind", "");
  std::vector<Point> samples;
  if (kind == "circle") {
    const int n = spec.value("samples", 512);
    for (int k = 0; k < n; ++k) samples.push_back({std::polar(1.0, kTwoPi * k / n)});
  } else if (kind == "torus") {
    const int n = spec.value("samples", 128);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        samples.push_back(
            {std::polar(1.0, kTwoPi * a / n), std::polar(1.0, kTwoPi * b / n)});
  } else if (kind == "segment") {
    const int n = spec.value("samples", 512);
    for (int k = 0; k < n; ++k)
      samples.push_back({Cx(-1.0 + 2.0 * k / (n - 1), 0.0)});
  } else if (kind == "points") {
    for (const auto& pj : spec.at("points")) samples.push_back(point_from_json(pj));
  } else {
    throw ConfigError("hull: k.kind must be circle | torus | segment | points");
  }
  CompactSet probe(samples, 1.0);  // diameter pass
  const double eps = spec.value("eps", 0.02 * probe.diameter());
  return CompactSet(std::move(samples), eps);
}

void run_hull(const json& block, std::uint64_t seed, int grid_n, ArtifactSink& sink) {
  if (!block.contains("k")) throw ConfigError("hull: missing field 'k'");
  if (!block.contains("z_list")) throw ConfigError("hull: missing field 'z_list'");
  CompactSet K = compact_from_json(block.at("k"));

  DiskSearchConfig cfg;
  cfg.seed = seed;
  cfg.final_grid_n = grid_n;
  if (block.contains("restarts")) cfg.restarts = block.at("restarts").get<int>();
  if (block.contains("degrees")) cfg.degrees = block.at("degrees").get<std::vector<int>>();

  json certs = json::array();
  std::ostringstream csv;
  csv << "point,kind,outside_fraction,margin\n";
  for (const auto& zj : block.at("z_list")) {
    const Point z = point_from_json(zj);
    HullCertificate cert = hull_classify(K, z, cfg);
    certs.push_back(json::parse(cert.to_json_string()));
    const char* kind = cert.kind == HullCertificate::Kind::membership ? "membership"
                       : cert.kind == HullCertificate::Kind::separation ? "separation"
                                                                        : "unknown";
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g\n", kind,
                  cert.kind == HullCertificate::Kind::membership ? cert.outside_fraction
                                                                 : cert.best_outside_fraction,
                  cert.kind == HullCertificate::Kind::separation ? cert.margin
                                                                 : cert.best_margin);
    csv << certs.size() - 1 << "," << buf;
  }
  sink.write("certificates.json", certs.dump(2) + "\n");
  sink.write("summary.csv", csv.str());

  SvgPlot plot;
  std::vector<std::pair<double, double>> xy;
  for (const Point& p : K.samples()) xy.emplace_back(p[0].real(), p[0].imag());
  plot.add_scatter(xy, "#9467bd", 1.0);
  sink.write("k_scatter.svg", plot.render());
}

FiniteLeaf leaf_from_json(const json& spec) {
  const std::string kind = spec.value("kind", "");
  FiniteLeaf leaf;
  if (kind == "example31") {
    const int count = spec.value("count", 20);
    for (int j = 1; j <= count; ++j) {
      std::vector<Cx> second(j + 1, Cx(0.0, 0.0));
      second[j] = Cx(1.0, 0.0);
      leaf.members.push_back(
          AnalyticMap::polynomial({{Cx(0.0, 0.0), Cx(1.0, 0.0)}, second}));
    }
    leaf.ambient_radius = std::sqrt(2.0);
  } else if (kind == "maps") {
    for (const auto& mj : spec.at("members"))
      leaf.members.push_back(AnalyticMap::from_json_string(mj.dump()));
    double R = 0.0;
    for (const AnalyticMap& f : leaf.members) R = std::max(R, sup_norm_auto(f));
    leaf.ambient_radius = R;
  } else {
    throw ConfigError("leaf: leaf.kind must be example31 | maps");
  }
  return leaf;
}

void run_leaf(const json& block, std::uint64_t seed, int grid_n, ArtifactSink& sink) {
  (void)grid_n;
  if (!block.contains("leaf")) throw ConfigError("leaf: missing field 'leaf'");
  FiniteLeaf leaf = leaf_from_json(block.at("leaf"));

  const int per_member = block.value("per_member", 512);
  std::vector<double> radii =
      block.value("radii", std::vector<double>{0.0, 0.25, 0.5, 0.75, 0.9, 1.0});
  ClusterSample cs = cluster_sample(leaf, per_member, radii);
  std::ostringstream csv;
  const int n = leaf.members[0].dim();
  for (int k = 0; k < n; ++k) csv << "z" << k << "_re,z" << k << "_im,";
  csv << "member,zeta_re,zeta_im\n";
  char buf[64];
  for (std::size_t i = 0; i < cs.points.size(); ++i) {
    for (int k = 0; k < n; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,", cs.points[i][k].real(),
                    cs.points[i][k].imag());
      csv << buf;
    }
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", cs.provenance[i].member,
                  cs.provenance[i].zeta.real(), cs.provenance[i].zeta.imag());
    csv << buf;
  }
  sink.write("cluster.csv", csv.str());

  SvgPlot plot;
  std::vector<std::pair<double, double>> xy;
  for (const Point& p : cs.points) xy.emplace_back(p[0].real(), p[0].imag());
  plot.add_scatter(xy, "#17becf", 1.0);
  sink.write("cluster.svg", plot.render());

  if (block.contains("essentiality")) {
    json reports = json::array();
    for (const auto& ej : block.at("essentiality")) {
      WalkConfig wc;
      wc.walks = ej.value("walks", 4000);
      wc.seed = seed;
      EssentialityReport rep =
          essentiality(leaf, point_from_json(ej.at("z")), ej.value("r", 0.1), wc);
      reports.push_back(json::parse(rep.to_json_string()));
    }
    sink.write("essentiality.json", reports.dump(2) + "\n");
  }

  if (block.contains("midrib")) {
    const auto& mj = block.at("midrib");
    MidribConfig mc;
    mc.seed = seed;
    mc.w_radius = mj.value("w_radius", 0.1);
    if (mj.contains("walks")) mc.walks = mj.at("walks").get<int>();
    const int coord = mj.value("h_coord", 0);
    MidribReport rep =
        midrib_test(leaf, MultiPoly::coordinate(n, coord), point_from_json(mj.at("z")), mc);
    sink.write("midrib.json", rep.to_json_string(2) + "\n");
  }
}

int run_report(const json& block, const fs::path& out_dir, ArtifactSink& sink);

// Dispatch shared by run_experiment and the report replay.
int dispatch(const std::string& command, const json& block, std::uint64_t seed,
             int grid_n, ArtifactSink& sink, const fs::path& out_dir) {
  if (command == "measure")
    run_measure(block, seed, grid_n, sink);
  else if (command == "glue")
    run_glue(block, seed, grid_n, sink);
  else if (command == "envelope")
    run_envelope(block, seed, grid_n, sink);
  else if (command == "hull")
    run_hull(block, seed, grid_n, sink);
  else if (command == "leaf")
    run_leaf(block, seed, grid_n, sink);
  else if (command == "report")
    return run_report(block, out_dir, sink);
  else
    throw ConfigError("unknown command '" + command +
                      "' (expected measure | glue | envelope | hull | leaf | report)");
  return 0;
}

struct ParsedConfig {
  std::string command;
  std::uint64_t seed;
  int grid_n;
  int threads;
  std::string output_dir;
  json block;
  json full;
};

ParsedConfig parse_config(const std::string& text, const CliOverrides& ov) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const int version = j.value("schema_version", 1);
  if (version != 1) throw ConfigError("unsupported schema_version");
  if (!j.contains("command") || !j.at("command").is_string())
    throw ConfigError("missing string field 'command'");

  ParsedConfig cfg;
  cfg.command = j.at("command").get<std::string>();
  cfg.seed = ov.seed ? *ov.seed : j.value("seed", std::uint64_t{1});
  cfg.grid_n = ov.grid_n ? *ov.grid_n : j.value("grid_n", 4096);
  cfg.threads = ov.threads ? *ov.threads : j.value("threads", 0);
  if (ov.output_dir) {
    cfg.output_dir = *ov.output_dir;
  } else if (j.contains("output_dir")) {
    cfg.output_dir = j.at("output_dir").get<std::string>();
  } else if (const char* env = std::getenv("ADISK_OUT_DIR")) {
    cfg.output_dir = env;
  } else {
    cfg.output_dir = "adisk-out";
  }
  if (cfg.grid_n < 8) throw ConfigError("grid_n must be >= 8");
  cfg.block = j.value(cfg.command, json::object());

  // Effective config embedded in the manifest (overrides applied).
  cfg.full = j;
  cfg.full["schema_version"] = 1;
  cfg.full["seed"] = cfg.seed;
  cfg.full["grid_n"] = cfg.grid_n;
  cfg.full["threads"] = cfg.threads;
  cfg.full["output_dir"] = cfg.output_dir;
  return cfg;
}

int run_report(const json& block, const fs::path& out_dir, ArtifactSink& sink) {
  if (!block.contains("manifest")) throw ConfigError("report: missing field 'manifest'");
  const fs::path manifest_path = block.at("manifest").get<std::string>();
  std::ifstream in(manifest_path);
  if (!in) throw ConfigError("report: cannot read manifest " + manifest_path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json manifest;
  try {
    manifest = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("report: manifest parse error: ") + e.what());
  }

  // Replay the embedded config into a scratch directory and compare hashes.
  json embedded = manifest.at("config");
  const fs::path replay_dir = out_dir / "replay";
  fs::create_directories(replay_dir);
  embedded["output_dir"] = replay_dir.string();
  RunResult replay = run_experiment(embedded.dump(), {});

  json cmp;
  cmp["schema_version"] = 1;
  cmp["manifest"] = manifest_path.string();
  json mismatches = json::array();
  bool ok = replay.exit_code == 0;
  if (ok) {
    std::ifstream rm(replay_dir / "manifest.json");
    std::stringstream rbuf;
    rbuf << rm.rdbuf();
    json replay_manifest = json::parse(rbuf.str());
    auto original = manifest.at("artifacts");
    auto replayed = replay_manifest.at("artifacts");
    if (original.size() != replayed.size()) ok = false;
    for (std::size_t i = 0; ok && i < original.size(); ++i) {
      if (original[i].at("fnv64") != replayed[i].at("fnv64")) {
        ok = false;
        mismatches.push_back(original[i].at("path"));
      }
    }
  }
  cmp["reproducible"] = ok;
  cmp["mismatches"] = mismatches;
  sink.write("report.json", cmp.dump(2) + "\n");
  return ok ? 0 : 1;
}

}  // namespace

RunResult run_experiment(const std::string& config_json, const CliOverrides& ov) {
  RunResult result;
  ParsedConfig cfg;
  try {
    cfg = parse_config(config_json, ov);
  } catch (const ConfigError& e) {
    result.exit_code = 2;
    result.message = e.what();
    return result;
  }

  try {
    set_worker_count(cfg.threads);
    fs::create_directories(cfg.output_dir);
    ArtifactSink sink;
    sink.dir = cfg.output_dir;
    const int code = dispatch(cfg.command, cfg.block, cfg.seed, cfg.grid_n, sink,
                              cfg.output_dir);

    json manifest;
    manifest["schema_version"] = 1;
    manifest["code_version"] = kVersion;
    manifest["command"] = cfg.command;
    manifest["seed"] = cfg.seed;
    manifest["config"] = cfg.full;
    manifest["config_hash"] = hex64(fnv1a64(cfg.full.dump()));
    manifest["artifacts"] = sink.manifest_rows;
    const std::string manifest_text = manifest.dump(2) + "\n";
    std::ofstream out(fs::path(cfg.output_dir) / "manifest.json", std::ios::binary);
    out << manifest_text;
    out.close();

    result.artifacts = sink.paths;
    result.artifacts.push_back((fs::path(cfg.output_dir) / "manifest.json").string());
    result.exit_code = code;
    result.message = code == 0 ? "ok" : "completed with failures";
  } catch (const ConfigError& e) {
    result.exit_code = 2;
    result.message = e.what();
  } catch (const std::exception& e) {
    result.exit_code = 1;
    json err;
    err["error"] = e.what();
    result.message = err.dump();
  }
  return result;
}

}  // namespace adisk
