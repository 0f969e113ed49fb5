#include "core/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "core/config.hpp"
#include "core/dilation.hpp"
#include "core/roughmap.hpp"
#include "core/tangent.hpp"
#include "core/walks.hpp"

using nlohmann::json;

namespace dilwalk {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Simple numeric table; serialized as CSV (17 significant digits) or as
// a JSON array of row objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write_csv(std::ostream& os) const {
    for (size_t i = 0; i < columns.size(); ++i)
      os << (i ? "," : "") << columns[i];
    os << "\n";
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << fmt17(row[i]);
      os << "\n";
    }
  }

  json to_json() const {
    json arr = json::array();
    for (const auto& row : rows) {
      json obj;
      for (size_t i = 0; i < row.size(); ++i) obj[columns[i]] = row[i];
      arr.push_back(obj);
    }
    return arr;
  }
};

void write_output(const ExperimentConfig& cfg, const Table& table) {
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw ExperimentFailure("cannot open output file: " + cfg.out);
  if (cfg.format == "csv") {
    table.write_csv(os);
  } else {
    os << table.to_json().dump(2) << "\n";
  }
}

void write_json_output(const ExperimentConfig& cfg, const json& j) {
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw ExperimentFailure("cannot open output file: " + cfg.out);
  os << j.dump(2) << "\n";
}

std::string witness_str(const std::vector<double>& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + fmt17(w[i]);
  return s + ")";
}

void enforce(bool ok, const std::string& invariant, double value, double tol,
             const std::vector<double>& witness) {
  if (ok) return;
  std::ostringstream os;
  os << "invariant violated: " << invariant << " defect " << fmt17(value)
     << " exceeds tolerance " << fmt17(tol) << " at witness "
     << witness_str(witness);
  throw ExperimentFailure(os.str());
}

bool is_continuous(const Space& s) { return s.kind() != SpaceKind::Grid; }

// Floating-point budget for an identity that holds exactly in real
// arithmetic, measured in the space's metric after applying maps that
// amplify coordinate rounding by amplification (powers of 1/eps).
double fp_exact_tol(const Space& s, double amplification) {
  if (s.kind() == SpaceKind::Euclidean) return 1e-9;
  double a = s.kind() == SpaceKind::Snowflake ? s.alpha() : 0.5;
  return std::pow(config::kCoordRounding, a) * amplification;
}

json run_axioms(const ExperimentConfig& cfg, const Space& space, Table& table) {
  DilationStructure ds(space);
  table.columns = {"epsilon",       "comp0_sup",     "comp0_mean",
                   "semigroup_sup", "semigroup_mean", "biject_sup",
                   "biject_mean",   "tol_comp0",     "tol_semigroup",
                   "tol_biject"};
  bool strict = is_continuous(space);
  double h = space.kind() == SpaceKind::Grid ? space.spacing() : 0.0;
  double sqn = std::sqrt(static_cast<double>(space.dim()));
  double worst = 0.0;
  for (size_t i = 0; i < cfg.eps_ladder.size(); ++i) {
    double eps = cfg.eps_ladder[i];
    RngStream rng = derive_substream(cfg.seed, "axioms/" + std::to_string(i));
    std::vector<double> one{eps};
    BaseAxiomDefects d =
        check_base_axioms(ds, one, cfg.samples, rng, &cfg.eps_ladder);
    double tol0 = strict ? 1e-12 : 1e-12;
    double tols = strict ? fp_exact_tol(space, 1.0) : 2.0 * h * sqn;
    double tolb = strict ? fp_exact_tol(space, 1.0 / eps)
                         : 1.01 * 0.5 * h * sqn * (1.0 + 1.0 / eps);
    table.rows.push_back({eps, d.base_fixed.sup, d.base_fixed.mean,
                          d.semigroup.sup, d.semigroup.mean, d.bijectivity.sup,
                          d.bijectivity.mean, tol0, tols, tolb});
    enforce(d.base_fixed.sup <= tol0, "comp0 (base fixed)", d.base_fixed.sup,
            tol0, d.base_fixed.worst_witness);
    enforce(d.semigroup.sup <= tols, "semigroup", d.semigroup.sup, tols,
            d.semigroup.worst_witness);
    enforce(d.bijectivity.sup <= tolb, "bijectivity", d.bijectivity.sup, tolb,
            d.bijectivity.worst_witness);
    worst = std::max({worst, d.base_fixed.sup, d.semigroup.sup, d.bijectivity.sup});
  }
  return {{"worst_sup_defect", worst}};
}

json run_groupoid(const ExperimentConfig& cfg, const Space& space, Table& table) {
  DilationStructure ds(space);
  table.columns = {"epsilon",        "isometry_sup",  "isometry_mean",
                   "identity_sup",   "identity_mean", "composition_sup",
                   "composition_mean", "tolerance"};
  bool strict = is_continuous(space);
  double worst = 0.0;
  for (size_t i = 0; i < cfg.eps_ladder.size(); ++i) {
    double eps = cfg.eps_ladder[i];
    RngStream rng = derive_substream(cfg.seed, "groupoid/" + std::to_string(i));
    Point x = space.sample_ball(space.origin(), 1.0, rng);
    GroupoidDefects g = groupoid_checks(ds, x, eps, cfg.samples, rng);
    double tol = strict ? fp_exact_tol(space, 1.0 / eps)
                        : 100.0 * space.spacing() / (eps * eps);
    table.rows.push_back({eps, g.isometry.sup, g.isometry.mean,
                          g.identity_arrow.sup, g.identity_arrow.mean,
                          g.composition.sup, g.composition.mean, tol});
    if (strict) {
      enforce(g.isometry.sup <= tol, "groupoid isometry", g.isometry.sup, tol,
              g.isometry.worst_witness);
      enforce(g.identity_arrow.sup <= tol, "groupoid identity arrow",
              g.identity_arrow.sup, tol, g.identity_arrow.worst_witness);
      enforce(g.composition.sup <= tol, "groupoid composition",
              g.composition.sup, tol, g.composition.worst_witness);
    }
    worst = std::max({worst, g.isometry.sup, g.identity_arrow.sup,
                      g.composition.sup});
  }
  return {{"worst_sup_defect", worst}};
}

json run_tangent(const ExperimentConfig& cfg, const Space& space, Table& table) {
  DilationStructure ds(space);
  TangentReference ref = conical_reference(space);
  Point x = cfg.base_point.value_or(space.origin());
  RngStream rng = derive_substream(cfg.seed, "tangent/pairs");
  auto ladder = tangent_defect_ladder(ds, ref, x, cfg.pairs, cfg.eps_ladder, rng);

  table.columns = {"epsilon", "dist_defect", "sigma_defect"};
  std::vector<std::pair<double, double>> dist_pts, sigma_pts;
  for (const auto& lp : ladder) {
    table.rows.push_back({lp.scale, lp.dist_defect, lp.sigma_defect});
    dist_pts.emplace_back(lp.scale, lp.dist_defect);
    sigma_pts.emplace_back(lp.scale, lp.sigma_defect);
  }
  json summary;
  auto fit_json = [](const RateFit& f) {
    return f.exact ? json{{"exact", true}}
                   : json{{"exact", false},
                          {"slope", f.slope},
                          {"intercept", f.intercept},
                          {"r_squared", f.r_squared}};
  };
  try {
    summary["dist_fit"] = fit_json(rate_regression(dist_pts));
  } catch (const std::invalid_argument&) {
    summary["dist_fit"] = nullptr;
  }
  try {
    summary["sigma_fit"] = fit_json(rate_regression(sigma_pts));
  } catch (const std::invalid_argument&) {
    summary["sigma_fit"] = nullptr;
  }
  return summary;
}

json run_walks(const ExperimentConfig& cfg, const Space& space, Table& table) {
  DilationStructure ds(space);
  double eps = cfg.eps_ladder.front();
  Point x0 = cfg.base_point.value_or(space.origin());

  bool multi = cfg.trajectories > 1;
  if (multi) table.columns.push_back("traj");
  table.columns.push_back("step");
  for (int i = 0; i < space.dim(); ++i)
    table.columns.push_back("coord_" + std::to_string(i));

  std::vector<double> msd(cfg.steps + 1, 0.0);
  for (int t = 0; t < cfg.trajectories; ++t) {
    RngStream rng = derive_substream(cfg.seed, "walks/traj/" + std::to_string(t));
    auto traj = explorer_walk(ds, x0, eps, cfg.steps, rng);
    for (size_t k = 0; k < traj.size(); ++k) {
      double d = space.distance(x0, traj[k]);
      msd[k] += d * d / cfg.trajectories;
      std::vector<double> row;
      if (multi) row.push_back(t);
      row.push_back(static_cast<double>(k));
      row.insert(row.end(), traj[k].begin(), traj[k].end());
      table.rows.push_back(std::move(row));
    }
  }

  // least-squares slope of msd(k) ~ slope * k, through the origin
  double num = 0.0, den = 0.0;
  for (int k = 0; k <= cfg.steps; ++k) {
    num += static_cast<double>(k) * msd[k];
    den += static_cast<double>(k) * static_cast<double>(k);
  }
  json summary{{"epsilon", eps}, {"msd_slope", num / den}};
  if (space.kind() == SpaceKind::Euclidean) {
    double n = space.dim();
    summary["expected_step_msq"] = eps * eps * n / (n + 2.0);
  }
  return summary;
}

json run_compat(const ExperimentConfig& cfg, const Space& space, Table& table) {
  DilationStructure ds(space);
  Point x = cfg.base_point.value_or(space.origin());
  Partition part =
      Partition::chart_box(space, x, ds.chart_radius(), cfg.partition_cells);
  bool strict = is_continuous(space);
  double tol1 = 3.0 * std::sqrt(static_cast<double>(part.cell_count()) /
                                static_cast<double>(cfg.samples));
  table.columns = {"epsilon", "comp1_defect", "comp2_defect", "tol_comp1"};
  double worst1 = 0.0;
  std::vector<std::pair<double, double>> comp2_pts;
  for (size_t i = 0; i < cfg.eps_ladder.size(); ++i) {
    double eps = cfg.eps_ladder[i];
    RngStream rng = derive_substream(cfg.seed, "compat/" + std::to_string(i));
    double c1 = comp1_defect(ds, x, eps, cfg.samples, part, rng);
    double c2 = comp2_defect(ds, x, eps, cfg.samples, rng);
    table.rows.push_back({eps, c1, c2, tol1});
    if (strict) {
      enforce(c1 <= tol1, "comp1 (kernel transport)", c1, tol1, {eps});
      enforce(c2 <= tol1, "comp2 (chart vs ball)", c2, tol1, {eps});
    }
    worst1 = std::max(worst1, c1);
    comp2_pts.emplace_back(eps, c2);
  }
  json summary{{"worst_comp1", worst1}};
  if (!strict) {
    // fit comp2 <= C * h / eps and report the constant
    double C = 0.0;
    for (const auto& [eps, c2] : comp2_pts)
      C = std::max(C, c2 * eps / space.spacing());
    summary["comp2_bound_constant"] = C;
  }
  return summary;
}

json run_drafts(const ExperimentConfig& cfg, const Space& space, Table& table) {
  DilationStructure ds(space);
  Point x = cfg.base_point.value_or(space.origin());
  Partition part =
      Partition::chart_box(space, x, ds.chart_radius(), cfg.partition_cells);
  bool strict = is_continuous(space);
  double tol_kernel = 0.02;
  table.columns = {"epsilon",      "mu",        "distance_sup", "dilation_sup",
                   "kernel_tv",    "tol_exact", "tol_kernel"};
  int rows = cfg.pairs;
  for (int i = 0; i < rows; ++i) {
    RngStream rng = derive_substream(cfg.seed, "drafts/" + std::to_string(i));
    double eps = std::exp2(-6.0 * rng.uniform());
    double mu = std::exp2(-6.0 * rng.uniform());
    double tol_exact = fp_exact_tol(space, 1.0 / (eps * mu));
    DraftsDefects d = multiple_drafts_defect(ds, x, eps, mu, cfg.samples / 100 + 1,
                                             cfg.samples, part, rng);
    table.rows.push_back({eps, mu, d.distance.sup, d.dilation.sup, d.kernel_tv,
                          tol_exact, tol_kernel});
    if (strict) {
      enforce(d.distance.sup <= tol_exact, "multiple-drafts distance",
              d.distance.sup, tol_exact, d.distance.worst_witness);
      enforce(d.dilation.sup <= tol_exact, "multiple-drafts dilation",
              d.dilation.sup, tol_exact, d.dilation.worst_witness);
      enforce(d.kernel_tv <= tol_kernel, "multiple-drafts kernel",
              d.kernel_tv, tol_kernel, {eps, mu});
    }
  }
  return {{"rows", rows}};
}

LinearMapCandidate load_candidate(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open candidate file: " + path);
  json j = json::parse(is);
  LinearMapCandidate cand;
  auto mat = j.at("matrix");
  cand.rows = static_cast<int>(mat.size());
  if (cand.rows < 1) throw ConfigError("candidate: empty matrix");
  for (const auto& row : mat) {
    if (row.size() != 3)
      throw ConfigError("candidate: each matrix row needs 3 entries");
    for (const auto& e : row) cand.m.push_back(e.get<double>());
  }
  return cand;
}

json witness_json(const PairWitness& w) {
  return {{"a", w.a}, {"b", w.b}, {"ratio", w.ratio}};
}

json run_distort(const ExperimentConfig& cfg, const Space&, Table& table,
                 bool* wrote_json_report) {
  if (cfg.candidate) {
    // audit mode: biLipschitz/rough constants of a user map plus its
    // morphism defects, emitted as a JSON report with witnesses inline
    LinearMapCandidate cand = load_candidate(*cfg.candidate);
    Space heis = Space::heisenberg();
    RngStream rng = derive_substream(cfg.seed, "distort/audit");
    std::vector<std::pair<Point, Point>> pairs;
    for (int i = 0; i < cfg.pairs; ++i)
      pairs.emplace_back(heis.sample_ball(heis.origin(), 1.0, rng),
                         heis.sample_ball(heis.origin(), 1.0, rng));
    PointMap map = [&cand](const Point& p) { return cand.apply(p); };
    Metric src = [&heis](const Point& a, const Point& b) {
      return heis.distance(a, b);
    };
    Metric tgt = euclid_dist;
    DistortionReport rep = bilipschitz_constants(map, pairs, src, tgt);
    auto [a, A] = rough_constants(map, pairs, src, tgt, rep.c, rep.C);
    RngStream mrng = derive_substream(cfg.seed, "distort/morphism");
    MorphismDefects md = morphism_defect(cand, cfg.samples, mrng);
    json report{{"c", rep.c},
                {"C", rep.C},
                {"a", a},
                {"A", A},
                {"distortion", rep.distortion()},
                {"degenerate_pairs", rep.degenerate_pairs},
                {"min_witness", witness_json(rep.min_witness)},
                {"max_witness", witness_json(rep.max_witness)},
                {"morphism_defect_sup", md.morphism.sup},
                {"commutation_defect_sup", md.commutation.sup}};
    write_json_output(cfg, report);
    *wrote_json_report = true;
    return {{"mode", "audit"}, {"distortion", rep.distortion()}};
  }

  RngStream rng = derive_substream(cfg.seed, "distort/scan");
  ScanResult scan = vertical_distortion_scan(cfg.eps_ladder, 2, 32, 40, rng);
  table.columns = {"scale", "best_distortion", "budget_exhausted"};
  for (const auto& p : scan.points)
    table.rows.push_back({p.scale, p.best_distortion,
                          p.budget_exhausted ? 1.0 : 0.0});
  json summary{{"mode", "scan"}};
  if (!scan.fit.points.empty() || scan.fit.exact) {
    summary["slope"] = scan.fit.slope;
    summary["r_squared"] = scan.fit.r_squared;
  }
  return summary;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig cfg;
  static const std::vector<std::string> known = {
      "experiment", "space",   "eps_ladder",      "samples",   "pairs",
      "steps",      "trajectories", "partition_cells", "seed",  "out",
      "format",     "scan",    "candidate",       "base_point"};
  for (const auto& [key, val] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config key: " + key);
    (void)val;
  }
  try {
    if (j.contains("experiment")) cfg.experiment = j["experiment"].get<std::string>();
    if (j.contains("space")) cfg.space = j["space"].get<std::string>();
    if (j.contains("eps_ladder"))
      cfg.eps_ladder = j["eps_ladder"].get<std::vector<double>>();
    if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
    if (j.contains("pairs")) cfg.pairs = j["pairs"].get<int>();
    if (j.contains("steps")) cfg.steps = j["steps"].get<int>();
    if (j.contains("trajectories")) cfg.trajectories = j["trajectories"].get<int>();
    if (j.contains("partition_cells"))
      cfg.partition_cells = j["partition_cells"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("scan")) cfg.scan = j["scan"].get<bool>();
    if (j.contains("candidate")) cfg.candidate = j["candidate"].get<std::string>();
    if (j.contains("base_point")) cfg.base_point = j["base_point"].get<Point>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value type: ") + e.what());
  }
  return cfg;
}

std::string ExperimentConfig::to_json_text() const {
  json j{{"experiment", experiment},
         {"space", space},
         {"eps_ladder", eps_ladder},
         {"samples", samples},
         {"pairs", pairs},
         {"steps", steps},
         {"trajectories", trajectories},
         {"partition_cells", partition_cells},
         {"seed", seed},
         {"out", out},
         {"format", format},
         {"scan", scan}};
  if (candidate) j["candidate"] = *candidate;
  if (base_point) j["base_point"] = *base_point;
  return j.dump(2);
}

void ExperimentConfig::validate() const {
  static const std::vector<std::string> experiments = {
      "axioms", "tangent", "walks", "compat", "groupoid", "drafts", "distort"};
  if (std::find(experiments.begin(), experiments.end(), experiment) ==
      experiments.end())
    throw ConfigError("unknown experiment: '" + experiment + "'");
  if (format != "csv" && format != "json")
    throw ConfigError("format must be csv or json");
  if (samples < 1 || pairs < 1 || steps < 1 || trajectories < 1 ||
      partition_cells < 1)
    throw ConfigError("all counts must be >= 1");
  if (eps_ladder.empty()) throw ConfigError("eps_ladder must not be empty");
  for (size_t i = 0; i < eps_ladder.size(); ++i) {
    if (!(eps_ladder[i] > 0.0))
      throw ConfigError("eps_ladder scales must be strictly positive");
    if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1]))
      throw ConfigError("eps_ladder must be strictly decreasing");
  }
  try {
    Space s = Space::parse(space);
    if (base_point && static_cast<int>(base_point->size()) != s.dim())
      throw ConfigError("base_point dimension mismatch");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunManifest run_experiment(const ExperimentConfig& raw) {
  ExperimentConfig cfg = raw;
  if (cfg.eps_ladder.empty()) cfg.eps_ladder = default_scale_ladder();
  if (cfg.out.empty()) cfg.out = cfg.experiment + "." + cfg.format;
  cfg.validate();

  Space space = Space::parse(cfg.space);
  auto t0 = std::chrono::steady_clock::now();

  Table table;
  json summary;
  bool wrote_json_report = false;
  try {
    if (cfg.experiment == "axioms") {
      summary = run_axioms(cfg, space, table);
    } else if (cfg.experiment == "groupoid") {
      summary = run_groupoid(cfg, space, table);
    } else if (cfg.experiment == "tangent") {
      try {
        summary = run_tangent(cfg, space, table);
      } catch (const WrongSpaceKind&) {
        throw ConfigError("tangent: grid spaces have no tangent reference");
      }
    } else if (cfg.experiment == "walks") {
      summary = run_walks(cfg, space, table);
    } else if (cfg.experiment == "compat") {
      summary = run_compat(cfg, space, table);
    } else if (cfg.experiment == "drafts") {
      summary = run_drafts(cfg, space, table);
    } else {
      summary = run_distort(cfg, space, table, &wrote_json_report);
    }
  } catch (const ExperimentFailure&) {
    throw;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ExperimentFailure(e.what());
  }

  if (!wrote_json_report) write_output(cfg, table);

  auto t1 = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.config_json = cfg.to_json_text();
  manifest.version = kVersion;
  manifest.wall_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  manifest.summary_json = summary.dump(2);

  json mj{{"config", json::parse(manifest.config_json)},
          {"version", manifest.version},
          {"wall_ms", manifest.wall_ms},
          {"summary", json::parse(manifest.summary_json)}};
  std::ofstream ms(cfg.out + ".manifest.json", std::ios::binary);
  if (ms) ms << mj.dump(2) << "\n";
  return manifest;
}

}  // namespace dilwalk
