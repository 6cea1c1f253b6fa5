// rotorbit -- exact analysis of rotation-pair holonomy on the torus.
//
// Subcommands: pair, verdict, minpoly, orbit, density, transport, catalog,
// tables.  All results are emitted as a JSON envelope (--json) or rendered
// from the same data as plain text.  Exit codes: 0 success, 2 usage/parse
// error, 3 exact-arithmetic domain error, 4 internal consistency failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rotorbit/catalog.hpp"
#include "rotorbit/density.hpp"
#include "rotorbit/holonomy.hpp"
#include "rotorbit/poly.hpp"
#include "rotorbit/rotation.hpp"
#include "rotorbit/scalar_io.hpp"
#include "rotorbit/tables.hpp"
#include "rotorbit/transport.hpp"
#include "rotorbit/version.hpp"

using nlohmann::ordered_json;
using namespace rotorbit;

namespace {

struct GlobalOptions {
  bool json = false;
  std::optional<std::uint64_t> seed;
  int cap = 10000;
  double tol = 1e-9;
};

struct TripletOptions {
  std::string tx, ty, phi;
  bool numeric = false;

  Triplet parse() const {
    CosPhi cos_phi = parse_phi();
    if (!numeric) {
      Angle ax = parse_angle(tx), ay = parse_angle(ty);
      if (ax.q() == 0 || ax.q() > 1 || ay.q() == 0 || ay.q() > 1)
        throw invalid_triplet("exact-mode angles must lie in (0, 1] (multiples of pi); got (" +
                              tx + ", " + ty + ")");
      return Triplet::exact(ax, ay, cos_phi);
    }
    return Triplet::numeric(std::stod(tx), std::stod(ty), cos_phi);
  }

  CosPhi parse_phi() const {
    try {
      return cosphi_from_token(phi);
    } catch (const error&) {
      if (numeric) return CosPhi::numeric(std::stod(phi));
      throw;
    }
  }
};

void add_triplet_options(CLI::App* cmd, TripletOptions& t) {
  cmd->add_option("--tx", t.tx, "theta_x as p/q (multiple of pi); radians with --numeric")
      ->required();
  cmd->add_option("--ty", t.ty, "theta_y as p/q (multiple of pi); radians with --numeric")
      ->required();
  cmd->add_option("--phi", t.phi,
                  "cos(phi): 0, p/q, sqrt(p/q), or phi23 phi25_1 phi25_2 phi33 "
                  "phi35_1 phi35_2 phi55")
      ->required();
  cmd->add_flag("--numeric", t.numeric, "arbitrary radian angles, numeric evaluation only");
}

ordered_json matrix_json(const Mat3& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < 3; ++i) rows.push_back({m[i][0], m[i][1], m[i][2]});
  return rows;
}

ordered_json matrix_json(const Mat4& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < 4; ++i) rows.push_back({m[i][0], m[i][1], m[i][2], m[i][3]});
  return rows;
}

ordered_json vec_json(const Vec3& v) { return {v.x, v.y, v.z}; }

ordered_json poly_json(const RationalPoly& p) {
  ordered_json coeffs = ordered_json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(rational_to_string(c));
  return {{"coeffs_lowest_first", coeffs}, {"degree", p.degree()}, {"text", p.str()}};
}

ordered_json triplet_json(const Triplet& t) {
  ordered_json j;
  if (t.is_exact()) {
    j["theta_x"] = angle_to_string(t.theta_x());
    j["theta_y"] = angle_to_string(t.theta_y());
  } else {
    j["theta_x_rad"] = t.theta_x_rad();
    j["theta_y_rad"] = t.theta_y_rad();
  }
  j["phi"] = t.phi().token();
  j["mode"] = t.is_exact() ? "exact" : "numeric";
  return j;
}

void render_text(const ordered_json& j, std::ostream& os, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      os << pad << key << ":\n";
      render_text(value, os, indent + 2);
    } else if (value.is_array() && !value.empty() && value.front().is_array()) {
      os << pad << key << ":\n";
      for (const auto& row : value) os << pad << "  " << row.dump() << "\n";
    } else if (value.is_array() && value.size() > 12) {
      os << pad << key << ": [" << value.size() << " entries]\n";
    } else {
      os << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
         << "\n";
    }
  }
}

class Reporter {
 public:
  Reporter(const GlobalOptions& opts, std::string command)
      : opts_(opts), command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

  void set_input(const std::string& key, const ordered_json& value) { inputs_[key] = value; }

  int emit(const ordered_json& result) const {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
    ordered_json envelope;
    envelope["command"] = command_;
    envelope["version"] = kVersion;
    envelope["inputs"] = inputs_;
    envelope["result"] = result;
    envelope["elapsed_ms"] = elapsed;
    if (opts_.json) {
      std::cout << envelope.dump(2) << "\n";
    } else {
      std::cout << "rotorbit " << command_ << " (v" << kVersion << ", " << elapsed << " ms)\n";
      render_text(result, std::cout);
    }
    return 0;
  }

 private:
  const GlobalOptions& opts_;
  std::string command_;
  ordered_json inputs_ = ordered_json::object();
  std::chrono::steady_clock::time_point start_;
};

void write_points_csv(const std::string& path, const std::vector<Vec3>& pts) {
  std::ofstream out(path);
  if (!out) throw error("cannot write '" + path + "'");
  out << "x,y,z\n";
  out.precision(17);
  for (const auto& p : pts) out << p.x << "," << p.y << "," << p.z << "\n";
}

// ---------------------------------------------------------------- commands

int cmd_pair(const GlobalOptions& g, const TripletOptions& topt) {
  Reporter report(g, "pair");
  Triplet t = topt.parse();
  report.set_input("triplet", triplet_json(t));

  auto pair = build_pair(t);
  ordered_json result;
  result["cx"] = matrix_json(pair.x.matrix());
  result["cy"] = matrix_json(pair.y.matrix());
  if (t.is_exact()) result["trace_exact"] = mq_to_string(trace_product_exact(t));
  result["trace_numeric"] = trace_product_numeric(t);
  auto ax = axis_angle(pair.x), ay = axis_angle(pair.y);
  result["axis_cx"] = {{"axis", vec_json(ax.axis)}, {"angle_rad", ax.angle}};
  result["axis_cy"] = {{"axis", vec_json(ay.axis)}, {"angle_rad", ay.angle}};
  result["traces_agree"] = product_traces_agree(pair);
  try {
    result["axes_independent"] = product_axes_independent(pair);
  } catch (const excluded_case&) {
    result["axes_independent"] = "excluded (both generators are half-turns)";
  }
  return report.emit(result);
}

int cmd_verdict(const GlobalOptions& g, const TripletOptions& topt) {
  Reporter report(g, "verdict");
  Triplet t = topt.parse();
  report.set_input("triplet", triplet_json(t));

  ComplexityVerdict v = complexity_verdict(t);
  ordered_json result;
  if (v.trace) result["trace_exact"] = mq_to_string(*v.trace);
  if (!v.min_poly.is_zero()) result["min_poly"] = poly_json(v.min_poly);
  switch (v.kind) {
    case ComplexityVerdict::Kind::InfiniteCertified:
      result["verdict"] = "InfiniteCertified";
      break;
    case ComplexityVerdict::Kind::FiniteCandidate:
      result["verdict"] = "FiniteCandidate";
      result["root_of_unity_order"] = v.root_order;
      break;
    case ComplexityVerdict::Kind::Inconclusive:
      result["verdict"] = "Inconclusive";
      result["note"] = v.note;
      break;
  }
  return report.emit(result);
}

int cmd_minpoly(const GlobalOptions& g, long long n) {
  Reporter report(g, "minpoly");
  report.set_input("n", n);
  RationalPoly f = cos_minpoly(n);
  RationalPoly fz = symmetric_substitute(f);
  RootOfUnityVerdict rou = is_cyclotomic(fz);
  ordered_json result;
  result["delta"] = f.degree();
  result["cos_min_poly"] = poly_json(f);
  result["dyadic_structure"] = has_dyadic_structure(f);
  result["eigenvalue_min_poly"] = poly_json(fz);
  result["palindromic"] = fz.is_palindromic();
  result["verdict"] = rou.is_root_of_unity ? "RootOfUnity" : "NotRootOfUnity";
  if (rou.is_root_of_unity) result["root_of_unity_order"] = rou.order;
  return report.emit(result);
}

int cmd_orbit(const GlobalOptions& g, const TripletOptions& topt, const std::string& point_str,
              const std::string& csv_path, bool with_words) {
  Reporter report(g, "orbit");
  Triplet t = topt.parse();
  report.set_input("triplet", triplet_json(t));
  report.set_input("cap", g.cap);
  report.set_input("tol", g.tol);

  Vec3 p = kP1;
  if (!point_str.empty()) {
    auto parts = detail::split(point_str, ',');
    if (parts.size() != 3) throw parse_error("--point expects x,y,z");
    p = Vec3{std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])}.normalized();
  }
  report.set_input("point", vec_json(p));

  auto pair = build_pair(t);
  GroupClosure closure = close_group({pair.x, pair.y}, g.cap, g.tol);
  ordered_json result;
  result["status"] = closure.complete() ? "Complete" : "CapExceeded";
  result["order"] = closure.order();
  if (closure.complete()) {
    try {
      result["label"] = classify_finite(closure).str();
    } catch (const unrecognized_group& e) {
      result["label"] = nullptr;
      result["label_note"] = e.what();
    }
    OrbitSet o = orbit(closure, p);
    ordered_json pts = ordered_json::array();
    for (const auto& q : o.points) pts.push_back(vec_json(q));
    result["orbit_size"] = o.size();
    result["orbit_points"] = pts;
    if (!csv_path.empty()) {
      write_points_csv(csv_path, o.points);
      result["csv"] = csv_path;
    }
  }
  if (with_words) {
    ordered_json words = ordered_json::array();
    for (const auto& e : closure.elements) words.push_back(e.word);
    result["words"] = words;
  }
  return report.emit(result);
}

int cmd_density(const GlobalOptions& g, const TripletOptions& topt, const std::string& mode,
                int kmax, int samples, int max_length, int count, double resolution,
                const std::string& csv_path) {
  Reporter report(g, "density");
  if (!g.seed) throw parse_error("density requires --seed for reproducible reports");
  Triplet t = topt.parse();
  report.set_input("triplet", triplet_json(t));
  report.set_input("mode", mode);
  report.set_input("resolution_deg", resolution);
  report.set_input("seed", *g.seed);

  auto pair = build_pair(t);
  WordOrbit orbit;
  int max_word_length = 0;
  if (mode == "sweep") {
    report.set_input("k_max", kmax);
    report.set_input("samples_per_circle", samples);
    orbit = alternating_sweep(pair, kP1, kmax, samples);
    // each sweep level multiplies by one product word of length 2
    max_word_length = 2 * kmax * samples;
  } else if (mode == "random") {
    report.set_input("max_length", max_length);
    report.set_input("count", count);
    orbit = random_word_orbit(pair, max_length, count, *g.seed);
    max_word_length = max_length;
  } else {
    throw parse_error("--mode must be sweep or random");
  }

  SphereGrid grid(resolution);
  CoverageReport cov = coverage(orbit.points, grid, {max_word_length, *g.seed});
  ordered_json result;
  result["coverage"] = {{"resolution_deg", cov.resolution_deg},
                        {"cells_total", cov.cells_total},
                        {"cells_hit", cov.cells_hit},
                        {"fraction", cov.fraction},
                        {"points_generated", cov.points_generated},
                        {"max_word_length", cov.max_word_length},
                        {"seed", cov.seed}};
  if (!csv_path.empty()) {
    write_points_csv(csv_path, orbit.points);
    result["csv"] = csv_path;
  }
  return report.emit(result);
}

int cmd_transport(const GlobalOptions& g, const TripletOptions& topt, const std::string& curve_str,
                  const std::string& bx_str, const std::string& by_str) {
  Reporter report(g, "transport");
  Triplet t = topt.parse();
  report.set_input("triplet", triplet_json(t));
  report.set_input("curve", curve_str);

  auto parse_twist = [](const std::string& s) -> std::optional<Vec4> {
    if (s.empty()) return std::nullopt;
    auto parts = detail::split(s, ',');
    if (parts.size() != 4) throw parse_error("twist expects b1,b2,b3,b4");
    Vec4 b{std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]), std::stod(parts[3])};
    double n = vec4_norm(b);
    for (auto& x : b) x /= n;
    return b;
  };

  auto pair = build_pair(t);
  NormalPolygonalCurve curve = NormalPolygonalCurve::parse(curve_str);
  ConnectionSpec conn = build_connection(pair.x, pair.y, parse_twist(bx_str), parse_twist(by_str));

  SO4Matrix frame = transport(conn, curve);
  Rotation3 hol = holonomy_of_curve(conn, curve);

  // cross-module consistency: the same word multiplied out in SO(3)
  Mat3 word = matrix_identity<3>();
  for (const auto& mv : curve.moves) {
    Mat3 base = (mv.axis == 'x') ? pair.x.matrix() : pair.y.matrix();
    Mat3 powered = detail::matrix_pow(mv.steps > 0 ? base : transposed(base),
                                      std::abs(mv.steps));
    word = word * powered;
  }
  double deviation = max_abs_diff(hol.matrix(), word);

  ordered_json result;
  result["p1"] = matrix_json(conn.p1.matrix());
  result["p2"] = matrix_json(conn.p2.matrix());
  result["frame_transport"] = matrix_json(frame.matrix());
  result["holonomy"] = matrix_json(hol.matrix());
  result["word_product"] = matrix_json(word);
  result["max_deviation"] = deviation;
  int rc = report.emit(result);
  if (deviation > 1e-9)
    throw consistency_error("curve holonomy deviates from the word product by " +
                            std::to_string(deviation));
  return rc;
}

int cmd_catalog(const GlobalOptions& g, const std::string& path) {
  Reporter report(g, "catalog");
  report.set_input("file", path);
  report.set_input("cap", g.cap);
  report.set_input("tol", g.tol);
  auto entries = load_catalog(path);
  CatalogReport cat = catalog_verify(entries, g.cap, g.tol);
  ordered_json lines = ordered_json::array();
  for (const auto& line : cat.lines) {
    lines.push_back({{"id", line.id},
                     {"expected", line.expected_label.str()},
                     {"expected_order", line.expected_order},
                     {"complete", line.complete},
                     {"order", line.order},
                     {"label", line.complete ? line.label.str() : ""},
                     {"pass", line.pass}});
  }
  ordered_json result;
  result["entries"] = entries.size();
  result["failures"] = cat.failures;
  result["lines"] = lines;
  int rc = report.emit(result);
  if (cat.failures > 0)
    throw consistency_error(std::to_string(cat.failures) + " catalog entries failed");
  return rc;
}

int cmd_tables(const GlobalOptions& g, const std::string& golden_path) {
  Reporter report(g, "tables");
  report.set_input("golden", golden_path);
  auto rows = compute_all_case_rows();
  GoldenTable golden = load_golden_table(golden_path);
  auto diffs = diff_against_golden(rows, golden);

  ordered_json row_json = ordered_json::array();
  for (const auto& r : rows) {
    row_json.push_back({{"id", r.id},
                        {"theta_x", rational_to_string(r.spec.tx)},
                        {"theta_y", rational_to_string(r.spec.ty)},
                        {"phi", r.spec.phi_token},
                        {"trace", mq_to_string(r.trace)},
                        {"fzeta", r.min_poly.str()},
                        {"degree", r.degree},
                        {"root_of_unity", r.root_of_unity.is_root_of_unity}});
  }
  ordered_json quad = ordered_json::array();
  for (const auto& a : quadratic_noncyclotomic_coeffs(rows)) quad.push_back(rational_to_string(a));
  ordered_json quart = ordered_json::array();
  for (const auto& [a, b] : quartic_noncyclotomic_pairs(rows))
    quart.push_back({rational_to_string(a), rational_to_string(b)});

  ordered_json result;
  result["rows"] = row_json;
  result["quadratic_noncyclotomic"] = quad;
  result["quartic_noncyclotomic"] = quart;
  result["diffs"] = diffs;
  result["pass"] = diffs.empty();
  int rc = report.emit(result);
  if (!diffs.empty())
    throw consistency_error("case table regeneration produced " + std::to_string(diffs.size()) +
                            " diffs");
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rotation-pair holonomy analysis"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_flag("--json", g.json, "emit the machine-readable JSON envelope");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "seed for randomized generation");
  app.add_option("--cap", g.cap, "group-closure element cap")->capture_default_str();
  app.add_option("--tol", g.tol, "numeric dedup tolerance")->capture_default_str();

  TripletOptions t_pair, t_verdict, t_orbit, t_density, t_transport;

  auto* pair_cmd = app.add_subcommand("pair", "rotation pair, traces, axes and checks");
  add_triplet_options(pair_cmd, t_pair);

  auto* verdict_cmd =
      app.add_subcommand("verdict", "minimal polynomial and complexity certification");
  add_triplet_options(verdict_cmd, t_verdict);

  auto* minpoly_cmd = app.add_subcommand("minpoly", "prime-denominator eigenvalue pipeline");
  long long minpoly_n = 0;
  minpoly_cmd->add_option("--n", minpoly_n, "odd prime angle denominator")->required();

  auto* orbit_cmd = app.add_subcommand("orbit", "group closure and point orbit");
  add_triplet_options(orbit_cmd, t_orbit);
  std::string orbit_point, orbit_csv;
  bool orbit_words = false;
  orbit_cmd->add_option("--point", orbit_point, "orbit seed point x,y,z (default 1,0,0)");
  orbit_cmd->add_option("--csv", orbit_csv, "write orbit points as CSV");
  orbit_cmd->add_flag("--words", orbit_words, "include shortest generator words");

  auto* density_cmd = app.add_subcommand("density", "sphere coverage of word orbits");
  add_triplet_options(density_cmd, t_density);
  std::string density_mode = "sweep", density_csv;
  int density_kmax = 4, density_samples = 350, density_maxlen = 40, density_count = 100000;
  double density_res = 5.0;
  density_cmd->add_option("--mode", density_mode, "sweep | random")->capture_default_str();
  density_cmd->add_option("--kmax", density_kmax, "sweep rounds")->capture_default_str();
  density_cmd->add_option("--samples", density_samples, "samples per circle")
      ->capture_default_str();
  density_cmd->add_option("--max-length", density_maxlen, "random-word length bound")
      ->capture_default_str();
  density_cmd->add_option("--count", density_count, "random-word count")->capture_default_str();
  density_cmd->add_option("--res", density_res, "grid resolution in degrees")
      ->capture_default_str();
  density_cmd->add_option("--csv", density_csv, "write generated points as CSV");

  auto* transport_cmd = app.add_subcommand("transport", "parallel transport along a curve");
  add_triplet_options(transport_cmd, t_transport);
  std::string curve_str, bx_str, by_str;
  transport_cmd->add_option("--curve", curve_str, "moves like x+1,y-2")->required();
  transport_cmd->add_option("--bx", bx_str, "x-period twist as b1,b2,b3,b4 (normalized)");
  transport_cmd->add_option("--by", by_str, "y-period twist as b1,b2,b3,b4 (normalized)");

  auto* catalog_cmd = app.add_subcommand("catalog", "verify the finite-pair catalog");
  std::string catalog_path = default_catalog_path();
  catalog_cmd->add_option("--file", catalog_path, "catalog file")->capture_default_str();

  auto* tables_cmd = app.add_subcommand("tables", "regenerate and diff the case table");
  std::string golden_path = default_case_table_path();
  tables_cmd->add_option("--golden", golden_path, "case table file")->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }
  if (seed_opt->count() > 0) g.seed = seed_value;

  try {
    if (pair_cmd->parsed()) return cmd_pair(g, t_pair);
    if (verdict_cmd->parsed()) return cmd_verdict(g, t_verdict);
    if (minpoly_cmd->parsed()) return cmd_minpoly(g, minpoly_n);
    if (orbit_cmd->parsed()) return cmd_orbit(g, t_orbit, orbit_point, orbit_csv, orbit_words);
    if (density_cmd->parsed())
      return cmd_density(g, t_density, density_mode, density_kmax, density_samples,
                         density_maxlen, density_count, density_res, density_csv);
    if (transport_cmd->parsed()) return cmd_transport(g, t_transport, curve_str, bx_str, by_str);
    if (catalog_cmd->parsed()) return cmd_catalog(g, catalog_path);
    if (tables_cmd->parsed()) return cmd_tables(g, golden_path);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const invalid_triplet& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad numeric literal: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const consistency_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
