#include "qweb/commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>

#include "qweb/classical.hpp"
#include "qweb/errors.hpp"
#include "qweb/floquet.hpp"
#include "qweb/husimi.hpp"
#include "qweb/io.hpp"

namespace qweb::cli {

using io::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// The payload is deterministic; the run timestamp lives in a sidecar file.
void emit_file(const std::string& path, const std::string& content) {
  io::write_atomic(path, content);
  const json meta = {{"generated_utc", utc_timestamp()}, {"tool", "qweb"}, {"version", kToolVersion}};
  io::write_atomic(path + ".meta.json", meta.dump(2) + "\n");
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& content) {
  if (cfg.out.empty()) out << content;
  else emit_file(cfg.out, content);
}

std::string suffixed(const std::string& path, const std::string& label) {
  const std::filesystem::path p(path);
  auto name = p.stem().string() + "_" + label + p.extension().string();
  return (p.parent_path() / name).string();
}

json base_doc(const char* command, const RunConfig& cfg) {
  return {{"command", command}, {"config", cfg.to_json()}};
}

PolarGrid grid_for(const RunConfig& cfg, const Cell& cell) {
  PolarGrid grid = default_grid(cfg.params, cell);
  const double r_max = cfg.r_max > 0.0 ? cfg.r_max : grid.r_values.back();
  const int n_phi = cfg.n_phi > 0 ? cfg.n_phi : grid.n_phi;
  return PolarGrid::uniform(r_max, cfg.n_r, n_phi);
}

double pairing_defect(const std::vector<QEState>& states) {
  double worst = 0.0;
  const std::size_t n = states.size();
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(states[i].energy + states[n - 1 - i].energy));
  return worst;
}

double overlap(const QEState& a, const QEState& b) {
  double dot = 0.0;
  for (std::size_t j = 0; j < a.coeffs.size(); ++j) dot += a.coeffs[j] * b.coeffs[j];
  return std::abs(dot);
}

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

struct LobeCheck {
  double max_radius_rel_error = 0.0;
  double interleave_error_deg = 0.0;
};

LobeCheck check_lobes(const std::vector<Maximum>& upper, const std::vector<Maximum>& lower, int mu, double r_e) {
  LobeCheck c;
  for (const auto* list : {&upper, &lower})
    for (const auto& m : *list) c.max_radius_rel_error = std::max(c.max_radius_rel_error, std::abs(m.r - r_e) / r_e);
  const double expected = kPi / mu;
  for (const auto& l : lower) {
    double nearest = kTwoPi;
    for (const auto& u : upper) nearest = std::min(nearest, circular_distance(l.phi, u.phi));
    c.interleave_error_deg = std::max(c.interleave_error_deg, std::abs(nearest - expected) * 180.0 / kPi);
  }
  return c;
}

struct Selected {
  Cell cell;
  std::vector<QEState> states;
};

Selected solve_selected(const RunConfig& cfg) {
  Selected sel;
  sel.cell = find_cell(cfg.params, cfg.ladder, cfg.cell);
  sel.states = solve_cell(build_cell_hamiltonian(cfg.params, sel.cell));
  return sel;
}

json field_summary(const HusimiField& field, const RunConfig& cfg) {
  json j;
  try {
    const auto maxima = find_maxima(field);
    j["maxima"] = io::to_json(maxima);
    j["maxima_count"] = maxima.size();
  } catch (const NumericError& e) {
    j["maxima"] = json::array();
    j["maxima_count"] = 0;
    j["maxima_error"] = e.what();
  }
  json sym;
  for (int fold : {cfg.effective_fold(), cfg.effective_wrong_fold(), 2 * cfg.params.mu}) {
    try {
      sym["fold_" + std::to_string(fold)] = rotational_symmetry_error(field, fold);
    } catch (const ConfigError& e) {
      sym["fold_" + std::to_string(fold)] = nullptr;
    }
  }
  j["symmetry_error"] = sym;
  try {
    j["normalization_integral"] = normalization_integral(field);
  } catch (const ConfigError& e) {
    j["normalization_integral"] = nullptr;
    j["normalization_error"] = e.what();
  }
  j["normalization_target"] = cfg.params.hbar0;
  if (field.grid.n_phi % 2 == 0) j["mirror_x_defect"] = mirror_x_defect(field);
  j["mirror_p_defect"] = mirror_p_defect(field);
  j["radial_peak"] = radial_peak(field);
  j["peak_value"] = field.peak();
  return j;
}

json field_values(const HusimiField& field) {
  return json(field.values);
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  if (ladder < 0 || ladder >= params.mu) throw ConfigError("--ladder must lie in [0, mu)");
  if (cell < 1) throw ConfigError("--cell must be >= 1");
  if (state != "upper" && state != "lower" && state != "all") throw ConfigError("--state must be upper, lower or all");
  if (fock > params.n_max) throw ConfigError("--fock exceeds --nmax");
  if (edge_count < 1) throw ConfigError("--edge-count must be >= 1");
  if (r_max < 0.0) throw ConfigError("--r-max must be >= 0 (0 selects the default)");
  if (n_r < 2) throw ConfigError("--nr must be >= 2");
  if (n_phi != 0 && n_phi < 4) throw ConfigError("--nphi must be >= 4 (0 selects the default)");
  if (periods < 1) throw ConfigError("--periods must be >= 1");
  if (steps_per_period < 16) throw ConfigError("--steps-per-period must be >= 16");
  if (ic_rings < 1 || ic_angles < 1) throw ConfigError("--ic-rings and --ic-angles must be >= 1");
  if (!(ic_r_min >= 0.0)) throw ConfigError("--ic-rmin must be >= 0");
  if (bins < 2) throw ConfigError("--bins must be >= 2");
  if (fold < 0 || wrong_fold < 0) throw ConfigError("folds must be >= 1 (0 selects the default)");
  if (!(eps_classical >= 0.0)) throw ConfigError("--eps-classical must be >= 0");
  if (!(max_classical_error >= 0.0) || !(min_ratio >= 0.0) || !(radius_tol >= 0.0) || !(angle_tol_deg >= 0.0) ||
      !(parity_tol >= 0.0))
    throw ConfigError("thresholds must be nonnegative");
  if (format != "csv" && format != "json" && format != "pgm") throw ConfigError("--format must be csv, json or pgm");
  if (pgm_size < 2) throw ConfigError("--pgm-size must be >= 2");
  if (workers < 0) throw ConfigError("--workers must be >= 0");
}

int RunConfig::effective_fold() const { return fold > 0 ? fold : params.mu; }

int RunConfig::effective_wrong_fold() const {
  if (wrong_fold > 0) return wrong_fold;
  return params.mu >= 3 ? params.mu - 1 : params.mu + 1;
}

json RunConfig::to_json() const {
  return {{"params", io::to_json(params)},
          {"ladder", ladder},
          {"cell", cell},
          {"state", state},
          {"fock", fock},
          {"s", s},
          {"edge_count", edge_count},
          {"r_max", r_max},
          {"nr", n_r},
          {"nphi", n_phi},
          {"periods", periods},
          {"steps_per_period", steps_per_period},
          {"ic_file", ic_file},
          {"ic_rings", ic_rings},
          {"ic_angles", ic_angles},
          {"ic_rmin", ic_r_min},
          {"bins", bins},
          {"check_reversibility", check_reversibility},
          {"fold", effective_fold()},
          {"wrong_fold", effective_wrong_fold()},
          {"eps_classical", eps_classical},
          {"max_classical_error", max_classical_error},
          {"min_ratio", min_ratio},
          {"radius_tol", radius_tol},
          {"angle_tol_deg", angle_tol_deg},
          {"parity_tol", parity_tol},
          {"format", format},
          {"pgm_size", pgm_size}};
}

int cmd_cells(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  if (cfg.format != "json") throw ConfigError("cells only supports --format json");
  const int m_max = max_scan_index(cfg.params, cfg.ladder);
  const auto cells = cell_boundaries(cfg.params, cfg.ladder, m_max);
  json doc = base_doc("cells", cfg);
  doc["cells"] = json::array();
  for (const auto& c : cells) doc["cells"].push_back(io::to_json(c, cfg.params.hbar0));
  doc["scan"] = {{"m_max", m_max}, {"n_max_scanned", cfg.ladder + cfg.params.mu * m_max}};
  doc["truncated_scan"] = !cells.empty() && cells.back().truncated;
  emit(cfg, out, doc.dump(2) + "\n");
  return kSuccess;
}

int cmd_qe(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  if (cfg.format != "json") throw ConfigError("qe only supports --format json");
  const auto sel = solve_selected(cfg);
  const auto pair = ground_states(sel.states);

  json doc = base_doc("qe", cfg);
  doc["cell"] = io::to_json(sel.cell, cfg.params.hbar0);
  json energies = json::array();
  for (const auto& s : sel.states) energies.push_back(s.energy);
  doc["energies"] = energies;
  doc["energy_units"] = "hbar*omega";
  doc["ground"] = {{"upper", io::state_json(pair.upper)}, {"lower", io::state_json(pair.lower)}};
  doc["parity"] = {{"pairing_defect", pairing_defect(sel.states)},
                   {"upper_to_lower_overlap", overlap(parity_transform(pair.upper), pair.lower)}};
  try {
    const auto ansatz = gaussian_ansatz(cfg.params, sel.cell);
    doc["ansatz"] = io::to_json(ansatz, cfg.params);
    doc["gaussian_overlap"] = {{"upper", gaussian_overlap(pair.upper, ansatz)},
                               {"lower", gaussian_overlap(parity_transform(pair.lower), ansatz)}};
  } catch (const std::exception& e) {
    doc["ansatz"] = nullptr;
    doc["ansatz_error"] = e.what();
  }
  if (static_cast<std::size_t>(cfg.edge_count) + 1 <= sel.states.size()) {
    const auto sp = edge_spacing(sel.states, cfg.edge_count);
    doc["edge_spacing"] = {{"count", cfg.edge_count}, {"mean", sp.mean}, {"rel_std", sp.rel_std}};
  } else {
    doc["edge_spacing"] = nullptr;
  }
  emit(cfg, out, doc.dump(2) + "\n");
  return kSuccess;
}

int cmd_husimi(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const Cell cell = find_cell(cfg.params, cfg.ladder, cfg.cell);
  PolarGrid grid = grid_for(cfg, cell);
  if (cfg.fock >= 0 && cfg.r_max == 0.0) {
    const double needed = std::sqrt(2.0 * cfg.params.hbar0 * cfg.fock) + 8.0 * std::sqrt(cfg.params.hbar0);
    if (needed > grid.r_values.back()) grid = PolarGrid::uniform(needed, cfg.n_r, grid.n_phi);
  }

  std::vector<std::pair<std::string, HusimiField>> fields;
  std::optional<GaussianAnsatz> ansatz;
  if (cfg.fock >= 0) {
    const auto fock = fock_basis_state(cfg.params.n_max, cfg.fock);
    fields.emplace_back("fock" + std::to_string(cfg.fock),
                        husimi_field(cfg.params, fock, grid, StroboPhase{cfg.params.mu, cfg.s}, cfg.workers));
  } else {
    const auto states = solve_cell(build_cell_hamiltonian(cfg.params, cell));
    const auto pair = ground_states(states);
    if (cfg.state != "lower") fields.emplace_back("upper", husimi_qe(cfg.params, pair.upper, grid, cfg.s, cfg.workers));
    if (cfg.state != "upper") fields.emplace_back("lower", husimi_qe(cfg.params, pair.lower, grid, cfg.s, cfg.workers));
    try {
      ansatz = gaussian_ansatz(cfg.params, cell);
    } catch (const std::exception&) {
      ansatz.reset();
    }
  }

  json doc = base_doc("husimi", cfg);
  doc["cell"] = io::to_json(cell, cfg.params.hbar0);
  doc["grid"] = {{"r_max", grid.r_values.back()}, {"nr", grid.n_r()}, {"nphi", grid.n_phi}};
  if (ansatz) doc["ansatz"] = io::to_json(*ansatz, cfg.params);
  json summaries = json::object();
  for (const auto& [label, field] : fields) {
    json s = field_summary(field, cfg);
    s["strobo_index"] = field.strobo_index;
    if (ansatz && (label == "upper" || label == "lower")) {
      const auto branch = label == "upper" ? Branch::kUpper : Branch::kLower;
      const auto factored = factored_field(cfg.params, *ansatz, grid, branch);
      const double band = std::sqrt(cfg.params.hbar0);
      s["factorization_defect"] = peak_normalized_difference(field, factored, ansatz->r_e - band, ansatz->r_e + band);
    }
    summaries[label] = s;
  }
  if (fields.size() == 2) {
    const auto& up = fields[0].second;
    const auto& lo = fields[1].second;
    json pairj;
    try {
      pairj["rotation_defect"] = rotation_pair_defect(up, lo, kPi / cfg.params.mu);
    } catch (const ConfigError&) {
      pairj["rotation_defect"] = nullptr;
    }
    HusimiField combined = up;
    for (std::size_t k = 0; k < combined.values.size(); ++k) combined.values[k] += lo.values[k];
    try {
      pairj["combined_fold_2mu"] = rotational_symmetry_error(combined, 2 * cfg.params.mu);
    } catch (const ConfigError&) {
      pairj["combined_fold_2mu"] = nullptr;
    }
    doc["pair"] = pairj;
  }
  doc["fields"] = summaries;

  if (cfg.format == "json") {
    json values = json::object();
    for (const auto& [label, field] : fields) values[label] = field_values(field);
    doc["values"] = values;
    doc["values_layout"] = "row-major [r][phi], phi_j = 2 pi j / nphi, r_i = r_max i / (nr - 1)";
    emit(cfg, out, doc.dump() + "\n");
    return kSuccess;
  }

  if (cfg.out.empty() && fields.size() > 1) throw ConfigError("--state all with csv/pgm output needs --out");
  for (const auto& [label, field] : fields) {
    const std::string content = cfg.format == "csv" ? io::husimi_csv(field)
                                                    : io::husimi_pgm(field, cfg.pgm_size, cfg.pgm_size);
    if (cfg.out.empty()) {
      out << content;
      return kSuccess;
    }
    emit_file(fields.size() > 1 ? suffixed(cfg.out, label) : cfg.out, content);
  }
  out << doc.dump(2) << "\n";
  return kSuccess;
}

int cmd_classical(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  std::vector<ClassicalState> initials;
  if (!cfg.ic_file.empty()) {
    std::ifstream f(cfg.ic_file);
    if (!f) throw ConfigError("cannot read --ic-file " + cfg.ic_file);
    initials = io::read_initial_conditions(f);
    if (initials.empty()) throw ConfigError("--ic-file contains no initial conditions");
  } else {
    initials = default_initial_conditions(cfg.params, cfg.ic_rings, cfg.ic_angles, cfg.ic_r_min);
  }
  const auto sections = poincare_section(cfg.params, initials, cfg.periods, cfg.steps_per_period, cfg.workers);

  json report = {{"orbits", sections.orbits.size()},
                 {"points", sections.total_points()},
                 {"escaped", sections.escaped_count()}};
  if (sections.total_points() >= 1000) {
    json sym;
    for (int fold : {cfg.effective_fold(), cfg.effective_wrong_fold(), 2 * cfg.params.mu})
      sym["fold_" + std::to_string(fold)] = section_symmetry_error(sections, fold, cfg.bins);
    report["symmetry_error"] = sym;
    report["bins"] = cfg.bins;
  } else {
    report["symmetry_error"] = nullptr;
  }
  if (cfg.check_reversibility) {
    double worst = 0.0;
    const int n = std::min(cfg.periods, 100);
    for (const auto& ic : initials) {
      try {
        worst = std::max(worst, reversibility_defect(cfg.params, ic, n, cfg.steps_per_period));
      } catch (const EscapeError&) {
      }
    }
    report["reversibility"] = {{"periods", n}, {"max_defect", worst}, {"ok", worst < 1e-8}};
  }
  if (sections.escaped_count() > 0)
    err << "warning: " << sections.escaped_count() << " of " << sections.orbits.size()
        << " orbits left the escape radius\n";

  if (cfg.format == "pgm") throw ConfigError("classical supports --format csv or json");
  if (cfg.format == "csv") {
    emit(cfg, out, io::section_csv(sections));
    json summary = base_doc("classical", cfg);
    summary["report"] = report;
    (cfg.out.empty() ? err : out) << summary.dump(2) << "\n";
    return kSuccess;
  }
  json doc = base_doc("classical", cfg);
  doc["report"] = report;
  json orbits = json::array();
  for (std::size_t id = 0; id < sections.orbits.size(); ++id) {
    const auto& o = sections.orbits[id];
    orbits.push_back({{"orbit_id", id},
                      {"initial", {o.initial.x, o.initial.p}},
                      {"escaped", o.escaped},
                      {"escape_period", o.escape_period},
                      {"samples", o.samples}});
  }
  doc["orbits"] = orbits;
  emit(cfg, out, doc.dump() + "\n");
  return kSuccess;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const int mu = cfg.params.mu;
  const int fold = cfg.effective_fold();
  const int wrong = cfg.effective_wrong_fold();

  json checks = json::array();
  bool all_pass = true;
  auto check = [&](const std::string& name, double value, const std::string& relation, double threshold, bool pass) {
    checks.push_back({{"name", name}, {"value", value}, {"relation", relation}, {"threshold", threshold}, {"pass", pass}});
    all_pass = all_pass && pass;
  };

  // quantum side
  const auto sel = solve_selected(cfg);
  const auto pair = ground_states(sel.states);
  const auto ansatz = gaussian_ansatz(cfg.params, sel.cell);
  const PolarGrid grid = grid_for(cfg, sel.cell);
  const auto up = husimi_qe(cfg.params, pair.upper, grid, cfg.s, cfg.workers);
  const auto lo = husimi_qe(cfg.params, pair.lower, grid, cfg.s, cfg.workers);
  const auto max_up = find_maxima(up);
  const auto max_lo = find_maxima(lo);
  const auto lobes = check_lobes(max_up, max_lo, mu, ansatz.r_e);

  check("quantum.upper.maxima_count", static_cast<double>(max_up.size()), "==", mu, static_cast<int>(max_up.size()) == mu);
  check("quantum.lower.maxima_count", static_cast<double>(max_lo.size()), "==", mu, static_cast<int>(max_lo.size()) == mu);
  check("quantum.maxima_radius_rel_error", lobes.max_radius_rel_error, "<=", cfg.radius_tol,
        lobes.max_radius_rel_error <= cfg.radius_tol);
  check("quantum.interleave_error_deg", lobes.interleave_error_deg, "<=", cfg.angle_tol_deg,
        lobes.interleave_error_deg <= cfg.angle_tol_deg);
  for (const auto& [label, field] : {std::pair{"upper", &up}, std::pair{"lower", &lo}}) {
    const double e_fold = rotational_symmetry_error(*field, fold);
    const double e_wrong = rotational_symmetry_error(*field, wrong);
    const std::string base = std::string("quantum.") + label;
    check(base + ".fold_" + std::to_string(fold) + "_x_min_ratio", e_fold * cfg.min_ratio, "<=", e_wrong,
          e_fold * cfg.min_ratio <= e_wrong);
    check(base + ".mirror_x_defect", mirror_x_defect(*field), "<=", cfg.parity_tol,
          mirror_x_defect(*field) <= cfg.parity_tol);
  }
  const double pair_defect = rotation_pair_defect(up, lo, kPi / mu);
  check("quantum.lower_vs_rotated_upper", pair_defect, "<=", cfg.parity_tol, pair_defect <= cfg.parity_tol);
  HusimiField combined = up;
  for (std::size_t k = 0; k < combined.values.size(); ++k) combined.values[k] += lo.values[k];
  const double combined_err = rotational_symmetry_error(combined, 2 * mu);
  check("quantum.combined.fold_" + std::to_string(2 * mu), combined_err, "<=", cfg.parity_tol,
        combined_err <= cfg.parity_tol);

  // classical side
  Params classical = cfg.params;
  classical.eps = cfg.eps_classical;
  const auto initials = default_initial_conditions(classical, cfg.ic_rings, cfg.ic_angles, cfg.ic_r_min);
  const auto sections = poincare_section(classical, initials, cfg.periods, cfg.steps_per_period, cfg.workers);
  const double c_fold = section_symmetry_error(sections, fold, cfg.bins);
  const double c_wrong = section_symmetry_error(sections, wrong, cfg.bins);
  const double c_2mu = section_symmetry_error(sections, 2 * mu, cfg.bins);
  check("classical.fold_" + std::to_string(fold), c_fold, "<=", cfg.max_classical_error,
        c_fold <= cfg.max_classical_error);
  check("classical.fold_" + std::to_string(fold) + "_x_min_ratio", c_fold * cfg.min_ratio, "<=", c_wrong,
        c_fold * cfg.min_ratio <= c_wrong);

  json doc = base_doc("report", cfg);
  doc["quantum"] = {{"cell", io::to_json(sel.cell, cfg.params.hbar0)},
                    {"ansatz", io::to_json(ansatz, cfg.params)},
                    {"upper_maxima", io::to_json(max_up)},
                    {"lower_maxima", io::to_json(max_lo)},
                    {"symmetry_error",
                     {{"upper", {{"fold", rotational_symmetry_error(up, fold)}, {"wrong_fold", rotational_symmetry_error(up, wrong)}}},
                      {"lower", {{"fold", rotational_symmetry_error(lo, fold)}, {"wrong_fold", rotational_symmetry_error(lo, wrong)}}},
                      {"combined_2mu", combined_err}}}};
  doc["classical"] = {{"eps", classical.eps},
                      {"points", sections.total_points()},
                      {"escaped", sections.escaped_count()},
                      {"bins", cfg.bins},
                      {"symmetry_error", {{"fold", c_fold}, {"wrong_fold", c_wrong}, {"fold_2mu", c_2mu}}}};
  doc["checks"] = checks;
  doc["pass"] = all_pass;
  emit(cfg, out, doc.dump(2) + "\n");
  return all_pass ? kSuccess : kNumericFailure;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"qweb: quasienergy states, Husimi fields and stroboscopic sections of a resonantly driven oscillator"};
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
  app.require_subcommand(1, 1);

  app.add_option("--mu", cfg.params.mu, "resonance number");
  app.add_option("--eps", cfg.params.eps, "dimensionless perturbation");
  app.add_option("--hbar0", cfg.params.hbar0, "dimensionless Planck constant");
  app.add_option("--nmax", cfg.params.n_max, "Fock-basis truncation");
  app.add_option("--ladder", cfg.ladder, "ladder residue l (levels l + mu m)");
  app.add_option("--cell", cfg.cell, "cell index, counting outward from 1");
  app.add_option("--state", cfg.state, "upper | lower | all");
  app.add_option("--fock", cfg.fock, "use the Fock state |n0> instead of a QE state");
  app.add_option("--s", cfg.s, "stroboscopic index (t = sT)");
  app.add_option("--edge-count", cfg.edge_count, "number of band-edge gaps for the spacing report");
  app.add_option("--r-max", cfg.r_max, "outer grid radius (0 = 1.5 x outer cell radius)");
  app.add_option("--nr", cfg.n_r, "radial grid points");
  app.add_option("--nphi", cfg.n_phi, "angular grid points (0 = 120 mu)");
  app.add_option("--periods", cfg.periods, "wave periods per orbit");
  app.add_option("--steps-per-period", cfg.steps_per_period, "integrator substeps per wave period");
  app.add_option("--ic-file", cfg.ic_file, "initial conditions, one 'X P' per line");
  app.add_option("--ic-rings", cfg.ic_rings, "rings in the default initial-condition set");
  app.add_option("--ic-angles", cfg.ic_angles, "angles per ring in the default set");
  app.add_option("--ic-rmin", cfg.ic_r_min, "innermost ring radius of the default set");
  app.add_option("--bins", cfg.bins, "histogram bins per axis for section symmetry");
  app.add_flag("--check-reversibility", cfg.check_reversibility, "run a forward/backward integration check");
  app.add_option("--fold", cfg.fold, "symmetry fold under test (0 = mu)");
  app.add_option("--wrong-fold", cfg.wrong_fold, "control fold (0 = mu-1 or mu+1)");
  app.add_option("--eps-classical", cfg.eps_classical, "perturbation used for the classical part of report");
  app.add_option("--max-classical-error", cfg.max_classical_error, "report threshold on the classical fold error");
  app.add_option("--min-ratio", cfg.min_ratio, "required wrong-fold / fold error ratio");
  app.add_option("--radius-tol", cfg.radius_tol, "relative tolerance of maxima radii against r_e");
  app.add_option("--angle-tol-deg", cfg.angle_tol_deg, "tolerance of the upper/lower interleave angle");
  app.add_option("--parity-tol", cfg.parity_tol, "tolerance of parity and pair-rotation defects");
  app.add_option("--out", cfg.out, "output path (default: standard output)");
  app.add_option("--format", cfg.format, "csv | json | pgm");
  app.add_option("--pgm-size", cfg.pgm_size, "PGM raster width and height");
  app.add_option("--workers", cfg.workers, "worker threads (0 = hardware concurrency)");

  auto* cells = app.add_subcommand("cells", "resonance cells of a ladder");
  auto* qe = app.add_subcommand("qe", "quasienergy spectrum and ground states of one cell");
  auto* husimi = app.add_subcommand("husimi", "Husimi field of a ground state or Fock state");
  auto* classical = app.add_subcommand("classical", "stroboscopic sections of the classical oscillator");
  auto* report = app.add_subcommand("report", "combined quantum/classical symmetry report");
  for (auto* sub : {cells, qe, husimi, classical, report}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kConfigError;
  }

  try {
    if (cells->parsed()) return cmd_cells(cfg, out);
    if (qe->parsed()) return cmd_qe(cfg, out);
    if (husimi->parsed()) return cmd_husimi(cfg, out);
    if (classical->parsed()) return cmd_classical(cfg, out, err);
    if (report->parsed()) return cmd_report(cfg, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kNumericFailure;
  }
  err << "error: no subcommand\n";
  return kConfigError;
}

}  // namespace qweb::cli
