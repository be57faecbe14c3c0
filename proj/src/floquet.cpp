#include "qweb/floquet.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qweb/errors.hpp"

namespace qweb {

namespace {

void fix_sign(std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  if (!v.empty() && v[best] < 0.0)
    for (double& x : v) x = -x;
}

std::string cell_label(const Cell& cell) {
  return "cell " + std::to_string(cell.index) + " (ladder " + std::to_string(cell.ladder) + ", m " +
         std::to_string(cell.m_lo) + ".." + std::to_string(cell.m_hi) + ")";
}

}  // namespace

const char* to_string(StateKind kind) {
  switch (kind) {
    case StateKind::kUpperGround: return "upper";
    case StateKind::kLowerGround: return "lower";
    case StateKind::kInterior: return "interior";
  }
  return "interior";
}

double CellHamiltonian::norm_inf() const {
  double best = 0.0;
  for (int i = 0; i < dim(); ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(offdiag[i - 1]);
    if (i + 1 < dim()) row += std::abs(offdiag[i]);
    best = std::max(best, row);
  }
  return best;
}

double GaussianAnsatz::delta_action(double hbar0) const { return std::sqrt(2.0) * hbar0 * a_e * a_e; }

CellHamiltonian build_cell_hamiltonian(const Params& params, const Cell& cell) {
  params.validate();
  if (cell.mu != params.mu) throw ConfigError("cell was built for a different mu");
  if (cell.m_lo < 0 || cell.m_hi < cell.m_lo) throw ConfigError("malformed cell");
  if (cell.n_hi() > params.n_max)
    throw TruncationError(cell_label(cell) + " exceeds n_max " + std::to_string(params.n_max));

  CellHamiltonian h;
  h.cell = cell;
  h.diag.assign(cell.size(), kDetuning);
  const double scale = params.eps / (2.0 * params.hbar0);
  h.offdiag.reserve(cell.size() - 1);
  for (int m = cell.m_lo; m < cell.m_hi; ++m) h.offdiag.push_back(scale * coupling_g(params, cell.level(m)));
  return h;
}

CellHamiltonian build_chain_hamiltonian(const Params& params, int ladder, int m_max) {
  params.validate();
  if (ladder < 0 || ladder >= params.mu) throw ConfigError("ladder must lie in [0, mu)");
  const Cell chain{params.mu, ladder, 0, m_max, 0, false};
  return build_cell_hamiltonian(params, chain);
}

std::vector<QEState> solve_cell(const CellHamiltonian& h) {
  const int n = h.dim();
  if (n < 1 || static_cast<int>(h.offdiag.size()) != n - 1)
    throw ConfigError("solve_cell: inconsistent tridiagonal dimensions");

  std::vector<QEState> states;
  states.reserve(n);
  if (n == 1) {
    states.push_back({h.cell, h.diag[0], {1.0}, StateKind::kInterior});
    return states;
  }

  const Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(h.diag.data(), n);
  const Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(h.offdiag.data(), n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw NumericError("tridiagonal eigensolver did not converge for " + cell_label(h.cell));

  const double tol = 1e-10 * std::max(h.norm_inf(), 1e-300);
  for (int k = 0; k < n; ++k) {
    QEState s;
    s.cell = h.cell;
    s.energy = solver.eigenvalues()(k);
    s.coeffs.resize(n);
    for (int i = 0; i < n; ++i) s.coeffs[i] = solver.eigenvectors()(i, k);
    fix_sign(s.coeffs);
    if (eigen_residual(h, s) > tol && h.norm_inf() > 0.0)
      throw NumericError("eigenvector residual check failed for " + cell_label(h.cell));
    states.push_back(std::move(s));
  }
  return states;
}

double eigen_residual(const CellHamiltonian& h, const QEState& state) {
  const int n = h.dim();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double hv = h.diag[i] * state.coeffs[i];
    if (i > 0) hv += h.offdiag[i - 1] * state.coeffs[i - 1];
    if (i + 1 < n) hv += h.offdiag[i] * state.coeffs[i + 1];
    const double r = hv - state.energy * state.coeffs[i];
    sum += r * r;
  }
  return std::sqrt(sum);
}

GroundPair ground_states(const std::vector<QEState>& states) {
  if (states.size() < 2) throw ConfigError("ground_states: need at least 2 states");
  auto [lo, hi] = std::minmax_element(states.begin(), states.end(),
                                      [](const QEState& a, const QEState& b) { return a.energy < b.energy; });
  if (std::abs(hi->energy - lo->energy) < 1e-14)
    throw DegenerateSpectrumError("extreme quasienergies are degenerate (is eps = 0?)");
  GroundPair pair{*hi, *lo};
  pair.upper.kind = StateKind::kUpperGround;
  pair.lower.kind = StateKind::kLowerGround;
  return pair;
}

QEState parity_transform(const QEState& state) {
  QEState out = state;
  out.energy = -state.energy;
  for (std::size_t j = 0; j < out.coeffs.size(); ++j)
    if ((state.cell.m_lo + static_cast<int>(j)) % 2 != 0) out.coeffs[j] = -out.coeffs[j];
  if (state.kind == StateKind::kUpperGround) out.kind = StateKind::kLowerGround;
  else if (state.kind == StateKind::kLowerGround) out.kind = StateKind::kUpperGround;
  return out;
}

GaussianAnsatz gaussian_ansatz(const Params& params, const Cell& cell) {
  params.validate();
  if (cell.size() < 5) throw ConfigError("gaussian_ansatz: cell needs at least 5 states");

  const int links = cell.size() - 1;
  std::vector<double> g(links);
  for (int j = 0; j < links; ++j) g[j] = coupling_g(params, cell.level(cell.m_lo + j));
  const auto peak = std::max_element(g.begin(), g.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  const int j = static_cast<int>(peak - g.begin());
  if (j == 0 || j == links - 1)
    throw NumericError("gaussian_ansatz: |g| peaks on the boundary of " + cell_label(cell));

  const int mu = params.mu;
  GaussianAnsatz a;
  a.mu = mu;
  a.n_peak = cell.level(cell.m_lo + j);
  const double g2 = (g[j + 1] - 2.0 * g[j] + g[j - 1]) / (static_cast<double>(mu) * mu);
  if (g2 == 0.0) throw NumericError("gaussian_ansatz: vanishing second difference of g");
  a.a_e = std::pow(std::abs(g[j] / g2), 0.25);

  // continuous centre from the Bessel proxy g(n) ~ J_mu(sqrt(2 n hbar0))
  const double h = params.hbar0;
  const double lo = std::sqrt(2.0 * h * std::max(a.n_peak - 2 * mu, 0));
  const double hi = std::sqrt(2.0 * h * (a.n_peak + 2 * mu));
  const double r_star = bessel_abs_max_in(mu, lo, hi);
  const double edge = 1e-6 * (hi - lo);
  if (r_star - lo > edge && hi - r_star > edge) {
    a.r_e = r_star;
    a.n_e = r_star * r_star / (2.0 * h);
  } else {
    const double gm = std::abs(g[j - 1]);
    const double g0 = std::abs(g[j]);
    const double gp = std::abs(g[j + 1]);
    const double shift = 0.5 * (gm - gp) / (gm - 2.0 * g0 + gp);
    a.n_e = a.n_peak + mu * shift;
    a.r_e = std::sqrt(2.0 * h * a.n_e);
  }
  a.delta_m = static_cast<int>(std::ceil(2.0 * a.a_e));

  double sum = 0.0;
  for (int m = cell.m_lo; m <= cell.m_hi; ++m) {
    const double d = cell.level(m) - a.n_e;
    sum += std::exp(-d * d / (a.a_e * a.a_e));
  }
  a.norm = 1.0 / std::sqrt(sum);
  return a;
}

double packet_width_quasiclassical(const Params& params, double r_e) {
  params.validate();
  if (!(r_e > 0.0)) throw ConfigError("packet_width_quasiclassical: r_e must be > 0");
  const double j = bessel_j(params.mu, r_e);
  const double mu2 = static_cast<double>(params.mu) * params.mu;
  const double jpp = -(1.0 - mu2 / (r_e * r_e)) * j;
  if (std::abs(jpp) < 1e-12)
    throw NumericError("packet_width_quasiclassical: J_mu''(r_e) vanishes, width diverges");
  const double ratio = (r_e * r_e) / (params.hbar0 * params.hbar0) * std::abs(j / jpp);
  return std::pow(ratio, 0.25);
}

std::vector<double> sampled_gaussian(const Cell& cell, const GaussianAnsatz& ansatz) {
  std::vector<double> v(cell.size());
  double sum = 0.0;
  for (int m = cell.m_lo; m <= cell.m_hi; ++m) {
    const double d = cell.level(m) - ansatz.n_e;
    const double x = std::exp(-d * d / (2.0 * ansatz.a_e * ansatz.a_e));
    v[m - cell.m_lo] = x;
    sum += x * x;
  }
  const double inv = 1.0 / std::sqrt(sum);
  for (double& x : v) x *= inv;
  return v;
}

double gaussian_overlap(const QEState& state, const GaussianAnsatz& ansatz) {
  const auto gauss = sampled_gaussian(state.cell, ansatz);
  const double dot = std::inner_product(gauss.begin(), gauss.end(), state.coeffs.begin(), 0.0);
  return std::min(1.0, dot * dot);
}

EdgeSpacing edge_spacing(const std::vector<QEState>& states, int count) {
  if (count < 1 || static_cast<std::size_t>(count) + 1 > states.size())
    throw ConfigError("edge_spacing: need count + 1 <= number of states");
  std::vector<double> e;
  e.reserve(states.size());
  for (const auto& s : states) e.push_back(s.energy);
  std::sort(e.begin(), e.end(), std::greater<>());

  EdgeSpacing out;
  std::vector<double> gaps(count);
  for (int i = 0; i < count; ++i) gaps[i] = e[i] - e[i + 1];
  out.mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / count;
  double var = 0.0;
  for (double g : gaps) var += (g - out.mean) * (g - out.mean);
  var /= count;
  out.rel_std = out.mean != 0.0 ? std::sqrt(var) / std::abs(out.mean) : 0.0;
  return out;
}

std::vector<Cell> ladder_cells(const Params& params, int ladder) {
  return cell_boundaries(params, ladder, max_scan_index(params, ladder));
}

Cell find_cell(const Params& params, int ladder, int index) {
  const auto cells = ladder_cells(params, ladder);
  for (const auto& c : cells)
    if (c.index == index) return c;
  throw ConfigError("cell " + std::to_string(index) + " not found on ladder " + std::to_string(ladder) +
                    " (" + std::to_string(cells.size()) + " cells within n_max)");
}

}  // namespace qweb
