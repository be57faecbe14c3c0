#include "qweb/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qweb/errors.hpp"

namespace qweb::io {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open " + tmp.string() + " for writing");
    f << content;
    if (!f) throw NumericError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

std::string husimi_csv(const HusimiField& field) {
  std::string out = "r,phi,value\n";
  out.reserve(field.values.size() * 48);
  for (int i = 0; i < field.grid.n_r(); ++i) {
    const std::string r = format_number(field.grid.r_values[i]);
    for (int j = 0; j < field.grid.n_phi; ++j) {
      out += r;
      out += ',';
      out += format_number(field.grid.phi(j));
      out += ',';
      out += format_number(field.at(i, j));
      out += '\n';
    }
  }
  return out;
}

std::string section_csv(const SectionSet& sections) {
  std::string out = "orbit_id,s,X,P\n";
  for (std::size_t id = 0; id < sections.orbits.size(); ++id) {
    const auto& samples = sections.orbits[id].samples;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      out += std::to_string(id);
      out += ',';
      out += std::to_string(s);
      out += ',';
      out += format_number(samples[s][0]);
      out += ',';
      out += format_number(samples[s][1]);
      out += '\n';
    }
  }
  return out;
}

std::string husimi_pgm(const HusimiField& field, int width, int height) {
  if (width < 2 || height < 2) throw ConfigError("PGM raster needs at least 2x2 pixels");
  const auto& r = field.grid.r_values;
  const int n_r = field.grid.n_r();
  const int n_phi = field.grid.n_phi;
  const double r_max = r.back();

  auto sample = [&](double x, double p) {
    const double rad = std::hypot(x, p);
    if (rad > r_max || rad < r.front()) return 0.0;
    const auto it = std::upper_bound(r.begin(), r.end(), rad);
    const int i1 = std::min(static_cast<int>(it - r.begin()), n_r - 1);
    const int i0 = std::max(i1 - 1, 0);
    const double wr = i1 == i0 ? 0.0 : (rad - r[i0]) / (r[i1] - r[i0]);
    double phi = std::atan2(p, x);
    if (phi < 0.0) phi += kTwoPi;
    const double fj = phi / kTwoPi * n_phi;
    const int j0 = static_cast<int>(std::floor(fj)) % n_phi;
    const int j1 = (j0 + 1) % n_phi;
    const double wp = fj - std::floor(fj);
    return (1 - wr) * ((1 - wp) * field.at(i0, j0) + wp * field.at(i0, j1)) +
           wr * ((1 - wp) * field.at(i1, j0) + wp * field.at(i1, j1));
  };

  std::vector<double> img(static_cast<std::size_t>(width) * height);
  for (int row = 0; row < height; ++row) {
    const double p = r_max * (1.0 - 2.0 * row / (height - 1));
    for (int col = 0; col < width; ++col) {
      const double x = r_max * (-1.0 + 2.0 * col / (width - 1));
      img[static_cast<std::size_t>(row) * width + col] = sample(x, p);
    }
  }
  const auto [lo, hi] = std::minmax_element(img.begin(), img.end());
  const double span = *hi - *lo;

  std::ostringstream os;
  os << "P2\n" << width << ' ' << height << "\n65535\n";
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      const double v = img[static_cast<std::size_t>(row) * width + col];
      const long level = span > 0.0 ? std::lround((v - *lo) / span * 65535.0) : 0;
      os << level << (col + 1 < width ? ' ' : '\n');
    }
  }
  return os.str();
}

std::vector<ClassicalState> read_initial_conditions(std::istream& in) {
  std::vector<ClassicalState> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ls(line);
    double x = 0.0, p = 0.0;
    if (!(ls >> x)) continue;
    if (!(ls >> p)) throw ConfigError("initial-condition line " + std::to_string(lineno) + " needs two numbers");
    out.push_back({x, p, 0.0});
  }
  return out;
}

json to_json(const Params& params) {
  return {{"mu", params.mu}, {"eps", params.eps}, {"hbar0", params.hbar0}, {"n_max", params.n_max}};
}

json to_json(const Cell& cell, double hbar0) {
  return {{"index", cell.index},
          {"ladder", cell.ladder},
          {"m_lo", cell.m_lo},
          {"m_hi", cell.m_hi},
          {"n_lo", cell.n_lo()},
          {"n_hi", cell.n_hi()},
          {"states", cell.size()},
          {"r_lo", std::sqrt(2.0 * hbar0 * cell.n_lo())},
          {"r_hi", std::sqrt(2.0 * hbar0 * cell.n_hi())},
          {"truncated", cell.truncated}};
}

json to_json(const GaussianAnsatz& a, const Params& params) {
  json j = {{"n_peak", a.n_peak},     {"n_e", a.n_e},       {"r_e", a.r_e},
            {"a_e_discrete", a.a_e},  {"delta_m", a.delta_m}, {"norm", a.norm},
            {"delta_action", a.delta_action(params.hbar0)}};
  try {
    j["a_e_quasiclassical"] = packet_width_quasiclassical(params, a.r_e);
  } catch (const NumericError& e) {
    j["a_e_quasiclassical"] = nullptr;
    j["a_e_quasiclassical_error"] = e.what();
  }
  return j;
}

json to_json(const std::vector<Maximum>& maxima) {
  json arr = json::array();
  for (const auto& m : maxima) arr.push_back({{"r", m.r}, {"phi", m.phi}, {"value", m.value}});
  return arr;
}

json state_json(const QEState& state) {
  json levels = json::array();
  for (std::size_t j = 0; j < state.coeffs.size(); ++j)
    levels.push_back(state.cell.level(state.cell.m_lo + static_cast<int>(j)));
  return {{"kind", to_string(state.kind)}, {"energy", state.energy}, {"levels", levels}, {"coeffs", state.coeffs}};
}

}  // namespace qweb::io
