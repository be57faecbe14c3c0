#pragma once

// Plain-text serialisation: CSV, JSON and PGM.

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qweb/classical.hpp"
#include "qweb/floquet.hpp"
#include "qweb/husimi.hpp"

namespace qweb::io {

using json = nlohmann::json;

/// Writes to a temporary sibling, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// 15 significant digits, '.' decimal separator.
std::string format_number(double value);

/// Header `r,phi,value`, one row per grid point, LF endings.
std::string husimi_csv(const HusimiField& field);

/// Header `orbit_id,s,X,P`, LF endings.
std::string section_csv(const SectionSet& sections);

/// P2 raster with maxval 65535: Cartesian resampling of the polar field on
/// [-r_max, r_max]^2 with bilinear interpolation in (r, phi), min-max scaled.
/// Top row is the largest P.
std::string husimi_pgm(const HusimiField& field, int width, int height);

/// Initial conditions, one `X P` or `X,P` pair per line; `#` starts a comment.
std::vector<ClassicalState> read_initial_conditions(std::istream& in);

json to_json(const Params& params);
json to_json(const Cell& cell, double hbar0);
json to_json(const GaussianAnsatz& ansatz, const Params& params);
json to_json(const std::vector<Maximum>& maxima);
json state_json(const QEState& state);

}  // namespace qweb::io
