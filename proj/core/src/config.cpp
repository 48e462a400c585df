#include "qcontrol/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "qcontrol/errors.hpp"
#include "qcontrol/fft.hpp"
#include "qcontrol/spectral.hpp"

namespace qcontrol {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct KeyBinding {
  std::function<void(RunConfig&, const std::string&)> set;
};

template <typename T>
T parse_number(const std::string& value, int line) {
  std::istringstream is(value);
  T out;
  is >> out;
  if (is.fail() || !is.eof()) {
    throw invalid_config_error("parse-error at line " + std::to_string(line) +
                               ": cannot parse value '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& value, int line) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw invalid_config_error("parse-error at line " + std::to_string(line) +
                             ": expected boolean, got '" + value + "'");
}

const std::map<std::string, KeyBinding>& bindings() {
  static const std::map<std::string, KeyBinding> table = [] {
    std::map<std::string, KeyBinding> m;
    auto number = [&m](const std::string& key, auto member) {
      m[key] = KeyBinding{[member](RunConfig& c, const std::string& v) {
        c.*member = parse_number<std::decay_t<decltype(std::declval<RunConfig>().*member)>>(v, 0);
      }};
    };
    number("dimension", &RunConfig::dimension);
    number("n", &RunConfig::n);
    number("half_side", &RunConfig::half_side);
    number("radius", &RunConfig::radius);
    number("horizon", &RunConfig::horizon);
    number("nt", &RunConfig::nt);
    number("tol_cg", &RunConfig::tol_cg);
    number("tol_fixed_point", &RunConfig::tol_fixed_point);
    number("tol_picard", &RunConfig::tol_picard);
    number("smallness_delta", &RunConfig::smallness_delta);
    number("ball_radius", &RunConfig::ball_radius);
    number("cg_max_iter", &RunConfig::cg_max_iter);
    number("fixed_point_max_iter", &RunConfig::fixed_point_max_iter);
    number("dense_threshold", &RunConfig::dense_threshold);
    number("seed", &RunConfig::seed);
    number("u0_center", &RunConfig::u0_center);
    number("u0_width", &RunConfig::u0_width);
    number("u0_h1_norm", &RunConfig::u0_h1_norm);
    number("u0_mode_index", &RunConfig::u0_mode_index);
    number("frame_stride", &RunConfig::frame_stride);
    m["output_dir"] = KeyBinding{[](RunConfig& c, const std::string& v) { c.output_dir = v; }};
    m["u0_kind"] = KeyBinding{[](RunConfig& c, const std::string& v) { c.u0_kind = v; }};
    m["radius_sweep"] = KeyBinding{[](RunConfig& c, const std::string& v) { c.radius_sweep = v; }};
    m["diag_name"] = KeyBinding{[](RunConfig& c, const std::string& v) { c.diag_name = v; }};
    m["sweep"] = KeyBinding{[](RunConfig& c, const std::string& v) { c.sweep = parse_bool(v, 0); }};
    return m;
  }();
  return table;
}

}  // namespace

void RunConfig::validate() const {
  auto fail = [](const std::string& why) { throw invalid_config_error("validation-error: " + why); };
  if (dimension < 1 || dimension > 3) fail("dimension must be 1, 2 or 3");
  if (n < 8 || (n & (n - 1)) != 0) fail("n must be a power of two >= 8");
  if (!(half_side > 0.0)) fail("half_side must be positive");
  if (radius < 0.0) fail("radius must be nonnegative");
  if (radius != 0.0 && radius < 1.0) fail("radius must be 0 (degenerate) or >= 1");
  if (radius + 4.0 > half_side) fail("control geometry does not fit: radius + 4 > half_side");
  if (!(horizon > 0.0)) fail("horizon must be positive");
  if (nt < 8) fail("nt must be at least 8");
  for (double tol : {tol_cg, tol_fixed_point, tol_picard}) {
    if (!(tol > 0.0 && tol < 1.0)) fail("tolerances must lie in (0, 1)");
  }
  if (!(smallness_delta > 0.0)) fail("smallness_delta must be positive");
  if (!(ball_radius > 0.0)) fail("ball_radius must be positive");
  if (cg_max_iter < 1 || fixed_point_max_iter < 1) fail("iteration caps must be >= 1");
  if (u0_kind != "gaussian" && u0_kind != "mode" && u0_kind != "zero") {
    fail("u0_kind must be gaussian, mode or zero");
  }
  if (!(u0_width > 0.0)) fail("u0_width must be positive");
  if (u0_h1_norm < 0.0) fail("u0_h1_norm must be nonnegative");
  if (frame_stride < 1) fail("frame_stride must be >= 1");
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw invalid_config_error("parse-error at line " + std::to_string(line_number) +
                                   ": unterminated section header");
      }
      continue;  // sections are cosmetic grouping
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw invalid_config_error("parse-error at line " + std::to_string(line_number) +
                                 ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = bindings().find(key);
    if (it == bindings().end()) {
      throw invalid_config_error("parse-error at line " + std::to_string(line_number) +
                                 ": unknown key '" + key + "'");
    }
    try {
      it->second.set(config, value);
    } catch (const invalid_config_error&) {
      throw invalid_config_error("parse-error at line " + std::to_string(line_number) +
                                 ": cannot parse value '" + value + "' for key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string config_to_string(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "ball_radius = " << c.ball_radius << '\n'
     << "cg_max_iter = " << c.cg_max_iter << '\n'
     << "dense_threshold = " << c.dense_threshold << '\n'
     << "diag_name = " << c.diag_name << '\n'
     << "dimension = " << c.dimension << '\n'
     << "fixed_point_max_iter = " << c.fixed_point_max_iter << '\n'
     << "frame_stride = " << c.frame_stride << '\n'
     << "half_side = " << c.half_side << '\n'
     << "horizon = " << c.horizon << '\n'
     << "n = " << c.n << '\n'
     << "nt = " << c.nt << '\n'
     << "radius = " << c.radius << '\n'
     << "radius_sweep = " << c.radius_sweep << '\n'
     << "seed = " << c.seed << '\n'
     << "smallness_delta = " << c.smallness_delta << '\n'
     << "sweep = " << (c.sweep ? "true" : "false") << '\n'
     << "tol_cg = " << c.tol_cg << '\n'
     << "tol_fixed_point = " << c.tol_fixed_point << '\n'
     << "tol_picard = " << c.tol_picard << '\n'
     << "u0_center = " << c.u0_center << '\n'
     << "u0_h1_norm = " << c.u0_h1_norm << '\n'
     << "u0_kind = " << c.u0_kind << '\n'
     << "u0_mode_index = " << c.u0_mode_index << '\n'
     << "u0_width = " << c.u0_width << '\n';
  return os.str();
}

Grid make_grid_from(const RunConfig& config) {
  return Grid(config.dimension, config.n, config.half_side);
}

Field make_initial_datum(const RunConfig& config, const Grid& grid) {
  Field u0(grid);
  if (config.u0_kind == "zero" || config.u0_h1_norm == 0.0) return u0;
  if (config.u0_kind == "gaussian") {
    const double w2 = config.u0_width * config.u0_width;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto bins = grid.unravel(i);
      double r2 = 0.0;
      for (int a = 0; a < grid.dim(); ++a) {
        const double x = grid.coordinate(bins[static_cast<std::size_t>(a)]) -
                         (a == 0 ? config.u0_center : 0.0);
        r2 += x * x;
      }
      u0[i] = std::exp(-r2 / (2.0 * w2));
    }
  } else {  // mode
    std::vector<cplx> coeffs(grid.size(), cplx(0.0, 0.0));
    const int mode = config.u0_mode_index;
    const int bin = mode >= 0 ? mode : mode + grid.n();
    if (bin < 0 || bin >= grid.n()) {
      throw invalid_config_error("u0_mode_index outside the grid band");
    }
    coeffs[static_cast<std::size_t>(bin)] = 1.0;
    u0 = field_from_coefficients(grid, coeffs);
  }
  const double h1 = sobolev_norm(u0, 1.0);
  if (h1 > 0.0) u0 *= config.u0_h1_norm / h1;
  return u0;
}

RadiusSweep parse_radius_sweep(const std::string& text) {
  RadiusSweep sweep;
  std::istringstream is(text);
  char c1 = 0;
  char c2 = 0;
  is >> sweep.start >> c1 >> sweep.stop >> c2 >> sweep.step;
  if (is.fail() || c1 != ':' || c2 != ':' || !(sweep.step > 0.0) || sweep.stop < sweep.start) {
    throw invalid_config_error("validation-error: radius sweep must be start:stop:step");
  }
  return sweep;
}

}  // namespace qcontrol
