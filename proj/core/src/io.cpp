#include "qcontrol/io.hpp"

#include <nlohmann/json.hpp>

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qcontrol/errors.hpp"
#include "qcontrol/rng.hpp"
#include "qcontrol/spectral.hpp"

namespace qcontrol {

namespace {

constexpr char kMagic[4] = {'Q', 'C', 'F', '1'};

template <typename T>
void put(std::ostream& os, T value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T take(std::istream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  return value;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

void write_field(const std::filesystem::path& path, const Field& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path.string());
  const Grid& grid = field.grid();
  os.write(kMagic, 4);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.dim()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.n()));
  put<double>(os, grid.half_side());
  put<std::uint64_t>(os, static_cast<std::uint64_t>(field.size()) * 16u);
  put<std::uint32_t>(os, 0u);  // reserved, pads the header to 32 bytes
  for (const cplx& v : field.values()) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
  if (!os) throw io_error("short write: " + path.string());
}

Field read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open for reading: " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw io_error("bad field magic in " + path.string());
  }
  const auto d = take<std::uint32_t>(is);
  const auto n = take<std::uint32_t>(is);
  const double half_side = take<double>(is);
  const auto payload = take<std::uint64_t>(is);
  take<std::uint32_t>(is);
  Grid grid(static_cast<int>(d), static_cast<int>(n), half_side);
  if (payload != static_cast<std::uint64_t>(grid.size()) * 16u) {
    throw io_error("field payload length mismatch in " + path.string());
  }
  std::vector<cplx> values(grid.size());
  for (cplx& v : values) {
    const double re = take<double>(is);
    const double im = take<double>(is);
    v = {re, im};
  }
  if (!is) throw io_error("short read: " + path.string());
  return Field(std::move(grid), std::move(values));
}

void write_spectrum_csv(const std::filesystem::path& path, const Field& field) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open for writing: " + path.string());
  os << "k_squared,re,im\n";
  for (const SpectrumRow& row : spectrum_rows(field)) {
    os << format_double(row.k_squared) << ',' << format_double(row.re) << ','
       << format_double(row.im) << '\n';
  }
}

std::vector<std::string> write_trajectory(const std::filesystem::path& directory,
                                          const std::string& stem, const Trajectory& traj,
                                          int stride) {
  std::vector<std::string> written;
  nlohmann::json index;
  index["times"] = nlohmann::json::array();
  index["frame_files"] = nlohmann::json::array();
  for (int m = 0; m <= traj.times().nt; m += stride) {
    std::ostringstream name;
    name << stem << "_frame_" << std::setw(5) << std::setfill('0') << m << ".qcf";
    write_field(directory / name.str(), traj.frame(m));
    index["times"].push_back(traj.times().node(m));
    index["frame_files"].push_back(name.str());
    written.push_back(name.str());
  }
  const std::string index_name = stem + "_index.json";
  std::ofstream os(directory / index_name);
  if (!os) throw io_error("cannot open for writing: " + (directory / index_name).string());
  os << index.dump(2) << '\n';
  written.push_back(index_name);
  return written;
}

void write_norm_bundle_json(const std::filesystem::path& path, const NormBundle& bundle) {
  nlohmann::json j;
  j["sup_l2"] = bundle.sup_l2;
  j["sup_grad"] = bundle.sup_grad;
  j["s_norm"] = bundle.s_norm;
  j["w_norm"] = bundle.w_norm;
  j["z_norm"] = bundle.z_norm;
  j["triple"] = bundle.triple();
  std::ofstream os(path);
  if (!os) throw io_error("cannot open for writing: " + path.string());
  os << j.dump(2) << '\n';
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open for writing: " + path.string());
  for (std::size_t i = 0; i < header.size(); ++i) {
    os << (i == 0 ? "" : ",") << header[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw io_error("csv row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i == 0 ? "" : ",") << format_double(row[i]);
    }
    os << '\n';
  }
}

void write_svg_line_plot(const std::filesystem::path& path, const std::string& title,
                         const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) throw io_error("svg plot needs matching nonempty series");
  const double width = 640.0;
  const double height = 400.0;
  const double margin = 50.0;
  double xmin = x[0], xmax = x[0], ymin = y[0], ymax = y[0];
  for (std::size_t i = 0; i < x.size(); ++i) {
    xmin = std::min(xmin, x[i]);
    xmax = std::max(xmax, x[i]);
    ymin = std::min(ymin, y[i]);
    ymax = std::max(ymax, y[i]);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  auto sx = [&](double v) { return margin + (v - xmin) / (xmax - xmin) * (width - 2 * margin); };
  auto sy = [&](double v) { return height - margin - (v - ymin) / (ymax - ymin) * (height - 2 * margin); };

  std::ofstream os(path);
  if (!os) throw io_error("cannot open for writing: " + path.string());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
     << title << "</text>\n";
  os << "  <line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
     << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  os << "  <line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
     << height - margin << "\" stroke=\"black\"/>\n";
  os << "  <text x=\"" << margin << "\" y=\"" << height - margin + 20
     << "\" font-size=\"11\">" << format_double(xmin) << "</text>\n";
  os << "  <text x=\"" << width - margin << "\" y=\"" << height - margin + 20
     << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(xmax) << "</text>\n";
  os << "  <text x=\"" << margin - 6 << "\" y=\"" << height - margin
     << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(ymin) << "</text>\n";
  os << "  <text x=\"" << margin - 6 << "\" y=\"" << margin
     << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(ymax) << "</text>\n";
  os << "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << sx(x[i]) << ',' << sy(y[i]) << ' ';
  }
  os << "\"/>\n</svg>\n";
}

void write_slice_csv(const std::filesystem::path& path, const Field& field) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open for writing: " + path.string());
  const Grid& grid = field.grid();
  const int d = grid.dim();
  if (d == 1) {
    os << "x,re,im\n";
  } else if (d == 2) {
    os << "x1,x2,re,im\n";
  } else {
    os << "x1,x2,re,im\n";  // slice at x3 = 0
  }
  const int zero_bin = grid.n() / 2;  // coordinate(n/2) == 0
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto bins = grid.unravel(i);
    if (d == 3 && bins[2] != zero_bin) continue;
    os << format_double(grid.coordinate(bins[0]));
    if (d >= 2) os << ',' << format_double(grid.coordinate(bins[1]));
    os << ',' << format_double(field[i].real()) << ',' << format_double(field[i].imag()) << '\n';
  }
}

std::uint64_t checksum_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open for checksum: " + path.string());
  std::ostringstream buffer;
  buffer << is.rdbuf();
  const std::string bytes = buffer.str();
  return fnv1a64(bytes);
}

}  // namespace qcontrol
