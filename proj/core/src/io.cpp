#include "elastica/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace elastica {

namespace {

constexpr const char* kCsvHeader = "s,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau";

std::string format_double(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used == 0) throw std::invalid_argument("csv: malformed number '" + text + "'");
  return value;
}

}  // namespace

void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path dir = path.has_parent_path() ? path.parent_path() : ".";
  std::filesystem::path temp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + temp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed: " + temp.string());
  }
  std::filesystem::rename(temp, path);
}

void write_curve_csv(const FramedCurve& curve, const std::filesystem::path& path) {
  std::string out;
  out.reserve(curve.node_count() * 200 + 64);
  out += kCsvHeader;
  out += '\n';
  for (std::size_t i = 0; i < curve.node_count(); ++i) {
    const Vec3& r = curve.positions[i];
    const Frame& fr = curve.frames[i];
    const double fields[15] = {curve.profile.node_s(i),
                               r.x(), r.y(), r.z(),
                               fr.t.x(), fr.t.y(), fr.t.z(),
                               fr.n.x(), fr.n.y(), fr.n.z(),
                               fr.b.x(), fr.b.y(), fr.b.z(),
                               curve.profile.kappa[i], curve.profile.tau[i]};
    for (int j = 0; j < 15; ++j) {
      if (j) out += ',';
      out += format_double(fields[j]);
    }
    out += '\n';
  }
  atomic_write_file(path, out);
}

FramedCurve read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: empty file");
  if (line != kCsvHeader) throw std::invalid_argument("csv: unexpected header");

  FramedCurve curve;
  std::vector<double> s_values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != 15) throw std::invalid_argument("csv: wrong column count");
    double v[15];
    for (int j = 0; j < 15; ++j) v[j] = parse_double(fields[j]);
    s_values.push_back(v[0]);
    curve.positions.emplace_back(v[1], v[2], v[3]);
    Frame frame;
    frame.t = Vec3(v[4], v[5], v[6]);
    frame.n = Vec3(v[7], v[8], v[9]);
    frame.b = Vec3(v[10], v[11], v[12]);
    curve.frames.push_back(frame);
    curve.profile.kappa.push_back(v[13]);
    curve.profile.tau.push_back(v[14]);
  }
  if (curve.node_count() < 3) throw std::invalid_argument("csv: too few rows");
  curve.profile.length = s_values.back();
  curve.base_point = curve.positions.front();

  const double h = curve.profile.node_spacing();
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    if (std::abs(s_values[i] - static_cast<double>(i) * h) > 1e-9 * std::max(1.0, curve.profile.length))
      throw std::invalid_argument("csv: arclength column is not a uniform grid");
  }
  return curve;
}

CurvatureTorsionProfile read_profile_csv(const std::filesystem::path& path) {
  return read_curve_csv(path).profile;
}

ProjectionPlane projection_plane_from_name(const std::string& name) {
  if (name == "xy") return ProjectionPlane::XY;
  if (name == "xz") return ProjectionPlane::XZ;
  if (name == "yz") return ProjectionPlane::YZ;
  throw std::invalid_argument("unknown projection plane: " + name);
}

void write_curve_svg(const FramedCurve& curve, const std::filesystem::path& path,
                     ProjectionPlane plane) {
  if (curve.node_count() < 2) throw std::invalid_argument("svg: empty curve");

  auto project = [plane](const Vec3& p) -> std::pair<double, double> {
    switch (plane) {
      case ProjectionPlane::XY: return {p.x(), p.y()};
      case ProjectionPlane::XZ: return {p.x(), p.z()};
      case ProjectionPlane::YZ: return {p.y(), p.z()};
    }
    return {p.x(), p.y()};
  };

  double u_min = 1e300, u_max = -1e300, v_min = 1e300, v_max = -1e300;
  for (const Vec3& p : curve.positions) {
    const auto [u, v] = project(p);
    u_min = std::min(u_min, u);
    u_max = std::max(u_max, u);
    v_min = std::min(v_min, v);
    v_max = std::max(v_max, v);
  }
  const double width = std::max(u_max - u_min, 1e-12);
  const double height = std::max(v_max - v_min, 1e-12);
  const double margin = 0.05 * std::max(width, height);
  const double stroke = 0.005 * std::max(width, height);

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
  out += format_double(u_min - margin) + " " + format_double(v_min - margin) + " " +
         format_double(width + 2 * margin) + " " + format_double(height + 2 * margin) + "\">\n";
  out += "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"" + format_double(stroke) +
         "\" points=\"";
  for (std::size_t i = 0; i < curve.node_count(); ++i) {
    const auto [u, v] = project(curve.positions[i]);
    if (i) out += ' ';
    out += format_double(u) + "," + format_double(v);
  }
  out += "\"/>\n</svg>\n";
  atomic_write_file(path, out);
}

}  // namespace elastica
