// Curve import/export. All writes go through a temp-file-and-rename so a
// failed run never leaves a partial file behind.
#ifndef ELASTICA_IO_HPP
#define ELASTICA_IO_HPP

#include <filesystem>
#include <string>

#include "elastica/frames.hpp"

namespace elastica {

/// CSV with header s,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau — one row per
/// node, LF line endings, 17 significant digits (lossless round trip).
void write_curve_csv(const FramedCurve& curve, const std::filesystem::path& path);

/// Reads a curve written by write_curve_csv; positions and frames round-trip
/// bit-exactly.
FramedCurve read_curve_csv(const std::filesystem::path& path);

/// Reads only the (s, kappa, tau) columns of a curve CSV as a profile.
CurvatureTorsionProfile read_profile_csv(const std::filesystem::path& path);

enum class ProjectionPlane { XY, XZ, YZ };

ProjectionPlane projection_plane_from_name(const std::string& name);

/// Single-polyline SVG of the curve projected onto the named coordinate
/// plane; viewBox fitted to the bounding box with a 5% margin, stroke width
/// 0.5% of the larger box side, coordinates in curve length units.
void write_curve_svg(const FramedCurve& curve, const std::filesystem::path& path,
                     ProjectionPlane plane = ProjectionPlane::XY);

/// Writes contents to path atomically (temp file in the same directory, then
/// rename).
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace elastica

#endif
