#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "csrbf/registration.hpp"

namespace csrbf {

/// Fixed 9-significant-digit formatting used by every text output.
std::string format_number(double v);

/// CSV with header `sx,sy,tx,ty`, one row per pair. Blank lines and lines
/// starting with '#' are ignored. Throws ParseError carrying the line number.
LandmarkCorrespondence read_landmarks_csv(std::istream& in);
/// JSON array of {"source": [x, y], "target": [x, y]}.
LandmarkCorrespondence read_landmarks_json(std::istream& in);
/// Dispatches on extension (.json, otherwise CSV).
LandmarkCorrespondence load_landmarks(const std::filesystem::path& path);

void write_landmarks_csv(std::ostream& out, const LandmarkCorrespondence& lm);
void write_landmarks_json(std::ostream& out, const LandmarkCorrespondence& lm);

/// Three header lines (# region, # resolution, # min_det) followed by ny
/// rows of nx comma-separated determinants, y-major.
void write_det_field_csv(std::ostream& out, const JacobianField& field);

}  // namespace csrbf
