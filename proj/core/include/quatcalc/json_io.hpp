#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "quatcalc/discretize.hpp"
#include "quatcalc/irreducibility.hpp"
#include "quatcalc/qmatrix.hpp"
#include "quatcalc/scalculus.hpp"
#include "quatcalc/spectrum.hpp"

namespace quatcalc {

using json = nlohmann::ordered_json;

json to_json(const Quaternion& q);
json to_json(const Sphere& s);
json to_json(const QMatrix& m);
json to_json(const SphericalSpectrum& s);
json to_json(const Contour& c);
json to_json(const IrreducibilityReport& r);
json to_json(const GridOperator& g);

/// Parsers throw ParseError naming the offending location as a JSON pointer.
Quaternion quaternion_from_json(const json& j, const std::string& where = "");
QMatrix qmatrix_from_json(const json& j);
QMatrix parse_qmatrix(const std::string& text);

/// "re,rad;re,rad;..." -> spheres. Throws ParseError.
std::vector<Sphere> parse_partition(const std::string& spec);

std::string read_text_file(const std::string& path);
/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never see a partial file.
void write_text_file_atomic(const std::string& path, const std::string& content);

}  // namespace quatcalc
