#include "quatcalc/json_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "quatcalc/error.hpp"

namespace quatcalc {

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

json to_json(const Sphere& s) { return {{"re", s.re}, {"rad", s.rad}}; }

json to_json(const QMatrix& m) {
  json data = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    data.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json to_json(const SphericalSpectrum& s) {
  json out = json::array();
  for (std::size_t k = 0; k < s.size(); ++k)
    out.push_back({{"re", s.spheres[k].re}, {"rad", s.spheres[k].rad}, {"mult", s.multiplicities[k]}});
  return out;
}

json to_json(const Contour& c) {
  json circles = json::array();
  for (const auto& k : c.circles)
    circles.push_back({{"center", k.center},
                       {"radius", k.radius},
                       {"inner_clearance", k.inner_clearance},
                       {"outer_clearance", k.outer_clearance},
                       {"convergence_ratio", k.convergence_ratio}});
  return {{"m", json::array({c.m.x(), c.m.y(), c.m.z()})}, {"circles", std::move(circles)}, {"nodes", c.nodes}};
}

json to_json(const IrreducibilityReport& r) {
  json out;
  if (r.strongly_irreducible == Decision::indeterminate) out["strongly_irreducible"] = "indeterminate";
  else out["strongly_irreducible"] = r.strongly_irreducible == Decision::yes;
  out["irreducible"] = r.irreducible;
  out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  out["method"] = r.method;
  out["oracle_checked"] = r.oracle_checked;
  out["sphere_count"] = r.sphere_count;
  out["block_sizes"] = r.block_sizes;
  out["note"] = r.note;
  return out;
}

json to_json(const GridOperator& g) {
  json out = to_json(g.t);
  out["n"] = g.n;
  out["kind"] = to_string(g.kind);
  out["description"] = g.description;
  out["convention"] = g.convention;
  return out;
}

Quaternion quaternion_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw ParseError(where + ": quaternion must be an array [w, x, y, z]");
  double v[4];
  for (std::size_t k = 0; k < 4; ++k) {
    if (!j[k].is_number()) throw ParseError(where + "/" + std::to_string(k) + ": expected a number");
    v[k] = j[k].get<double>();
  }
  return {v[0], v[1], v[2], v[3]};
}

QMatrix qmatrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("/: matrix must be an object with rows, cols, data");
  for (const char* key : {"rows", "cols", "data"})
    if (!j.contains(key)) throw ParseError(std::string("/") + key + ": missing");
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
    throw ParseError("/rows: rows and cols must be non-negative integers");
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const json& data = j["data"];
  if (!data.is_array() || data.size() != rows)
    throw ParseError("/data: expected " + std::to_string(rows) + " rows");
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_path = "/data/" + std::to_string(r);
    if (!data[r].is_array() || data[r].size() != cols)
      throw ParseError(row_path + ": expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = quaternion_from_json(data[r][c], row_path + "/" + std::to_string(c));
  }
  return m;
}

QMatrix parse_qmatrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return qmatrix_from_json(j);
}

std::vector<Sphere> parse_partition(const std::string& spec) {
  std::vector<Sphere> out;
  std::stringstream items(spec);
  std::string item;
  std::size_t index = 0;
  while (std::getline(items, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::stringstream parts(item);
    std::string a, b, extra;
    if (!std::getline(parts, a, ',') || !std::getline(parts, b, ',') || std::getline(parts, extra, ','))
      throw ParseError("partition item " + std::to_string(index) + " ('" + item + "') must be 're,rad'");
    try {
      std::size_t pa = 0, pb = 0;
      const double re = std::stod(a, &pa), rad = std::stod(b, &pb);
      if (a.find_first_not_of(" \t", pa) != std::string::npos || b.find_first_not_of(" \t", pb) != std::string::npos)
        throw std::invalid_argument("trailing characters");
      if (rad < 0.0) throw ParseError("partition item " + std::to_string(index) + ": rad must be >= 0");
      out.push_back({re, rad});
    } catch (const std::logic_error&) {
      throw ParseError("partition item " + std::to_string(index) + " ('" + item + "') is not numeric");
    }
    ++index;
  }
  if (out.empty()) throw ParseError("partition is empty");
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "': " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot move output into '" + path + "': " + ec.message());
  }
}

}  // namespace quatcalc
