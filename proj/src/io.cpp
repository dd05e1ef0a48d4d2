#include "hardy/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace hardy {

using nlohmann::json;

namespace {

double number_field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ParseError(where + ": field \"" + key + "\" must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(where + ": field \"" + key + "\" must be finite");
  return d;
}

json parse_object(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top-level JSON value must be an object");
  return doc;
}

std::vector<Point2> point_list(const json& doc, const std::string& key) {
  if (!doc.contains(key)) throw ParseError("missing field \"" + key + "\"");
  const auto& arr = doc.at(key);
  if (!arr.is_array()) throw ParseError("field \"" + key + "\" must be an array of [x, y] pairs");
  std::vector<Point2> pts;
  pts.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& e = arr[i];
    const std::string where = key + "[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError(where + ": expected [number, number]");
    }
    pts.push_back({e[0].get<double>(), e[1].get<double>()});
    if (!std::isfinite(pts.back().x) || !std::isfinite(pts.back().y)) throw ParseError(where + ": non-finite");
  }
  return pts;
}

}  // namespace

ProblemFile parse_problem_json(const std::string& text) {
  const json doc = parse_object(text);
  ProblemFile file;
  if (doc.contains("lambda")) file.lambda = number_field(doc, "lambda", "problem");
  if (!doc.contains("samples")) throw ParseError("problem: missing field \"samples\"");
  const auto& arr = doc.at("samples");
  if (!arr.is_array()) throw ParseError("problem: field \"samples\" must be an array");
  if (arr.empty()) throw ParseError("problem: field \"samples\" must contain at least one entry");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = "samples[" + std::to_string(i) + "]";
    const auto& e = arr[i];
    if (!e.is_object()) throw ParseError(where + ": expected an object");
    ProblemFile::Sample s;
    s.x = number_field(e, "x", where);
    s.y = number_field(e, "y", where);
    s.value = number_field(e, "value", where);
    if (e.contains("weight") && !e.at("weight").is_null()) s.weight = number_field(e, "weight", where);
    file.samples.push_back(s);
  }
  return file;
}

DirichletProblem build_problem(const ProblemFile& file, double lambda) {
  if (file.samples.empty()) throw ParseError("problem: field \"samples\" must contain at least one entry");
  std::vector<Point2> planar;
  planar.reserve(file.samples.size());
  for (const auto& s : file.samples) planar.push_back({s.x, s.y});
  const auto defaults = arc_length_weights(planar);
  std::vector<BoundarySample> samples;
  samples.reserve(file.samples.size());
  for (std::size_t j = 0; j < file.samples.size(); ++j) {
    const auto& s = file.samples[j];
    samples.emplace_back(UpperHalfPoint(s.x, s.y), s.value, s.weight.value_or(defaults[j]));
  }
  return {std::move(samples), lambda};
}

CorrespondenceFile parse_correspondence_json(const std::string& text) {
  const json doc = parse_object(text);
  CorrespondenceFile file;
  file.source = point_list(doc, "source");
  file.target = point_list(doc, "target");
  if (doc.contains("lambda") && !doc.at("lambda").is_null()) file.lambda = number_field(doc, "lambda", "correspondence");
  return file;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << contents;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace hardy
