#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardy/dirichlet.hpp"
#include "hardy/errors.hpp"
#include "hardy/warp.hpp"

namespace hardy {

/// Malformed or incomplete input file; the message names the offending field.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Contents of a problem file before a λ has been settled on.
struct ProblemFile {
  struct Sample {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
    std::optional<double> weight;
  };
  std::optional<double> lambda;
  std::vector<Sample> samples;
};

/// { "lambda": number, "samples": [ { "x", "y", "value", "weight"? }, … ] }
[[nodiscard]] ProblemFile parse_problem_json(const std::string& text);

/// Builds the problem with the given λ. Missing weights take the arc-length share of their
/// sample along the closed polyline through all sample locations.
[[nodiscard]] DirichletProblem build_problem(const ProblemFile& file, double lambda);

struct CorrespondenceFile {
  std::vector<Point2> source;
  std::vector<Point2> target;
  std::optional<double> lambda;
};

/// { "source": [[ξ, η], …], "target": [[x, y], …], "lambda": number? }
[[nodiscard]] CorrespondenceFile parse_correspondence_json(const std::string& text);

[[nodiscard]] std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace hardy
