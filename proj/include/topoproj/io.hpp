#pragma once

#include <string>

#include "topoproj/equivalence.hpp"
#include "topoproj/persistence.hpp"
#include "topoproj/point_cloud.hpp"

namespace topoproj {

// Shortest decimal that parses back to exactly the same double.
std::string format_double(double v);

// Point clouds and projection frames as headerless numeric CSV, one row per
// point (or matrix row). Malformed content raises io_error naming the row and
// column; numbers are written with round-trip precision.
PointCloud read_points_csv(const std::string& path);
void write_points_csv(const std::string& path, const PointCloud& x);
ProjectionMatrix read_projection_csv(const std::string& path);
void write_projection_csv(const std::string& path, const Eigen::MatrixXd& p);

// One diagram per file: {"scale":"radius","degree":j,"pairs":[[b,d],...]}
// with "inf" standing in for infinite deaths. Doubles survive a write/read
// round trip bit-exactly.
std::string diagram_to_json(const PersistenceDiagram& d);
PersistenceDiagram diagram_from_json(const std::string& text);
PersistenceDiagram read_diagram_json(const std::string& path);
void write_diagram_json(const std::string& path, const PersistenceDiagram& d);

// Interval classification report with both similarity measures.
std::string similarity_to_json(const SimilarityReport& rep);
void write_similarity_json(const std::string& path, const SimilarityReport& rep);

// Whole-file helpers shared by the commands.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace topoproj
