#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace stripshear::cli {

/// Shortest-safe round trip: 17 significant digits.
std::string format_double(double v);

class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void close();

private:
  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
};

struct Series {
  std::string label;
  std::vector<double> x, y;
  std::string color{"#1f4e9c"};
  bool dashed{false};
  bool markers{false};  ///< draw points instead of a polyline
};

struct Plot {
  std::string title, x_label, y_label;
  bool log_x{false};
  std::vector<Series> series;
};

std::string render_svg(const Plot& plot);
void write_svg(const std::string& path, const Plot& plot);
void write_json(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace stripshear::cli
