#pragma once

#include <string>

#include <json.hpp>

namespace esvs::cli {

using ordered_json = nlohmann::ordered_json;

// All numbers we emit are rounded to 9 significant digits so identical
// invocations byte-match regardless of parallelism or platform libm noise.
double round9(double v);
std::string format9(double v);

struct MetricReport {
  std::string metric;
  ordered_json params = ordered_json::object();
  std::string method = "closed_form";
  ordered_json values = ordered_json::object();
  int fock_dim = 0;         // 0 = not applicable
  double tolerance = -1.0;  // < 0 = not applicable
  int terms_used = -1;      // < 0 = not applicable
  std::vector<std::string> warnings;

  std::string to_json() const;
};

}  // namespace esvs::cli
