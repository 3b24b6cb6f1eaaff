#include "report.hpp"

#include <cstdio>
#include <cstdlib>

namespace esvs::cli {

double round9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::strtod(buf, nullptr);
}

std::string format9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string MetricReport::to_json() const {
  ordered_json j;
  j["metric"] = metric;
  j["params"] = params;
  j["method"] = method;
  j["values"] = values;
  ordered_json meta;
  meta["fock_dim"] = fock_dim > 0 ? ordered_json(fock_dim) : ordered_json(nullptr);
  meta["tolerance"] = tolerance >= 0.0 ? ordered_json(round9(tolerance)) : ordered_json(nullptr);
  meta["terms_used"] = terms_used >= 0 ? ordered_json(terms_used) : ordered_json(nullptr);
  meta["warnings"] = warnings;
  j["meta"] = meta;
  return j.dump(2) + "\n";
}

}  // namespace esvs::cli
