#pragma once

// JSON reports with every float written at 17 significant digits, so that
// certificates diff cleanly between runs.

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "sbridge/direction.hpp"
#include "sbridge/geometry.hpp"

namespace report {

using json = nlohmann::ordered_json;

inline void write(std::ostream& out, const json& j, int indent = 0) {
  const std::string pad(indent + 2, ' ');
  const std::string close(indent, ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out << buf;
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        break;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << json(it.key()).dump() << ": ";
        write(out, it.value(), indent + 2);
      }
      out << "\n" << close << "}";
      break;
    }
    case json::value_t::array: {
      // short arrays of scalars stay on one line
      bool flat = j.size() <= 4;
      for (const auto& e : j) flat = flat && e.is_primitive();
      if (j.empty() || flat) {
        out << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          write(out, j[i], indent);
        }
        out << "]";
        break;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        write(out, j[i], indent + 2);
      }
      out << "\n" << close << "]";
      break;
    }
    default:
      out << j.dump();
  }
  if (indent == 0) out << "\n";
}

inline json direction(const sbridge::Direction& v) {
  return json::array({v[0], v[1], v[2]});
}

inline json sweep(const sbridge::SweepReport& r) {
  json j;
  j["direction_count"] = r.direction_count;
  j["max_maxima"] = r.max_maxima;
  j["argmax_direction"] = direction(r.argmax_direction);
  j["min_maxima"] = r.min_maxima;
  j["argmin_direction"] = direction(r.argmin_direction);
  j["parity_violations"] = r.parity_violations;
  j["perturbations"] = r.perturbations;
  return j;
}

}  // namespace report
