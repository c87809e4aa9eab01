// Copyright 2026 The Twinscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twinscope/report.hpp"

#include <cmath>
#include <cstdio>

#include "twinscope/twins.hpp"

namespace twinscope::cli {

namespace {

void write_number(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
  // Keep floats recognizable as floats when they happen to be integral.
  const std::string_view s(buf);
  if (s.find_first_of(".eEn") == std::string_view::npos) out += ".0";
}

void write_string(std::string& out, const std::string& s) { out += Json(s).dump(); }

void write(std::string& out, const Json& node, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (node.type()) {
    case Json::value_t::object: {
      if (node.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : node.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        write_string(out, key);
        out += ": ";
        write(out, value, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (node.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : node)
        if (v.is_structured()) flat = false;
      if (flat) {
        out += "[";
        for (std::size_t k = 0; k < node.size(); ++k) {
          if (k) out += ", ";
          write(out, node[k], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < node.size(); ++k) {
        if (k) out += ",\n";
        out += inner;
        write(out, node[k], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      write_number(out, node.get<double>());
      return;
    default:
      out += node.dump();
      return;
  }
}

}  // namespace

std::string serialize(const Json& doc) {
  std::string out;
  write(out, doc, 0);
  out += "\n";
  return out;
}

Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json to_json(linalg::Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json to_json(const linalg::Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const linalg::Vector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v[k]));
  return out;
}

Json to_json(const linalg::RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(number(v[k]));
  return out;
}

Json pauli_json(const linalg::Matrix& a) {
  Json out = Json::array();
  for (double c : twins::to_pauli(a)) out.push_back(number(c));
  return out;
}

}  // namespace twinscope::cli
