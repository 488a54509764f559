// Copyright 2026 The qmeas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmeas/errors.hpp"
#include "qmeas/povm.hpp"

namespace qmeas {

/// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Schema "povm/1": UTF-8 JSON document
//   {
//     "schema_version": "povm/1",
//     "dim": d,
//     "elements": [ element, ... ],   element = dim x dim array of [re, im]
//     "labels": ["...", ...]          (optional)
//   }
// NaN and infinities are rejected.

inline nlohmann::json povm_to_json(const Povm& p) {
  nlohmann::json doc;
  doc["schema_version"] = "povm/1";
  doc["dim"] = p.dim();
  nlohmann::json elements = nlohmann::json::array();
  for (const ComplexMatrix& a : p.elements()) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < p.dim(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < p.dim(); ++c)
        row.push_back({a.at(r, c).real(), a.at(r, c).imag()});
      rows.push_back(std::move(row));
    }
    elements.push_back(std::move(rows));
  }
  doc["elements"] = std::move(elements);
  doc["labels"] = p.labels();
  return doc;
}

namespace detail {

inline double finite_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(where + ": NaN/Inf not permitted");
  return v;
}

}  // namespace detail

inline Povm povm_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("document root: expected an object");
  if (!doc.contains("schema_version") || doc["schema_version"] != "povm/1")
    throw ParseError("schema_version: expected \"povm/1\"");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    throw ParseError("dim: expected an integer");
  const int d = doc["dim"].get<int>();
  if (d < 1 || d > 64) throw ParseError("dim: out of supported range [1, 64]");
  if (!doc.contains("elements") || !doc["elements"].is_array())
    throw ParseError("elements: expected an array");

  std::vector<ComplexMatrix> elements;
  for (size_t e = 0; e < doc["elements"].size(); ++e) {
    const auto& rows = doc["elements"][e];
    const std::string here = "elements[" + std::to_string(e) + "]";
    if (!rows.is_array() || rows.size() != static_cast<size_t>(d))
      throw ParseError(here + ": expected " + std::to_string(d) + " rows");
    ComplexMatrix m(d);
    for (int r = 0; r < d; ++r) {
      const auto& row = rows[r];
      if (!row.is_array() || row.size() != static_cast<size_t>(d))
        throw ParseError(here + "[" + std::to_string(r) + "]: expected " + std::to_string(d) +
                         " entries");
      for (int c = 0; c < d; ++c) {
        const auto& pair = row[c];
        const std::string cell = here + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
        if (!pair.is_array() || pair.size() != 2)
          throw ParseError(cell + ": expected an [re, im] pair");
        m.at(r, c) = Complex(detail::finite_number(pair[0], cell + ".re"),
                             detail::finite_number(pair[1], cell + ".im"));
      }
    }
    elements.push_back(std::move(m));
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() || doc["labels"].size() != elements.size())
      throw ParseError("labels: expected one label per element");
    for (const auto& l : doc["labels"]) {
      if (!l.is_string()) throw ParseError("labels: expected strings");
      labels.push_back(l.get<std::string>());
    }
  }

  const PovmValidation report = validate_elements(d, elements);
  if (!report.valid) throw ParseError("validation: " + report.message);
  return Povm(d, std::move(elements), std::move(labels));
}

inline Povm load_povm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(path + ": " + err.what());
  }
  try {
    return povm_from_json(doc);
  } catch (const ParseError& err) {
    throw ParseError(path + ": " + err.what());
  }
}

inline void save_povm(const Povm& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << povm_to_json(p).dump(2) << "\n";
}

/// Deterministic CSV: header row, LF endings, 17-significant-digit reals.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {
    body_ += join(columns_);
    body_ += '\n';
  }

  void add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size())
      throw DimMismatchError("CsvWriter: row width mismatch");
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_real(v));
    body_ += join(cells);
    body_ += '\n';
    ++rows_;
  }

  const std::string& str() const { return body_; }
  int rows() const { return rows_; }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    out << body_;
  }

 private:
  static std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    return line;
  }

  std::vector<std::string> columns_;
  std::string body_;
  int rows_ = 0;
};

}  // namespace qmeas
