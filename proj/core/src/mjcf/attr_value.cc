// Copyright 2026 The ctrlforge Authors
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

#include "ctrlforge/mjcf/attr_value.h"

#include <charconv>
#include <cmath>
#include <system_error>

#include "ctrlforge/errors.h"

namespace ctrlforge::mjcf {

double AttrValue::AsNumber() const {
  if (const double* v = std::get_if<double>(&value_)) return *v;
  if (const auto* a = std::get_if<std::vector<double>>(&value_); a && a->size() == 1) {
    return (*a)[0];
  }
  throw SchemaError("attribute value is not a number");
}

std::vector<double> AttrValue::AsVector() const {
  if (const double* v = std::get_if<double>(&value_)) return {*v};
  if (const auto* a = std::get_if<std::vector<double>>(&value_)) return *a;
  throw SchemaError("attribute value is not numeric");
}

std::string FormatNumber(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string FormatArray(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += FormatNumber(v[i]);
  }
  return out;
}

std::optional<std::vector<double>> ParseNumbers(std::string_view text) {
  std::vector<double> out;
  const char* p = text.data();
  const char* end = p + text.size();
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (true) {
    while (p < end && is_space(*p)) ++p;
    if (p == end) break;
    // from_chars rejects a leading '+', which XML authors do write.
    if (*p == '+') ++p;
    double v = 0;
    auto res = std::from_chars(p, end, v);
    if (res.ec != std::errc() || !std::isfinite(v)) return std::nullopt;
    p = res.ptr;
    if (p < end && !is_space(*p)) return std::nullopt;
    out.push_back(v);
  }
  return out;
}

}  // namespace ctrlforge::mjcf
