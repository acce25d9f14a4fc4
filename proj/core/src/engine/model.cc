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

#include "ctrlforge/engine/model.h"

namespace ctrlforge::engine {

int CompiledModel::NameToId(mjcf::Namespace ns, std::string_view name) const {
  const auto& index = name_index_[static_cast<int>(ns)];
  auto it = index.find(std::string(name));
  return it == index.end() ? -1 : it->second;
}

int CompiledModel::SerialToId(mjcf::Namespace ns, std::uint64_t serial) const {
  const auto& index = serial_index_[static_cast<int>(ns)];
  auto it = index.find(serial);
  return it == index.end() ? -1 : it->second;
}

int CompiledModel::Count(mjcf::Namespace ns) const {
  return static_cast<int>(names[static_cast<int>(ns)].size());
}

void CompiledModel::IndexNames() {
  for (int k = 0; k < mjcf::kNumNamespaces; ++k) {
    name_index_[k].clear();
    serial_index_[k].clear();
    for (std::size_t i = 0; i < names[k].size(); ++i) {
      if (!names[k][i].empty()) name_index_[k].emplace(names[k][i], static_cast<int>(i));
    }
    for (std::size_t i = 0; i < serials[k].size(); ++i) {
      if (serials[k][i] != 0) serial_index_[k].emplace(serials[k][i], static_cast<int>(i));
    }
  }
}

}  // namespace ctrlforge::engine
