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

#ifndef CTRLFORGE_ENGINE_COMPILER_H_
#define CTRLFORGE_ENGINE_COMPILER_H_

#include "ctrlforge/engine/model.h"
#include "ctrlforge/mjcf/element.h"

namespace ctrlforge::engine {

// Compiles `model` and everything attached to it. Identifiers in the result
// are relative to `model`. Throws CompileError for unsupported joints,
// invalid attribute combinations, massless movable bodies and option
// conflicts; when provenance tracking is on and a dump directory is
// configured, the model's provenance logs are written there first.
CompiledModel Compile(const mjcf::ModelRoot& model);

}  // namespace ctrlforge::engine

#endif  // CTRLFORGE_ENGINE_COMPILER_H_
