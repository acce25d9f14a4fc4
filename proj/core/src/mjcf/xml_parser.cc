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

#include <expat.h>

#include <fstream>
#include <memory>
#include <source_location>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/xml.h"

namespace ctrlforge::mjcf {
namespace {

struct RawNode {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> attributes;
  int line = 0;
  int column = 0;
  std::vector<std::unique_ptr<RawNode>> children;
};

struct ParseState {
  XML_Parser parser = nullptr;
  std::unique_ptr<RawNode> root;
  std::vector<RawNode*> stack;
  std::string error;
  int error_line = 0;
  int error_column = 0;
};

void XMLCALL OnStart(void* data, const XML_Char* name, const XML_Char** attrs) {
  auto* state = static_cast<ParseState*>(data);
  auto node = std::make_unique<RawNode>();
  node->tag = name;
  node->line = static_cast<int>(XML_GetCurrentLineNumber(state->parser));
  node->column = static_cast<int>(XML_GetCurrentColumnNumber(state->parser)) + 1;
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    node->attributes.emplace_back(attrs[i], attrs[i + 1]);
  }
  RawNode* raw = node.get();
  if (state->stack.empty()) {
    state->root = std::move(node);
  } else {
    state->stack.back()->children.push_back(std::move(node));
  }
  state->stack.push_back(raw);
}

void XMLCALL OnEnd(void* data, const XML_Char* /*name*/) {
  static_cast<ParseState*>(data)->stack.pop_back();
}

void XMLCALL OnText(void* data, const XML_Char* text, int len) {
  auto* state = static_cast<ParseState*>(data);
  if (!state->error.empty()) return;
  for (int i = 0; i < len; ++i) {
    char c = text[i];
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
      state->error = "unexpected text content";
      state->error_line = static_cast<int>(XML_GetCurrentLineNumber(state->parser));
      state->error_column = static_cast<int>(XML_GetCurrentColumnNumber(state->parser)) + 1;
      XML_StopParser(state->parser, XML_FALSE);
      return;
    }
  }
}

std::unique_ptr<RawNode> ParseRaw(std::string_view xml) {
  ParseState state;
  state.parser = XML_ParserCreate("UTF-8");
  XML_SetUserData(state.parser, &state);
  XML_SetElementHandler(state.parser, OnStart, OnEnd);
  XML_SetCharacterDataHandler(state.parser, OnText);
  XML_Status status =
      XML_Parse(state.parser, xml.data(), static_cast<int>(xml.size()), XML_TRUE);
  if (!state.error.empty()) {
    XML_ParserFree(state.parser);
    throw XmlSyntaxError(state.error, state.error_line, state.error_column);
  }
  if (status != XML_STATUS_OK) {
    std::string what = XML_ErrorString(XML_GetErrorCode(state.parser));
    int line = static_cast<int>(XML_GetCurrentLineNumber(state.parser));
    int column = static_cast<int>(XML_GetCurrentColumnNumber(state.parser)) + 1;
    XML_ParserFree(state.parser);
    throw XmlSyntaxError(what, line, column);
  }
  XML_ParserFree(state.parser);
  if (!state.root) throw XmlSyntaxError("no root element", 1, 1);
  return std::move(state.root);
}

std::string Location(const RawNode& node) {
  return "line " + std::to_string(node.line) + ", column " + std::to_string(node.column) + ": ";
}

}  // namespace

// Builds a ModelRoot from a raw tree through the private Element interface.
class XmlBuilder {
 public:
  std::shared_ptr<ModelRoot> Build(const RawNode& root) {
    if (root.tag != "mujoco") {
      throw SchemaError(Location(root) + "root element must be <mujoco>, got <" + root.tag +
                        ">");
    }
    model_ = ModelRoot::Create();
    ApplyAttributes(*model_->root_, root);
    for (const auto& child : root.children) {
      Element* section = nullptr;
      for (Element* s : model_->sections_) {
        if (s->tag() == child->tag) section = s;
      }
      if (section == nullptr) {
        throw SchemaError(Location(*child) + "<" + child->tag +
                          "> is not allowed inside <mujoco>");
      }
      if (section->source_line_ == 0) section->source_line_ = child->line;
      ApplyAttributes(*section, *child);
      BuildChildren(*section, *child);
    }
    ResolveReferences(*model_->root_);
    model_->version_ = 0;
    return std::move(model_);
  }

 private:
  void ApplyAttributes(Element& element, const RawNode& node) {
    for (const auto& [key, value] : node.attributes) {
      try {
        element.SetInternal(key, value, /*from_parser=*/true, std::source_location::current());
      } catch (const SchemaError& e) {
        throw SchemaError(Location(node) + e.what());
      } catch (const DuplicateNameError& e) {
        throw DuplicateNameError(Location(node) + e.what());
      }
    }
  }

  void BuildChildren(Element& parent, const RawNode& node) {
    for (const auto& raw : node.children) {
      Element* child = nullptr;
      try {
        child = parent.AddInternal(raw->tag);
      } catch (const SchemaError& e) {
        throw SchemaError(Location(*raw) + e.what());
      }
      child->source_line_ = raw->line;
      if (model_->debug_) {
        child->history_.push_back(
            {"parsed from XML line " + std::to_string(raw->line), "<xml>",
             static_cast<std::uint32_t>(raw->line), ""});
      }
      ApplyAttributes(*child, *raw);
      BuildChildren(*child, *raw);
    }
  }

  void ResolveReferences(Element& element) {
    for (std::size_t i = 0; i < element.attrs_.size(); ++i) {
      const AttrSchema& attr = element.schema_->attributes[i];
      auto& value = element.attrs_[i];
      if (attr.kind != AttrKind::kReference || !value || !value->is_name_ref()) continue;
      if (attr.target == Namespace::kDefault && value->AsNameRef().name == "main") {
        *value = &model_->default_class();
        continue;
      }
      *value = element.Resolve(attr, *value);
    }
    for (auto& child : element.children_) ResolveReferences(*child);
  }

  std::shared_ptr<ModelRoot> model_;
};

std::shared_ptr<ModelRoot> ParseModel(std::string_view xml) {
  std::unique_ptr<RawNode> raw = ParseRaw(xml);
  return XmlBuilder().Build(*raw);
}

std::shared_ptr<ModelRoot> ParseModelFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseModel(buffer.str());
}

}  // namespace ctrlforge::mjcf
