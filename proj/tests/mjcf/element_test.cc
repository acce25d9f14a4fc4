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

#include "ctrlforge/mjcf/element.h"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/xml.h"
#include "testing/creature.h"

namespace ctrlforge::mjcf {
namespace {

using ::ctrlforge::testing::MakeCreature;
using ::ctrlforge::testing::MakeLeg;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

std::vector<std::string> Identifiers(const ModelRoot& model, Namespace ns) {
  std::vector<std::string> out;
  for (Element* e : model.FindAll(ns)) out.push_back(e->IdentifierRelativeTo(model));
  return out;
}

TEST(ElementTest, JointTypeComesFromDefaultClass) {
  auto leg = MakeLeg(0.1, {1, 0, 0, 1});
  EXPECT_FALSE(leg.hip->Has("type"));
  EXPECT_EQ(leg.hip->GetString("type", ""), "hinge");
  EXPECT_EQ(leg.hip->GetNumber("damping", 0), 2);
  EXPECT_THAT(leg.hip->GetArray("axis", {}), ElementsAre(0, 0, 1));
}

TEST(ElementTest, DuplicateNameRejected) {
  auto model = ModelRoot::Create();
  Element* body = model->worldbody().Add("body");
  body->Add("geom", {{"name", "g"}, {"size", 0.1}});
  EXPECT_THROW(body->Add("geom", {{"name", "g"}}), DuplicateNameError);
  // The failed add leaves no partial element behind.
  EXPECT_EQ(model->FindAll(Namespace::kGeom).size(), 1);
  // Same name in a different namespace is fine.
  EXPECT_NO_THROW(body->Add("site", {{"name", "g"}}));
}

TEST(ElementTest, RenameUpdatesLookup) {
  auto model = ModelRoot::Create();
  Element* geom = model->worldbody().Add("geom", {{"name", "a"}});
  geom->Set("name", "b");
  EXPECT_EQ(model->Find("geom", "a"), nullptr);
  EXPECT_EQ(model->Find("geom", "b"), geom);
  model->worldbody().Add("geom", {{"name", "a"}});
  EXPECT_THROW(geom->Set("name", "a"), DuplicateNameError);
}

TEST(ElementTest, IllegalChildAndAttribute) {
  auto model = ModelRoot::Create();
  EXPECT_THROW(model->worldbody().Add("joint"), SchemaError);
  EXPECT_THROW(model->worldbody().Add("tendon"), SchemaError);
  Element* geom = model->worldbody().Add("geom");
  EXPECT_THROW(geom->Set("joint", "x"), SchemaError);
  EXPECT_THROW(geom->Set("size", {1, 2, 3, 4}), SchemaError);
  EXPECT_THROW(geom->Set("type", "mesh"), SchemaError);
  EXPECT_THROW(geom->Set("name", "a/b"), SchemaError);
}

TEST(ElementTest, ScalarBroadcastsToArray) {
  auto model = ModelRoot::Create();
  Element* geom = model->worldbody().Add("geom", {{"size", 0.1}});
  EXPECT_THAT(geom->GetArray("size", {}), ElementsAre(0.1));
}

TEST(ElementTest, DclassAliasesClass) {
  auto model = ModelRoot::Create();
  Element& big = *model->default_class().Add("default", {{"class", "big"}});
  big.Defaults("geom").Set("size", {0.5});
  Element* geom = model->worldbody().Add("geom", {{"dclass", "big"}});
  EXPECT_EQ(geom->GetReference("class"), &big);
  EXPECT_THAT(geom->GetArray("size", {}), ElementsAre(0.5));
  EXPECT_THAT(Serialize(*model), HasSubstr("<geom class=\"big\"/>"));
}

TEST(ElementTest, ExplicitValueShadowsDefaultAndRemovalRestoresIt) {
  auto model = ModelRoot::Create();
  model->default_class().Defaults("joint").Set("damping", 3);
  Element* joint = model->worldbody().Add("body")->Add("joint");
  EXPECT_EQ(joint->GetNumber("damping", 0), 3);
  joint->Set("damping", 7);
  EXPECT_EQ(joint->GetNumber("damping", 0), 7);
  joint->Remove("damping");
  EXPECT_EQ(joint->GetNumber("damping", 0), 3);
}

TEST(ElementTest, NestedClassesFallBackParentward) {
  auto model = ModelRoot::Create();
  model->default_class().Defaults("geom").Set("rgba", {1, 0, 0, 1});
  Element* outer = model->default_class().Add("default", {{"class", "outer"}});
  outer->Defaults("geom").Set("size", {0.2});
  Element* inner = outer->Add("default", {{"class", "inner"}});
  inner->Defaults("geom").Set("density", 50);
  Element* body = model->worldbody().Add("body", {{"childclass", "inner"}});
  Element* geom = body->Add("geom");
  EXPECT_EQ(geom->DefaultClass(), inner);
  EXPECT_EQ(geom->GetNumber("density", 0), 50);
  EXPECT_THAT(geom->GetArray("size", {}), ElementsAre(0.2));
  EXPECT_THAT(geom->GetArray("rgba", {}), ElementsAre(1, 0, 0, 1));
  Element* other = body->Add("geom", {{"class", "outer"}});
  EXPECT_EQ(other->GetNumber("density", 0), 0);
}

TEST(ElementTest, ElementReferenceSerializesAsIdentifier) {
  auto leg = MakeLeg(0.1, {1, 0, 0, 1});
  Element* act = leg.model->FindAll(Namespace::kActuator)[0];
  ASSERT_NE(act->GetExplicit("joint"), nullptr);
  EXPECT_TRUE(act->GetExplicit("joint")->is_element());
  EXPECT_EQ(act->GetReference("joint"), leg.hip);
  EXPECT_THAT(Serialize(*leg.model), HasSubstr("<position joint=\"hip\" kp=\"10\"/>"));
  // Renaming the target is picked up by the reference.
  leg.hip->Set("name", "hip2");
  EXPECT_THAT(Serialize(*leg.model), HasSubstr("joint=\"hip2\""));
}

TEST(ElementTest, NameReferenceResolvesLazily) {
  auto model = ModelRoot::Create();
  Element* act = model->actuator().Add("motor", {{"joint", "later"}});
  EXPECT_THROW(act->GetReference("joint"), ReferenceError);
  Element* joint = model->worldbody().Add("body")->Add("joint", {{"name", "later"}});
  EXPECT_EQ(act->GetReference("joint"), joint);
}

TEST(ElementTest, ReferenceKindIsChecked) {
  auto model = ModelRoot::Create();
  Element* geom = model->worldbody().Add("geom");
  EXPECT_THROW(model->actuator().Add("motor", {{"joint", geom}}), SchemaError);
}

TEST(FindTest, FindGeomByName) {
  auto creature = MakeCreature(4);
  Element* torso = creature.model->Find("geom", "torso");
  ASSERT_NE(torso, nullptr);
  EXPECT_EQ(torso->GetString("type", ""), "ellipsoid");
  EXPECT_EQ(creature.model->Find("geom", "missing"), nullptr);
  EXPECT_THROW(creature.model->Find("tendon", "x"), SchemaError);
}

TEST(FindTest, FindAllCountsAttachedActuators) {
  auto creature = MakeCreature(4);
  EXPECT_EQ(creature.model->FindAll("actuator").size(), 8);
  EXPECT_EQ(creature.model->FindAll("joint").size(), 8);
  EXPECT_TRUE(ModelRoot::Create()->FindAll("geom").empty());
}

TEST(FindTest, ChildFindAllIsIsolated) {
  auto creature = MakeCreature(3);
  auto arena = ModelRoot::Create("arena");
  Element* frame = arena->worldbody().Add("site")->Attach(creature.model);
  Element* free = frame->Add("freejoint");
  auto& leg = creature.legs[1];
  EXPECT_THAT(leg.model->FindAll("joint"), ElementsAre(leg.hip, leg.knee));
  std::vector<Element*> all = arena->FindAll("joint");
  EXPECT_EQ(all.size(), 7);
  EXPECT_EQ(all.front(), free);
  EXPECT_EQ(std::count(all.begin(), all.end(), free), 1);
  for (Element* j : creature.model->FindAll("joint")) EXPECT_NE(j, free);
}

TEST(AttachTest, PrefixesAreDeduplicated) {
  auto body = ModelRoot::Create("body");
  std::vector<testing::Leg> legs;
  for (int i = 0; i < 3; ++i) {
    legs.push_back(MakeLeg(0.1, {1, 1, 1, 1}));
    legs.back().model->set_model_name("leg");
    body->worldbody().Add("site")->Attach(legs.back().model);
  }
  EXPECT_EQ(legs[0].model->prefix(), "leg");
  EXPECT_EQ(legs[1].model->prefix(), "leg_1");
  EXPECT_EQ(legs[2].model->prefix(), "leg_2");
  EXPECT_EQ(body->Find("joint", "leg_1/knee"), legs[1].knee);
  EXPECT_EQ(legs[1].knee->FullIdentifier(), "leg_1/knee");
  EXPECT_THAT(Identifiers(*body, Namespace::kJoint),
              ElementsAre("leg/hip", "leg/knee", "leg_1/hip", "leg_1/knee", "leg_2/hip",
                          "leg_2/knee"));
  EXPECT_EQ(body->Find("body", "leg_2/"), legs[2].model->attachment_frame());
}

TEST(AttachTest, NestedPrefixesCompose) {
  auto creature = MakeCreature(2);
  creature.model->set_model_name("creature");
  auto arena = ModelRoot::Create("arena");
  arena->worldbody().Add("site")->Attach(creature.model);
  EXPECT_EQ(creature.legs[1].knee->FullIdentifier(), "creature/model_1/knee");
  EXPECT_EQ(creature.legs[1].knee->IdentifierRelativeTo(*creature.model), "model_1/knee");
  EXPECT_EQ(arena->Find("joint", "creature/model_1/knee"), creature.legs[1].knee);
  EXPECT_EQ(creature.model->Find("joint", "model_1/knee"), creature.legs[1].knee);
}

TEST(AttachTest, FrameCopiesSitePose) {
  auto host = ModelRoot::Create();
  Element* site = host->worldbody().Add("site", {{"pos", {1, 2, 3}}, {"euler", {0, 0, 45}}});
  Element* frame = site->Attach(ModelRoot::Create("c"));
  EXPECT_EQ(frame->tag(), "body");
  EXPECT_EQ(frame->parent(), &host->worldbody());
  EXPECT_THAT(frame->GetArray("pos", {}), ElementsAre(1, 2, 3));
  EXPECT_THAT(frame->GetArray("euler", {}), ElementsAre(0, 0, 45));
  // The frame sits right after its site.
  auto children = host->worldbody().children();
  EXPECT_EQ(children[1], frame);
}

TEST(AttachTest, EmptyChildOnlyAddsFrame) {
  auto creature = MakeCreature(2);
  std::vector<std::vector<std::string>> before;
  for (int k = 0; k < kNumNamespaces; ++k) {
    before.push_back(Identifiers(*creature.model, static_cast<Namespace>(k)));
  }
  creature.model->worldbody().Add("body", {{"name", "host"}})->Attach(ModelRoot::Create("e"));
  for (int k = 0; k < kNumNamespaces; ++k) {
    auto ns = static_cast<Namespace>(k);
    std::vector<std::string> after = Identifiers(*creature.model, ns);
    if (ns == Namespace::kBody) {
      before[k].push_back("host");
      before[k].push_back("e/");
    }
    if (ns == Namespace::kDefault) before[k].push_back("e/");
    EXPECT_EQ(after, before[k]) << NamespaceName(ns);
  }
}

TEST(AttachTest, RejectsCyclesAndDoubleAttachment) {
  auto a = ModelRoot::Create("a");
  auto b = ModelRoot::Create("b");
  Element* site_a = a->worldbody().Add("site");
  Element* site_b = b->worldbody().Add("site");
  EXPECT_THROW(site_a->Attach(a), AttachmentError);
  site_a->Attach(b);
  EXPECT_THROW(site_b->Attach(a), AttachmentError);
  auto c = ModelRoot::Create("c");
  EXPECT_THROW(c->worldbody().Add("site")->Attach(b), AttachmentError);
  EXPECT_THROW(a->worldbody().Add("geom")->Attach(c), AttachmentError);
}

TEST(AttachTest, ReferencesSurviveAttachment) {
  auto leg = MakeLeg(0.1, {1, 1, 1, 1});
  Element* act = leg.model->FindAll("actuator")[1];
  auto host = ModelRoot::Create();
  host->worldbody().Add("site")->Attach(leg.model);
  host->worldbody().Add("site")->Attach(MakeLeg(0.1, {1, 1, 1, 1}).model);
  EXPECT_EQ(act->GetReference("joint"), leg.knee);
  EXPECT_THAT(Serialize(*host), HasSubstr("joint=\"model/knee\""));
  EXPECT_THAT(Serialize(*host), HasSubstr("joint=\"model_1/knee\""));
}

TEST(AttachTest, ConflictingOptionsRejected) {
  auto parent = ModelRoot::Create();
  parent->option().Set("timestep", 0.002);
  auto same = ModelRoot::Create("same");
  same->option().Set("timestep", 0.002);
  auto other = ModelRoot::Create("other");
  other->option().Set("timestep", 0.01);
  EXPECT_NO_THROW(parent->worldbody().Add("site")->Attach(same));
  EXPECT_THROW(parent->worldbody().Add("site")->Attach(other), AttachmentError);
  // Edits after attachment are caught when validating the whole tree.
  same->option().Set("timestep", 0.004);
  EXPECT_THROW(parent->ValidateOptions(), CompileError);
}

TEST(AttachTest, ChildInheritsHostRootDefaults) {
  auto host = ModelRoot::Create();
  host->default_class().Defaults("geom").Set("density", 300);
  auto child = ModelRoot::Create("c");
  Element* geom = child->worldbody().Add("geom");
  EXPECT_FALSE(geom->Get("density").has_value());
  host->worldbody().Add("site")->Attach(child);
  EXPECT_EQ(geom->GetNumber("density", 0), 300);
}

TEST(ModelRootTest, VersionTracksNestedMutation) {
  auto creature = MakeCreature(2);
  std::uint64_t v = creature.model->version();
  creature.legs[0].knee->Set("damping", 5);
  EXPECT_GT(creature.model->version(), v);
}

class ProvenanceTest : public ::testing::Test {
 protected:
  void TearDown() override { SetDebugMode(false); }
};

TEST_F(ProvenanceTest, UnavailableWithoutDebugMode) {
  SetDebugMode(false);
  auto model = ModelRoot::Create();
  Element* geom = model->worldbody().Add("geom");
  try {
    geom->LastModification();
    FAIL() << "expected ProvenanceUnavailableError";
  } catch (const ProvenanceUnavailableError& e) {
    EXPECT_THAT(e.what(), HasSubstr("CTRLFORGE_DEBUG=1"));
  }
}

TEST_F(ProvenanceTest, RecordsCallSiteOfLastModification) {
  SetDebugMode(true);
  auto model = ModelRoot::Create();
  int add_line = __LINE__ + 1;
  Element* geom = model->worldbody().Add("geom", {{"size", 0.1}});
  EXPECT_EQ(geom->LastModification().line, add_line);
  int set_line = __LINE__ + 1;
  geom->Set("rgba", {1, 0, 0, 1});
  EXPECT_EQ(geom->LastModification().line, set_line);
  EXPECT_EQ(geom->AttributeProvenance("rgba").line, set_line);
  EXPECT_EQ(geom->AttributeProvenance("size").line, add_line);
  EXPECT_THAT(geom->LastModification().file, HasSubstr("element_test.cc"));
  EXPECT_EQ(geom->History().size(), 3);
}

TEST_F(ProvenanceTest, DumpWritesOneFilePerElement) {
  SetDebugMode(true);
  auto creature = MakeCreature(2);
  auto dir = std::filesystem::temp_directory_path() / "ctrlforge_provenance_dump_test";
  std::filesystem::remove_all(dir);
  int written = DumpProvenance(*creature.model, dir.string());
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    (void)entry;
    ++files;
  }
  EXPECT_EQ(files, written);
  EXPECT_GT(written, 20);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace ctrlforge::mjcf
