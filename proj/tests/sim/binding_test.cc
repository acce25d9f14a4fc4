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

#include "ctrlforge/sim/binding.h"

#include <cmath>
#include <numbers>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/xml.h"
#include "ctrlforge/sim/physics.h"
#include "testing/creature.h"
#include "testing/models.h"

namespace ctrlforge::sim {
namespace {

using mjcf::Element;
using mjcf::Namespace;
using ::testing::Contains;

// Arena with several creatures, each free to slide in the plane.
struct Scene {
  std::shared_ptr<mjcf::ModelRoot> arena;
  std::vector<testing::Creature> creatures;
  std::vector<Element*> torsos;
  std::vector<Element*> actuators;
};

Scene MakeScene(int num_creatures) {
  Scene s;
  s.arena = mjcf::ModelRoot::Create();
  s.arena->option().Set("timestep", 0.0005);
  s.arena->worldbody().Add("geom", {{"name", "floor"}, {"type", "plane"}, {"size", {3, 3, 0.1}}});
  for (int i = 0; i < num_creatures; ++i) {
    testing::Creature c = testing::MakeCreature(3 + i);
    Element* frame = s.arena->worldbody().Add("site", {{"pos", {i * 1.0, 0, 0.3}}})->Attach(c.model);
    frame->Add("joint", {{"type", "slide"}, {"axis", {1, 0, 0}}, {"damping", 1}});
    frame->Add("joint", {{"type", "slide"}, {"axis", {0, 1, 0}}, {"damping", 1}});
    s.torsos.push_back(c.model->Find(Namespace::kGeom, "torso"));
    for (Element* a : c.model->FindAll(Namespace::kActuator)) s.actuators.push_back(a);
    s.creatures.push_back(std::move(c));
  }
  return s;
}

TEST(BindingTest, CtrlThroughBindingMatchesDirectWrites) {
  Scene scene = MakeScene(3);
  Physics bound = Physics::FromModel(*scene.arena);
  Physics direct = bound;
  Binding actuators = bound.Bind(scene.actuators);
  ASSERT_EQ(static_cast<int>(actuators.size()), bound.model().nu());

  for (int step = 0; step < 50; ++step) {
    const double t = 20 * bound.time();
    Eigen::VectorXd ctrl(actuators.size());
    for (int k = 0; k < ctrl.size(); ++k) ctrl[k] = std::sin(2 * std::numbers::pi * t + k);
    actuators.SetVector("ctrl", ctrl);
    for (int k = 0; k < ctrl.size(); ++k) direct.data().ctrl[actuators.ids()[k]] = ctrl[k];
    bound.Step();
    direct.Step();
  }
  EXPECT_EQ(bound.State(), direct.State());
  EXPECT_NE(bound.State(), Eigen::VectorXd::Zero(bound.State().size()));
}

TEST(BindingTest, ReadsDerivedPositions) {
  Scene scene = MakeScene(3);
  Physics physics = Physics::FromModel(*scene.arena);
  Binding torsos = physics.Bind(scene.torsos);
  Eigen::MatrixXd xpos = torsos.Get("xpos");
  ASSERT_EQ(xpos.rows(), 3);
  ASSERT_EQ(xpos.cols(), 3);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(xpos.row(i).transpose(), physics.data().geom_xpos[torsos.ids()[i]]);
    EXPECT_NEAR(xpos(i, 0), i * 1.0, 1e-12);
  }
}

TEST(BindingTest, StaticFieldsWriteTheModel) {
  Physics physics = Physics::FromXmlString(testing::DoublePendulumXml(1, 0.5, 1, 0.5, 0.05));
  auto model = mjcf::ParseModel(testing::DoublePendulumXml(1, 0.5, 1, 0.5, 0.05));
  // Elements from a different parse are stale for this Physics.
  EXPECT_THROW(physics.Bind(model->Find(Namespace::kJoint, "shoulder")), BindingError);

  Physics own = Physics::FromModel(*model);
  Binding joints = own.Bind(model->FindAll(Namespace::kJoint));
  joints.SetVector("damping", Eigen::Vector2d(0.5, 0.25));
  EXPECT_EQ(own.model().joints[0].damping, 0.5);
  EXPECT_EQ(own.model().joints[1].damping, 0.25);
  EXPECT_EQ(joints.GetVector("damping"), Eigen::Vector2d(0.5, 0.25));

  joints.SetVector("qvel", Eigen::Vector2d(1, 0));
  own.Forward();
  EXPECT_NEAR(own.data().qfrc_passive[0], -0.5, 1e-15);

  Eigen::MatrixXd range(2, 2);
  range << -1, 1, -2, 2;
  joints.Set("range", range);
  EXPECT_EQ(joints.Get("range"), range);
}

TEST(BindingTest, QuaternionsAreScalarFirst) {
  Physics physics = Physics::FromXmlString(testing::kBoxAndSphereXml);
  auto model = mjcf::ParseModel(testing::kBoxAndSphereXml);
  Physics own = Physics::FromModel(*model);
  Binding body = own.Bind(model->Find(Namespace::kBody, "box_and_sphere"));
  Eigen::MatrixXd q = body.Get("xquat");
  // Rotation by -30 degrees about z.
  const double half = -std::numbers::pi / 12;
  EXPECT_NEAR(q(0, 0), std::cos(half), 1e-12);
  EXPECT_NEAR(q(0, 3), std::sin(half), 1e-12);
  Eigen::MatrixXd xmat = body.Get("xmat");
  EXPECT_NEAR(xmat(0, 1), std::sin(std::numbers::pi / 6), 1e-12);  // row-major
}

TEST(BindingTest, Errors) {
  Scene scene = MakeScene(1);
  Physics physics = Physics::FromModel(*scene.arena);
  EXPECT_THROW(physics.Bind(std::vector<Element*>{scene.torsos[0], scene.actuators[0]}),
               BindingError);
  EXPECT_THROW(physics.Bind(&scene.arena->default_class()), BindingError);
  // Added after compilation: not part of this Physics.
  Element* late = scene.arena->worldbody().Add("geom", {{"size", {0.1}}});
  EXPECT_THROW(physics.Bind(late), BindingError);

  Binding torsos = physics.Bind(scene.torsos);
  EXPECT_THROW(torsos.Get("no_such_field"), BindingError);
  EXPECT_THROW(torsos.Set("xpos", Eigen::MatrixXd::Zero(1, 3)), BindingError);
  EXPECT_THROW(torsos.Set("rgba", Eigen::MatrixXd::Zero(2, 4)), BindingError);
  EXPECT_THROW(torsos.GetVector("rgba"), BindingError);
  EXPECT_THAT(torsos.Fields(), Contains("rgba"));
}

TEST(BindingTest, EmptyBinding) {
  Physics physics = Physics::FromXmlString(testing::kBoxAndSphereXml);
  Binding empty = physics.Bind(std::vector<const Element*>{});
  EXPECT_EQ(empty.size(), 0u);
  EXPECT_FALSE(empty.ns().has_value());
  EXPECT_EQ(empty.Get("xpos").size(), 0);
  EXPECT_EQ(empty.GetVector("ctrl").size(), 0);
  EXPECT_NO_THROW(empty.Set("ctrl", Eigen::MatrixXd(0, 0)));
}

TEST(BindingTest, AppearanceEditsShowInRender) {
  auto model = mjcf::ParseModel(testing::kBoxAndSphereXml);
  Physics physics = Physics::FromModel(*model);
  Binding box = physics.Bind(model->Find(Namespace::kGeom, "red_box"));
  box.Set("rgba", (Eigen::MatrixXd(1, 4) << 0, 0, 1, 1).finished());
  Frame frame = physics.Render({.width = 64, .height = 48});
  bool blue = false;
  bool red = false;
  for (std::size_t i = 0; i < frame.rgb.size(); i += 3) {
    blue |= frame.rgb[i + 2] > 60 && frame.rgb[i] == 0 && frame.rgb[i + 1] == 0;
    red |= frame.rgb[i] > 60 && frame.rgb[i + 1] == 0 && frame.rgb[i + 2] == 0;
  }
  EXPECT_TRUE(blue);
  EXPECT_FALSE(red);
}

}  // namespace
}  // namespace ctrlforge::sim
