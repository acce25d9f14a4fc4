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

#include "cli/serve.h"

#include <chrono>
#include <cmath>
#include <memory>
#include <string>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "ctrlforge/errors.h"
#include "ctrlforge/suite/suite.h"

namespace ctrlforge::cli {
namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr char kTask[] = "pendulum:swingup";
constexpr std::uint64_t kSeed = 7;
constexpr std::uint64_t kPolicySeed = 11;

class Client {
 public:
  explicit Client(std::uint16_t port) : ws_(io_) {
    asio::ip::tcp::resolver resolver(io_);
    asio::connect(ws_.next_layer(), resolver.resolve("127.0.0.1", std::to_string(port)));
    ws_.handshake("127.0.0.1", "/");
  }

  json Read() {
    beast::flat_buffer buffer;
    ws_.read(buffer);
    return json::parse(beast::buffers_to_string(buffer.data()));
  }

  json ReadFrame() {
    for (;;) {
      json message = Read();
      if (message["type"] == "frame") return message;
    }
  }

  template <typename Predicate>
  json ReadFrameUntil(Predicate predicate, int max_frames = 500) {
    for (int i = 0; i < max_frames; ++i) {
      json frame = ReadFrame();
      if (predicate(frame)) return frame;
    }
    ADD_FAILURE() << "condition not met within " << max_frames << " frames";
    return {};
  }

  void Send(const json& message) {
    ws_.text(true);
    ws_.write(asio::buffer(message.dump()));
  }
  void Send(const char* type) { Send(json{{"v", 1}, {"type", type}}); }

  void Close() { ws_.close(websocket::close_code::normal); }

 private:
  asio::io_context io_;
  websocket::stream<asio::ip::tcp::socket> ws_;
};

std::unique_ptr<ViewerSimulation> MakeSimulation(PolicyKind policy = PolicyKind::kRandom) {
  return std::make_unique<ViewerSimulation>(kTask, suite::Load(kTask, {.seed = kSeed}), policy,
                                            kPolicySeed);
}

// State after `steps` control steps of the same task, seed and policy,
// without a server.
std::pair<Eigen::VectorXd, Eigen::VectorXd> Headless(std::int64_t steps,
                                                     PolicyKind kind = PolicyKind::kRandom) {
  auto env = suite::Load(kTask, {.seed = kSeed});
  Policy policy(kind, *env, kPolicySeed);
  env->Reset();
  for (std::int64_t i = 0; i < steps; ++i) env->Step(policy.Act());
  return {env->physics()->data().qpos, env->physics()->data().qvel};
}

Eigen::VectorXd FromJson(const json& values) {
  Eigen::VectorXd out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].get<double>();
  return out;
}

json Perturb(int body, std::vector<double> force, int substeps) {
  return {{"v", 1}, {"type", "perturb"}, {"body", body}, {"force", force}, {"substeps", substeps}};
}

class ServeTest : public ::testing::Test {
 protected:
  void StartServer(PolicyKind policy = PolicyKind::kRandom) {
    simulation_ = MakeSimulation(policy);
    server_ = std::make_unique<ViewerServer>(*simulation_, ServeOptions{});
    port_ = server_->Start();
  }
  void TearDown() override {
    if (server_) server_->Stop();
  }

  std::unique_ptr<ViewerSimulation> simulation_;
  std::unique_ptr<ViewerServer> server_;
  std::uint16_t port_ = 0;
};

TEST_F(ServeTest, HelloThenAtLeastTenFramesInTwoSeconds) {
  StartServer();
  EXPECT_NE(port_, 0);
  Client client(port_);
  const auto start = Clock::now();
  json hello = client.Read();
  EXPECT_EQ(hello["v"], 1);
  EXPECT_EQ(hello["type"], "hello");
  EXPECT_EQ(hello["task"], kTask);
  auto env = suite::Load(kTask);
  const int ngeom = env->physics()->model().ngeom();
  EXPECT_EQ(hello["geoms"].size(), static_cast<std::size_t>(ngeom));
  EXPECT_EQ(hello["control_timestep"].get<double>(), env->control_timestep());
  int frames = 0;
  while (Clock::now() - start < std::chrono::seconds(2) && frames < 10) {
    json frame = client.ReadFrame();
    ++frames;
    EXPECT_EQ(frame["geoms"].size(), static_cast<std::size_t>(ngeom));
    for (const json& geom : frame["geoms"]) {
      EXPECT_NEAR(FromJson(geom["quat"]).norm(), 1.0, 1e-12);
    }
  }
  EXPECT_GE(frames, 10);
  EXPECT_LT(Clock::now() - start, std::chrono::seconds(2));
}

TEST_F(ServeTest, MessageFreeSessionMatchesHeadlessBitwise) {
  StartServer();
  Client client(port_);
  for (int i = 0; i < 20; ++i) {
    json frame = client.ReadFrame();
    const std::int64_t step = frame["step"];
    ASSERT_LT(step, 1000);
    auto [qpos, qvel] = Headless(step);
    const Eigen::VectorXd served_qpos = FromJson(frame["qpos"]);
    const Eigen::VectorXd served_qvel = FromJson(frame["qvel"]);
    ASSERT_EQ(served_qpos.size(), qpos.size());
    EXPECT_EQ(std::memcmp(served_qpos.data(), qpos.data(), sizeof(double) * qpos.size()), 0)
        << "step " << step;
    EXPECT_EQ(std::memcmp(served_qvel.data(), qvel.data(), sizeof(double) * qvel.size()), 0)
        << "step " << step;
  }
}

TEST_F(ServeTest, PerturbChangesTrajectory) {
  StartServer(PolicyKind::kZero);
  Client client(port_);
  client.Send("pause");
  json paused = client.ReadFrameUntil([](const json& f) { return f["paused"] == true; });
  const std::int64_t step = paused["step"];
  auto [qpos, qvel] = Headless(step, PolicyKind::kZero);
  EXPECT_EQ(FromJson(paused["qpos"]), qpos);

  // Queued while paused: nothing moves until the next advance.
  client.Send(Perturb(1, {5, 0, 0}, 10));
  json queued = client.ReadFrameUntil([](const json& f) { return f["perturbing"] == true; });
  EXPECT_EQ(queued["step"], step);
  EXPECT_EQ(FromJson(queued["qpos"]), qpos);

  client.Send("step");
  json after = client.ReadFrameUntil([&](const json& f) { return f["step"] == step + 1; });
  auto [base_qpos, base_qvel] = Headless(step + 1, PolicyKind::kZero);
  const double diff = std::max((FromJson(after["qpos"]) - base_qpos).cwiseAbs().maxCoeff(),
                               (FromJson(after["qvel"]) - base_qvel).cwiseAbs().maxCoeff());
  EXPECT_GT(diff, 1e-6);
  EXPECT_EQ(after["perturbing"], false);
}

TEST_F(ServeTest, PauseFreezesTimeAndStepAdvancesOneControlStep) {
  StartServer();
  Client client(port_);
  client.Send("pause");
  json first = client.ReadFrameUntil([](const json& f) { return f["paused"] == true; });
  for (int i = 0; i < 5; ++i) {
    json frame = client.ReadFrame();
    EXPECT_EQ(frame["time"], first["time"]);
    EXPECT_EQ(frame["step"], first["step"]);
  }
  client.Send("step");
  json stepped = client.ReadFrameUntil([&](const json& f) { return f["step"] != first["step"]; });
  EXPECT_EQ(stepped["step"], first["step"].get<std::int64_t>() + 1);
  EXPECT_NEAR(stepped["time"].get<double>() - first["time"].get<double>(), 0.02, 1e-12);
  EXPECT_EQ(stepped["paused"], true);

  client.Send("resume");
  json resumed = client.ReadFrameUntil([&](const json& f) {
    return f["step"].get<std::int64_t>() > stepped["step"].get<std::int64_t>() + 2;
  });
  EXPECT_EQ(resumed["paused"], false);
}

TEST_F(ServeTest, ResetStartsFreshEpisode) {
  StartServer();
  Client client(port_);
  client.ReadFrameUntil([](const json& f) { return f["step"] > 3; });
  client.Send("pause");
  client.ReadFrameUntil([](const json& f) { return f["paused"] == true; });
  client.Send("reset");
  json fresh = client.ReadFrameUntil([](const json& f) { return f["step"] == 0; });
  EXPECT_EQ(fresh["time"], 0.0);
  EXPECT_EQ(fresh["reward"], 0.0);
}

TEST_F(ServeTest, BadMessagesGetErrorsAndKeepTheConnection) {
  StartServer();
  Client client(port_);
  EXPECT_EQ(client.Read()["type"], "hello");
  auto next_error = [&] {
    for (int i = 0; i < 500; ++i) {
      json message = client.Read();
      if (message["type"] == "error") return message;
    }
    return json();
  };
  client.Send(json{{"type", "pause"}});
  EXPECT_THAT(next_error()["message"].get<std::string>(), ::testing::HasSubstr("version"));
  client.Send(json{{"v", 1}, {"type", "fly"}});
  EXPECT_THAT(next_error()["message"].get<std::string>(), ::testing::HasSubstr("fly"));
  client.Send(Perturb(42, {1, 0, 0}, 1));
  EXPECT_THAT(next_error()["message"].get<std::string>(), ::testing::HasSubstr("body"));
  EXPECT_EQ(client.ReadFrame()["type"], "frame");
}

TEST_F(ServeTest, ReconnectResumesStreaming) {
  StartServer();
  std::int64_t last_step = 0;
  {
    Client first(port_);
    last_step = first.ReadFrameUntil([](const json& f) { return f["step"] > 2; })["step"];
    first.Close();
  }
  Client second(port_);
  EXPECT_EQ(second.Read()["type"], "hello");
  EXPECT_GE(second.ReadFrame()["step"].get<std::int64_t>(), last_step);
}

TEST_F(ServeTest, IdleClientDoesNotStallSimulation) {
  StartServer();
  Client idle(port_);
  Client active(port_);
  json start = active.ReadFrame();
  const auto begin = Clock::now();
  json later = start;
  while (Clock::now() - begin < std::chrono::seconds(1)) later = active.ReadFrame();
  EXPECT_GT(later["time"].get<double>() - start["time"].get<double>(), 0.5);
  EXPECT_EQ(idle.Read()["type"], "hello");
  EXPECT_EQ(idle.ReadFrame()["type"], "frame");
}

TEST_F(ServeTest, StopIsIdempotentAndPortIsReported) {
  StartServer();
  EXPECT_GT(port_, 0);
  server_->Stop();
  server_->Stop();
  EXPECT_THROW(Client client(port_), boost::system::system_error);
}

TEST(ServeOptionsTest, RejectsNonPositiveSpeed) {
  auto simulation = MakeSimulation();
  EXPECT_THROW(ViewerServer(*simulation, {.speed = 0}), InvalidArgumentError);
}

TEST(ServeOptionsTest, BusyPortIsAnError) {
  auto a = MakeSimulation();
  auto b = MakeSimulation();
  ViewerServer first(*a, {});
  const std::uint16_t port = first.Start();
  ViewerServer second(*b, {.port = port});
  EXPECT_THROW(second.Start(), Error);
}

}  // namespace
}  // namespace ctrlforge::cli
