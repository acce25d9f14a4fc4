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

#include "cli/commands.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cli/policy.h"
#include "cli/protocol.h"
#include "cli/serve.h"
#include "ctrlforge/engine/compiler.h"
#include "ctrlforge/errors.h"
#include "ctrlforge/mjcf/xml.h"
#include "ctrlforge/suite/lqr.h"
#include "ctrlforge/suite/suite.h"
#include "json.hpp"

namespace ctrlforge::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// The policy stream is kept apart from the environment stream.
constexpr std::uint64_t kPolicySeedSalt = 0x9e3779b97f4a7c15ULL;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json MatrixToJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void PrintJson(std::ostream& out, const json& value) { out << value.dump(2) << "\n"; }

// --- list -------------------------------------------------------------------

struct ListArgs {
  std::string tag = std::string(suite::kAll);
  bool json = false;
};

int List(const ListArgs& args, std::ostream& out) {
  const std::vector<suite::TaskEntry> tasks = suite::TasksWithTag(args.tag);
  if (args.json) {
    json rows = json::array();
    for (const suite::TaskEntry& t : tasks) {
      rows.push_back({{"id", t.id()},
                      {"domain", t.domain},
                      {"task", t.task},
                      {"tags", {t.tag, suite::kAll}},
                      {"dim_state", t.dim_state},
                      {"dim_action", t.dim_action},
                      {"dim_observation", t.dim_observation}});
    }
    PrintJson(out, rows);
    return kExitOk;
  }
  out << std::left << std::setw(24) << "task" << std::setw(14) << "tag" << std::right
      << std::setw(6) << "state" << std::setw(8) << "action" << std::setw(13) << "observation"
      << "\n";
  for (const suite::TaskEntry& t : tasks) {
    out << std::left << std::setw(24) << t.id() << std::setw(14) << t.tag << std::right
        << std::setw(6) << t.dim_state << std::setw(8) << t.dim_action << std::setw(13)
        << t.dim_observation << "\n";
  }
  return kExitOk;
}

// --- run --------------------------------------------------------------------

struct RunArgs {
  std::string task;
  int episodes = 1;
  std::uint64_t seed = 0;
  std::string policy = "random";
  bool json = false;
  bool timing = false;
};

int Run(const RunArgs& args, std::ostream& out) {
  const PolicyKind kind = ParsePolicy(args.policy);
  std::unique_ptr<suite::Environment> env = suite::Load(args.task, {.seed = args.seed});
  Policy policy(kind, *env, args.seed ^ kPolicySeedSalt);
  json episodes = json::array();
  std::int64_t total_steps = 0;
  const auto start = Clock::now();
  for (int e = 0; e < args.episodes; ++e) {
    rl::TimeStep ts = env->Reset();
    double episode_return = 0;
    std::int64_t steps = 0;
    while (!ts.last()) {
      ts = env->Step(policy.Act());
      episode_return += *ts.reward;
      ++steps;
    }
    total_steps += steps;
    episodes.push_back({{"return", episode_return},
                        {"steps", steps},
                        {"final_discount", *ts.discount}});
  }
  const double seconds = Seconds(start);
  const double rate = total_steps / std::max(seconds, 1e-9);
  if (args.json) {
    json report = {{"task", args.task},
                   {"seed", args.seed},
                   {"policy", PolicyName(kind)},
                   {"episodes", episodes}};
    if (args.timing) report["steps_per_second"] = rate;
    PrintJson(out, report);
    return kExitOk;
  }
  out << "task " << args.task << "  seed " << args.seed << "  policy " << PolicyName(kind)
      << "\n";
  for (std::size_t e = 0; e < episodes.size(); ++e) {
    out << "episode " << e << ": return " << episodes[e]["return"].get<double>() << "  steps "
        << episodes[e]["steps"].get<std::int64_t>() << "  final discount "
        << episodes[e]["final_discount"].get<double>() << "\n";
  }
  out << "steps/s " << rate << "\n";
  return kExitOk;
}

// --- render -----------------------------------------------------------------

struct RenderArgs {
  std::string task;
  int frames = 1;
  std::string out_dir = "frames";
  std::string camera = "free";
  std::string size = "320x240";
  std::string mode = "rgb";
  std::string format = "png";
  std::string policy = "zero";
  std::uint64_t seed = 0;
};

std::pair<int, int> ParseSize(const std::string& text) {
  int width = 0, height = 0;
  char x = 0, extra = 0;
  if (std::sscanf(text.c_str(), "%d%c%d%c", &width, &x, &height, &extra) != 3 || x != 'x' ||
      width <= 0 || height <= 0 || width > 8192 || height > 8192) {
    throw InvalidArgumentError("size must be WxH with positive integers, got '" + text + "'");
  }
  return {width, height};
}

// 16-bit binary PGM holding geom index + 1 (0 for background).
void WriteIndexPgm(const std::string& path, const sim::Frame& frame) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << "P5\n" << frame.width << " " << frame.height << "\n65535\n";
  for (int id : frame.segmentation) {
    const int value = std::clamp(id + 1, 0, 65535);
    file.put(static_cast<char>(value >> 8));
    file.put(static_cast<char>(value & 0xff));
  }
  if (!file) throw Error("cannot write '" + path + "'");
}

int Render(const RenderArgs& args, std::ostream& out) {
  const auto [width, height] = ParseSize(args.size);
  sim::RenderOptions options{.width = width, .height = height};
  if (args.mode == "rgb") {
    options.mode = sim::RenderMode::kRgb;
  } else if (args.mode == "depth") {
    options.mode = sim::RenderMode::kDepth;
  } else if (args.mode == "segmentation") {
    options.mode = sim::RenderMode::kSegmentation;
  } else {
    throw InvalidArgumentError("unknown mode '" + args.mode +
                               "' (expected rgb, depth or segmentation)");
  }
  if (args.format != "png" && args.format != "ppm") {
    throw InvalidArgumentError("unknown format '" + args.format + "' (expected png or ppm)");
  }
  if (args.frames < 1) throw InvalidArgumentError("--frames must be at least 1");
  std::unique_ptr<suite::Environment> env = suite::Load(args.task, {.seed = args.seed});
  sim::Physics& physics = *env->physics();
  if (args.camera != "free") {
    const bool numeric = !args.camera.empty() &&
                         std::all_of(args.camera.begin(), args.camera.end(),
                                     [](char c) { return c >= '0' && c <= '9'; });
    if (numeric) {
      options.camera = std::stoi(args.camera);
      if (options.camera >= static_cast<int>(physics.model().cameras.size())) {
        throw InvalidArgumentError("camera " + args.camera + " does not exist");
      }
    } else {
      options.camera_name = args.camera;
      physics.Name2Id(args.camera, mjcf::Namespace::kCamera);
    }
  }
  Policy policy(ParsePolicy(args.policy), *env, args.seed ^ kPolicySeedSalt);
  std::filesystem::create_directories(args.out_dir);
  env->Reset();
  for (int k = 0; k < args.frames; ++k) {
    if (k > 0) env->Step(policy.Act());
    const sim::Frame frame = physics.Render(options);
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%05d", k);
    const std::string base = (std::filesystem::path(args.out_dir) / name).string();
    std::vector<std::uint8_t> rgb;
    switch (options.mode) {
      case sim::RenderMode::kRgb: rgb = frame.rgb; break;
      case sim::RenderMode::kDepth: rgb = sim::DepthToRgb(frame); break;
      case sim::RenderMode::kSegmentation:
        rgb = sim::SegmentationToRgb(frame);
        WriteIndexPgm(base + "_index.pgm", frame);
        break;
    }
    const std::string path = base + "." + args.format;
    if (args.format == "png") {
      sim::WritePng(path, width, height, rgb);
    } else {
      sim::WritePpm(path, width, height, rgb);
    }
    out << path << "\n";
  }
  return kExitOk;
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string target;
  std::int64_t steps = 1000;
  std::uint64_t seed = 0;
  bool json = false;
};

int Bench(const BenchArgs& args, std::ostream& out) {
  if (args.steps < 1) throw InvalidArgumentError("--steps must be at least 1");
  std::vector<std::string> ids;
  if (args.target.find(':') != std::string::npos) {
    ids.push_back(args.target);
  } else {
    for (const suite::TaskEntry& t : suite::TasksWithTag(args.target)) ids.push_back(t.id());
  }
  json rows = json::array();
  for (const std::string& id : ids) {
    std::unique_ptr<suite::Environment> env = suite::Load(id, {.seed = args.seed});
    Policy policy(PolicyKind::kRandom, *env, args.seed ^ kPolicySeedSalt);
    env->Reset();
    const auto start = Clock::now();
    for (std::int64_t i = 0; i < args.steps; ++i) env->Step(policy.Act());
    const double seconds = std::max(Seconds(start), 1e-9);
    rows.push_back({{"task", id},
                    {"steps", args.steps},
                    {"seconds", seconds},
                    {"steps_per_second", args.steps / seconds}});
  }
  if (args.json) {
    PrintJson(out, rows);
    return kExitOk;
  }
  for (const json& row : rows) {
    out << std::left << std::setw(24) << row["task"].get<std::string>() << std::right
        << std::setw(8) << row["steps"].get<std::int64_t>() << " steps  " << std::fixed
        << std::setprecision(1) << row["steps_per_second"].get<double>() << " steps/s\n"
        << std::defaultfloat << std::setprecision(6);
  }
  return kExitOk;
}

// --- lqr-solve --------------------------------------------------------------

struct LqrArgs {
  int n = 2;
  int m = 1;
  double tol = 1e-12;
  int max_iter = 1000000;
  bool scalar = false;
  bool json = false;
};

int LqrSolve(const LqrArgs& args, std::ostream& out) {
  Eigen::MatrixXd A, B, Q, R;
  if (args.scalar) {
    // x' = x + u with unit costs.
    A = B = Q = R = Eigen::MatrixXd::Ones(1, 1);
  } else {
    if (args.n < 1 || args.m < 1 || args.m > args.n) {
      throw InvalidArgumentError("need 1 <= m <= n, got n=" + std::to_string(args.n) +
                                 " m=" + std::to_string(args.m));
    }
    suite::LqrSpec spec = suite::MakeLqrSpec(args.n, args.m);
    A = spec.A;
    B = spec.B;
    Q = spec.Q;
    R = spec.R;
  }
  const suite::RiccatiSolution solution = suite::SolveRiccati(A, B, Q, R, args.tol, args.max_iter);
  if (args.json) {
    PrintJson(out, {{"n", A.rows()},
                    {"m", B.cols()},
                    {"tol", args.tol},
                    {"iterations", solution.iterations},
                    {"residual", solution.residual},
                    {"P", MatrixToJson(solution.P)},
                    {"K", MatrixToJson(solution.K)}});
    return kExitOk;
  }
  const Eigen::IOFormat format(Eigen::FullPrecision, 0, " ", "\n", "  ");
  out << "n " << A.rows() << "  m " << B.cols() << "  iterations " << solution.iterations
      << "  residual " << solution.residual << "\n";
  out << "P =\n" << solution.P.format(format) << "\n";
  out << "K =\n" << solution.K.format(format) << "\n";
  return kExitOk;
}

// --- serve ------------------------------------------------------------------

struct ServeArgs {
  std::string task;
  std::string address = "127.0.0.1";
  int port = 8765;
  std::string policy = "random";
  std::uint64_t seed = 0;
  double speed = 1;
  double duration = 0;
  bool visualize_reward = true;
};

int Serve(const ServeArgs& args, std::ostream& out) {
  if (args.port < 0 || args.port > 65535) throw InvalidArgumentError("port out of range");
  if (args.duration < 0) throw InvalidArgumentError("--duration must be non-negative");
  const PolicyKind kind = ParsePolicy(args.policy);
  ViewerSimulation simulation(
      args.task,
      suite::Load(args.task, {.seed = args.seed, .visualize_reward = args.visualize_reward}),
      kind, args.seed ^ kPolicySeedSalt);
  ViewerServer server(simulation, {.address = args.address,
                                   .port = static_cast<std::uint16_t>(args.port),
                                   .speed = args.speed,
                                   .handle_signals = true});
  const std::uint16_t port = server.Start();
  out << "serving " << args.task << " on ws://" << args.address << ":" << port << std::endl;
  server.Wait(args.duration > 0 ? std::optional<double>(args.duration) : std::nullopt);
  server.Stop();
  out << "sent " << server.frames_sent() << " frames\n";
  return kExitOk;
}

// --- model ------------------------------------------------------------------

int ModelValidate(const std::string& path, std::ostream& out) {
  std::shared_ptr<mjcf::ModelRoot> root = mjcf::ParseModelFile(path);
  const engine::CompiledModel model = engine::Compile(*root);
  out << path << ": ok (" << model.nbody() << " bodies, " << model.njnt() << " joints, "
      << model.ngeom() << " geoms, " << model.nu() << " actuators)\n";
  return kExitOk;
}

int ModelPrint(const std::string& path, std::ostream& out) {
  out << mjcf::Serialize(*mjcf::ParseModelFile(path));
  return kExitOk;
}

std::string OneLine(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Physics-based control environments.", "ctrlforge");
  app.require_subcommand(1);
  int code = kExitOk;
  std::function<int()> action;

  ListArgs list;
  CLI::App* list_cmd = app.add_subcommand("list", "List registered tasks.");
  list_cmd->add_option("--tag", list.tag, "benchmarking, extra or all");
  list_cmd->add_flag("--json", list.json, "Print JSON");
  list_cmd->callback([&] { action = [&] { return List(list, out); }; });

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run episodes with a fixed policy.");
  run_cmd->add_option("task", run.task, "domain:task")->required();
  run_cmd->add_option("--episodes", run.episodes)->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run.seed);
  run_cmd->add_option("--policy", run.policy, "random, zero or lqr-optimal");
  run_cmd->add_flag("--json", run.json, "Print JSON");
  run_cmd->add_flag("--timing", run.timing, "Include wall-clock rate in JSON");
  run_cmd->callback([&] { action = [&] { return Run(run, out); }; });

  RenderArgs render;
  CLI::App* render_cmd = app.add_subcommand("render", "Write rendered frames to image files.");
  render_cmd->add_option("task", render.task, "domain:task")->required();
  render_cmd->add_option("--frames", render.frames);
  render_cmd->add_option("--out", render.out_dir, "Output directory");
  render_cmd->add_option("--camera", render.camera, "free, camera index or camera name");
  render_cmd->add_option("--size", render.size, "WxH");
  render_cmd->add_option("--mode", render.mode, "rgb, depth or segmentation");
  render_cmd->add_option("--format", render.format, "png or ppm");
  render_cmd->add_option("--policy", render.policy, "Policy between frames");
  render_cmd->add_option("--seed", render.seed);
  render_cmd->callback([&] { action = [&] { return Render(render, out); }; });

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Measure control steps per second.");
  bench_cmd->add_option("target", bench.target, "domain:task or tag")->required();
  bench_cmd->add_option("--steps", bench.steps);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_flag("--json", bench.json, "Print JSON");
  bench_cmd->callback([&] { action = [&] { return Bench(bench, out); }; });

  LqrArgs lqr;
  CLI::App* lqr_cmd = app.add_subcommand("lqr-solve", "Solve the Riccati equation of an LQR task.");
  lqr_cmd->add_option("--n", lqr.n, "Number of masses");
  lqr_cmd->add_option("--m", lqr.m, "Number of actuated masses");
  lqr_cmd->add_option("--tol", lqr.tol);
  lqr_cmd->add_option("--max-iter", lqr.max_iter);
  lqr_cmd->add_flag("--scalar", lqr.scalar, "Solve A = B = Q = R = 1 instead");
  lqr_cmd->add_flag("--json", lqr.json, "Print JSON");
  lqr_cmd->callback([&] { action = [&] { return LqrSolve(lqr, out); }; });

  ServeArgs serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Stream a running task to websocket viewers.");
  serve_cmd->add_option("task", serve.task, "domain:task")->required();
  serve_cmd->add_option("--address", serve.address);
  serve_cmd->add_option("--port", serve.port, "0 picks a free port");
  serve_cmd->add_option("--policy", serve.policy, "random, zero or lqr-optimal");
  serve_cmd->add_option("--seed", serve.seed);
  serve_cmd->add_option("--speed", serve.speed, "Simulated seconds per second");
  serve_cmd->add_option("--duration", serve.duration, "Seconds to serve; 0 runs until signaled");
  serve_cmd->callback([&] { action = [&] { return Serve(serve, out); }; });

  std::string model_path;
  CLI::App* model_cmd = app.add_subcommand("model", "Inspect model files.");
  model_cmd->require_subcommand(1);
  CLI::App* validate_cmd = model_cmd->add_subcommand("validate", "Parse and compile a model.");
  validate_cmd->add_option("file", model_path)->required();
  validate_cmd->callback([&] { action = [&] { return ModelValidate(model_path, out); }; });
  CLI::App* print_cmd = model_cmd->add_subcommand("print", "Print the flattened model.");
  print_cmd->add_option("file", model_path)->required();
  print_cmd->callback([&] { action = [&] { return ModelPrint(model_path, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << OneLine(e.what()) << "\n";
    return kExitUsage;
  }
  try {
    code = action();
  } catch (const std::exception& e) {
    err << "error: " << OneLine(e.what()) << "\n";
    return kExitError;
  }
  return code;
}

}  // namespace ctrlforge::cli
