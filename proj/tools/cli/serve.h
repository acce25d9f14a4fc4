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

// Websocket server that streams a running environment to viewer clients.

#ifndef CTRLFORGE_TOOLS_CLI_SERVE_H_
#define CTRLFORGE_TOOLS_CLI_SERVE_H_

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "cli/protocol.h"

namespace ctrlforge::cli {

struct ServeOptions {
  std::string address = "127.0.0.1";
  // 0 picks a free port.
  std::uint16_t port = 0;
  // Simulated seconds per wall-clock second.
  double speed = 1;
  // Stop on SIGINT and SIGTERM.
  bool handle_signals = false;
};

// Each client first receives a hello message, then frames. A slow client
// skips frames: only the newest unsent frame is kept per client.
class ViewerServer {
 public:
  // `simulation` must outlive the server.
  ViewerServer(ViewerSimulation& simulation, ServeOptions options);
  ~ViewerServer();
  ViewerServer(const ViewerServer&) = delete;
  ViewerServer& operator=(const ViewerServer&) = delete;

  // Binds, starts the network and simulation threads and returns the bound
  // port. Throws Error if the address cannot be bound.
  std::uint16_t Start();
  // Blocks until Stop(), a handled signal, or `seconds` of wall time.
  void Wait(std::optional<double> seconds = std::nullopt);
  void Stop();

  std::int64_t frames_sent() const { return frames_sent_; }

 private:
  class Impl;
  void SimulationLoop();

  ViewerSimulation& simulation_;
  ServeOptions options_;
  std::unique_ptr<Impl> impl_;
  std::thread io_thread_;
  std::thread sim_thread_;
  std::mutex mutex_;
  std::condition_variable stop_cv_;
  bool stop_requested_ = false;
  bool running_ = false;
  std::atomic<std::int64_t> frames_sent_{0};
};

}  // namespace ctrlforge::cli

#endif  // CTRLFORGE_TOOLS_CLI_SERVE_H_
