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
#include <deque>
#include <utility>
#include <vector>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/executor_work_guard.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "ctrlforge/errors.h"

namespace ctrlforge::cli {
namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using Message = std::shared_ptr<const std::string>;

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(tcp::socket socket, Message hello, const engine::CompiledModel& model,
          ViewerSimulation& simulation, std::atomic<std::int64_t>& frames_sent)
      : ws_(std::move(socket)),
        hello_(std::move(hello)),
        model_(model),
        simulation_(simulation),
        frames_sent_(frames_sent) {}

  void Run() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
      if (ec) return;
      self->open_ = true;
      self->Send(self->hello_);
      self->Read();
    });
  }

  void Send(Message message) {
    if (!open_) return;
    queue_.push_back(std::move(message));
    Write();
  }

  // Replaces any frame that has not been sent yet.
  void SetFrame(Message frame) {
    if (!open_) return;
    frame_ = std::move(frame);
    Write();
  }

  bool open() const { return open_; }

  void Close() {
    open_ = false;
    beast::error_code ec;
    beast::get_lowest_layer(ws_).socket().close(ec);
  }

 private:
  void Write() {
    if (writing_ || !open_) return;
    Message next;
    bool is_frame = false;
    if (!queue_.empty()) {
      next = std::move(queue_.front());
      queue_.pop_front();
    } else if (frame_) {
      next = std::move(frame_);
      frame_.reset();
      is_frame = true;
    } else {
      return;
    }
    writing_ = true;
    ws_.text(true);
    ws_.async_write(asio::buffer(*next), [self = shared_from_this(), next, is_frame](
                                             beast::error_code ec, std::size_t) {
      self->writing_ = false;
      if (ec) {
        self->open_ = false;
        return;
      }
      if (is_frame) ++self->frames_sent_;
      self->Write();
    });
  }

  void Read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->open_ = false;
        return;
      }
      std::string text = beast::buffers_to_string(self->buffer_.data());
      self->buffer_.consume(self->buffer_.size());
      try {
        self->simulation_.Enqueue(ParseCommand(text, self->model_));
      } catch (const InvalidArgumentError& e) {
        self->Send(std::make_shared<const std::string>(ErrorMessage(e.what()).dump()));
      }
      self->Read();
    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  Message hello_;
  const engine::CompiledModel& model_;
  ViewerSimulation& simulation_;
  std::atomic<std::int64_t>& frames_sent_;
  std::deque<Message> queue_;
  Message frame_;
  bool writing_ = false;
  bool open_ = false;
};

}  // namespace

class ViewerServer::Impl {
 public:
  Impl(ViewerSimulation& simulation, std::atomic<std::int64_t>& frames_sent)
      : acceptor_(io_),
        signals_(io_),
        work_(asio::make_work_guard(io_)),
        simulation_(simulation),
        frames_sent_(frames_sent),
        hello_(std::make_shared<const std::string>(simulation.Hello().dump())) {}

  std::uint16_t Bind(const std::string& address, std::uint16_t port) {
    try {
      tcp::endpoint endpoint(asio::ip::make_address(address), port);
      acceptor_.open(endpoint.protocol());
      acceptor_.set_option(asio::socket_base::reuse_address(true));
      acceptor_.bind(endpoint);
      acceptor_.listen();
      return acceptor_.local_endpoint().port();
    } catch (const boost::system::system_error& e) {
      throw Error("cannot listen on " + address + ":" + std::to_string(port) + ": " + e.what());
    }
  }

  void Accept() {
    acceptor_.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      auto session = std::make_shared<Session>(std::move(socket), hello_,
                                               simulation_.env().physics()->model(), simulation_,
                                               frames_sent_);
      std::erase_if(sessions_, [](const std::weak_ptr<Session>& s) {
        auto locked = s.lock();
        return !locked || !locked->open();
      });
      sessions_.push_back(session);
      session->Run();
      Accept();
    });
  }

  void Broadcast(Message frame) {
    asio::post(io_, [this, frame = std::move(frame)] {
      for (const auto& weak : sessions_) {
        if (auto session = weak.lock()) session->SetFrame(frame);
      }
    });
  }

  void Shutdown() {
    asio::post(io_, [this] {
      beast::error_code ec;
      acceptor_.close(ec);
      signals_.cancel(ec);
      for (const auto& weak : sessions_) {
        if (auto session = weak.lock()) session->Close();
      }
      work_.reset();
    });
  }

  asio::io_context io_;
  tcp::acceptor acceptor_;
  asio::signal_set signals_;
  asio::executor_work_guard<asio::io_context::executor_type> work_;
  ViewerSimulation& simulation_;
  std::atomic<std::int64_t>& frames_sent_;
  Message hello_;
  std::vector<std::weak_ptr<Session>> sessions_;
};

ViewerServer::ViewerServer(ViewerSimulation& simulation, ServeOptions options)
    : simulation_(simulation), options_(std::move(options)) {
  if (!(options_.speed > 0)) throw InvalidArgumentError("speed must be positive");
}

ViewerServer::~ViewerServer() { Stop(); }

std::uint16_t ViewerServer::Start() {
  if (running_) throw Error("server already started");
  impl_ = std::make_unique<Impl>(simulation_, frames_sent_);
  const std::uint16_t port = impl_->Bind(options_.address, options_.port);
  impl_->Accept();
  if (options_.handle_signals) {
    impl_->signals_.add(SIGINT);
    impl_->signals_.add(SIGTERM);
    impl_->signals_.async_wait([this](beast::error_code ec, int) {
      if (ec) return;
      std::lock_guard<std::mutex> lock(mutex_);
      stop_requested_ = true;
      stop_cv_.notify_all();
    });
  }
  running_ = true;
  stop_requested_ = false;
  io_thread_ = std::thread([this] { impl_->io_.run(); });
  sim_thread_ = std::thread([this] { SimulationLoop(); });
  return port;
}

void ViewerServer::SimulationLoop() {
  using Clock = std::chrono::steady_clock;
  const auto period = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(simulation_.env().control_timestep() / options_.speed));
  auto next = Clock::now();
  std::unique_lock<std::mutex> lock(mutex_);
  while (!stop_requested_) {
    lock.unlock();
    Message message;
    try {
      message = std::make_shared<const std::string>(simulation_.Tick().dump());
    } catch (const std::exception& e) {
      // The environment restarts the episode on the next step.
      message = std::make_shared<const std::string>(ErrorMessage(e.what()).dump());
    }
    impl_->Broadcast(std::move(message));
    next += period;
    const auto now = Clock::now();
    // Do not try to catch up after a stall.
    if (next < now) next = now;
    lock.lock();
    stop_cv_.wait_until(lock, next, [this] { return stop_requested_; });
  }
}

void ViewerServer::Wait(std::optional<double> seconds) {
  std::unique_lock<std::mutex> lock(mutex_);
  if (seconds) {
    stop_cv_.wait_for(lock, std::chrono::duration<double>(*seconds),
                      [this] { return stop_requested_; });
  } else {
    stop_cv_.wait(lock, [this] { return stop_requested_; });
  }
}

void ViewerServer::Stop() {
  if (!running_) return;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    stop_requested_ = true;
    stop_cv_.notify_all();
  }
  sim_thread_.join();
  impl_->Shutdown();
  io_thread_.join();
  impl_.reset();
  running_ = false;
}

}  // namespace ctrlforge::cli
