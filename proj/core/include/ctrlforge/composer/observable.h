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

// Observables: configurable sensor channels read from a Physics, and the
// buffering pipeline that turns their samples into observations.

#ifndef CTRLFORGE_COMPOSER_OBSERVABLE_H_
#define CTRLFORGE_COMPOSER_OBSERVABLE_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ctrlforge/composer/variation.h"
#include "ctrlforge/rl/array.h"
#include "ctrlforge/sim/physics.h"

namespace ctrlforge::composer {

// A fixed integer or a generator drawing from the environment random state.
class IntParam {
 public:
  IntParam(int value) : value_(value) {}  // NOLINT(runtime/explicit)
  IntParam(std::function<int(RandomState&)> generator)  // NOLINT(runtime/explicit)
      : generator_(std::move(generator)) {}

  int Draw(RandomState& random_state) const {
    return generator_ ? generator_(random_state) : value_;
  }
  bool is_fixed() const { return !generator_; }

 private:
  int value_ = 0;
  std::function<int(RandomState&)> generator_;
};

enum class AggregatorKind { kNone, kMean, kMin, kMax, kMedian, kCustom };

// Reduction over the buffered samples, oldest first.
struct Aggregator {
  AggregatorKind kind = AggregatorKind::kNone;
  std::function<Eigen::VectorXd(const std::vector<Eigen::VectorXd>&)> custom;

  Aggregator() = default;
  Aggregator(AggregatorKind k) : kind(k) {}  // NOLINT(runtime/explicit)
  static Aggregator Custom(std::function<Eigen::VectorXd(const std::vector<Eigen::VectorXd>&)> fn);
  // "mean", "min", "max", "median" or "none"; throws InvalidArgumentError.
  static Aggregator Parse(std::string_view name);

  Eigen::VectorXd Reduce(const std::vector<Eigen::VectorXd>& buffer) const;
};

// Point-wise transform applied to each sample before it is buffered.
using Corruptor = std::function<Eigen::VectorXd(const Eigen::VectorXd&, RandomState&)>;
// Uses the sample as the variation's initial and current value, e.g.
// noises::Additive(distributions::Normal(0, 0.01)).
Corruptor CorruptorFromVariation(Variation variation);

class Observable {
 public:
  using Source = std::function<Eigen::VectorXd(sim::Physics&)>;

  explicit Observable(Source source) : source_(std::move(source)) {}

  Eigen::VectorXd Observe(sim::Physics& physics) const { return source_(physics); }

  // Disabled by default.
  bool enabled = false;
  // Substeps between samples; must draw >= 1.
  IntParam update_interval = 1;
  int buffer_size = 1;
  // Substeps between sampling and availability; must draw >= 0.
  IntParam delay = 0;
  Corruptor corruptor;
  Aggregator aggregator;

 private:
  Source source_;
};

using ObservablePtr = std::shared_ptr<Observable>;

ObservablePtr Generic(Observable::Source source);
// Concatenation of a binding field over `elements` (e.g. "qpos" of joints,
// "sensordata" of sensors, "xpos" of bodies).
ObservablePtr MjcfFeature(std::string field, std::vector<const mjcf::Element*> elements);
ObservablePtr MjcfFeature(std::string field, const mjcf::Element* element);

// Runs the sample schedule of a set of enabled observables. Time is counted
// in substeps since reset; Reset() samples at time 0, and the k-th call to
// Update() after it is the write point for time S + k.
//
// Each observable is sampled at times t0 = 0, t1 = t0 + update_interval, ...
// A sample taken at time t becomes available at t + delay. At read time T
// the output buffer holds the buffer_size most recent available samples
// ordered by (availability, sample time), preceded by zeros while fewer
// samples exist. Intervals and delays for a control step are drawn at its
// start, per observable in order, delay before interval. Samples that cannot
// reach any output buffer are not evaluated.
class ObservationUpdater {
 public:
  // `observables` in output order; disabled ones are ignored.
  ObservationUpdater(std::vector<std::pair<std::string, ObservablePtr>> observables,
                     int substeps_per_step, bool strip_singleton_buffer_dim = true);

  // Probes each enabled observable once (no corruption) to size the spec.
  rl::ObservationSpec MakeSpec(sim::Physics& physics);

  // Spec from the sizes seen so far; valid after MakeSpec() or Reset().
  rl::ObservationSpec Spec() const;

  void Reset(sim::Physics& physics, RandomState& random_state);
  void PrepareForNextControlStep(RandomState& random_state);
  void Update(sim::Physics& physics, RandomState& random_state);
  rl::Observation GetObservation() const;

  std::int64_t time() const { return time_; }
  // Number of source evaluations (excluding spec probes) since construction.
  std::int64_t source_calls() const { return source_calls_; }

 private:
  struct Planned {
    std::int64_t sample_time;
    std::int64_t available_time;
    bool evaluate;
  };
  struct Pending {
    std::int64_t sample_time;
    std::int64_t available_time;
    Eigen::VectorXd value;
  };
  struct State {
    std::string name;
    ObservablePtr observable;
    int size = -1;  // value size, from a spec probe or the first sample
    std::int64_t next_sample_time = 0;
    std::deque<Planned> planned;
    std::vector<Pending> pending;
    std::deque<Eigen::VectorXd> buffer;
  };

  void Plan(State& s, std::int64_t horizon, RandomState& random_state);
  void MarkNeeded(State& s, std::int64_t read_time) const;
  void Sample(State& s, sim::Physics& physics, RandomState& random_state);
  void Flush(State& s) const;
  rl::ArraySpec OutputSpec(const State& s) const;

  std::vector<State> states_;
  int substeps_per_step_;
  bool strip_singleton_;
  std::int64_t time_ = 0;
  std::int64_t source_calls_ = 0;
};

}  // namespace ctrlforge::composer

#endif  // CTRLFORGE_COMPOSER_OBSERVABLE_H_
