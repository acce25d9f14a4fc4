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

#include "ctrlforge/composer/observable.h"

#include <algorithm>
#include <tuple>

#include "ctrlforge/errors.h"

namespace ctrlforge::composer {

Aggregator Aggregator::Custom(
    std::function<Eigen::VectorXd(const std::vector<Eigen::VectorXd>&)> fn) {
  Aggregator a(AggregatorKind::kCustom);
  a.custom = std::move(fn);
  return a;
}

Aggregator Aggregator::Parse(std::string_view name) {
  if (name == "none") return AggregatorKind::kNone;
  if (name == "mean") return AggregatorKind::kMean;
  if (name == "min") return AggregatorKind::kMin;
  if (name == "max") return AggregatorKind::kMax;
  if (name == "median") return AggregatorKind::kMedian;
  throw InvalidArgumentError("unknown aggregator '" + std::string(name) + "'");
}

Eigen::VectorXd Aggregator::Reduce(const std::vector<Eigen::VectorXd>& buffer) const {
  if (buffer.empty()) throw InvalidArgumentError("cannot aggregate an empty buffer");
  const Eigen::Index n = buffer[0].size();
  Eigen::VectorXd out(n);
  switch (kind) {
    case AggregatorKind::kNone:
      throw InvalidArgumentError("no aggregator configured");
    case AggregatorKind::kCustom:
      return custom(buffer);
    case AggregatorKind::kMean:
      out.setZero();
      for (const Eigen::VectorXd& v : buffer) out += v;
      return out / static_cast<double>(buffer.size());
    case AggregatorKind::kMin:
      out = buffer[0];
      for (const Eigen::VectorXd& v : buffer) out = out.cwiseMin(v);
      return out;
    case AggregatorKind::kMax:
      out = buffer[0];
      for (const Eigen::VectorXd& v : buffer) out = out.cwiseMax(v);
      return out;
    case AggregatorKind::kMedian: {
      std::vector<double> column(buffer.size());
      for (Eigen::Index i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < buffer.size(); ++k) column[k] = buffer[k][i];
        std::sort(column.begin(), column.end());
        const std::size_t m = column.size() / 2;
        out[i] = column.size() % 2 == 1 ? column[m] : 0.5 * (column[m - 1] + column[m]);
      }
      return out;
    }
  }
  return out;
}

Corruptor CorruptorFromVariation(Variation variation) {
  return [variation](const Eigen::VectorXd& value, RandomState& rng) {
    return variation(value, value, rng);
  };
}

ObservablePtr Generic(Observable::Source source) {
  return std::make_shared<Observable>(std::move(source));
}

ObservablePtr MjcfFeature(std::string field, std::vector<const mjcf::Element*> elements) {
  return Generic([field = std::move(field), elements = std::move(elements)](sim::Physics& p) {
    Eigen::MatrixXd m = p.Bind(elements).Get(field);
    // Row-major flattening: one element after the other.
    Eigen::MatrixXd t = m.transpose();
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(t.data(), t.size()));
  });
}

ObservablePtr MjcfFeature(std::string field, const mjcf::Element* element) {
  return MjcfFeature(std::move(field), std::vector<const mjcf::Element*>{element});
}

ObservationUpdater::ObservationUpdater(
    std::vector<std::pair<std::string, ObservablePtr>> observables, int substeps_per_step,
    bool strip_singleton_buffer_dim)
    : substeps_per_step_(substeps_per_step), strip_singleton_(strip_singleton_buffer_dim) {
  if (substeps_per_step_ < 1) throw InvalidArgumentError("substeps per step must be >= 1");
  for (auto& [name, obs] : observables) {
    if (obs == nullptr || !obs->enabled) continue;
    if (obs->buffer_size < 1) {
      throw InvalidArgumentError("observable '" + name + "' has buffer_size " +
                                 std::to_string(obs->buffer_size));
    }
    State s;
    s.name = name;
    s.observable = obs;
    states_.push_back(std::move(s));
  }
}

rl::ArraySpec ObservationUpdater::OutputSpec(const State& s) const {
  const int bs = s.observable->buffer_size;
  if (s.observable->aggregator.kind != AggregatorKind::kNone || (bs == 1 && strip_singleton_)) {
    return rl::ArraySpec({s.size}, rl::DType::kFloat64, s.name);
  }
  return rl::ArraySpec({bs, s.size}, rl::DType::kFloat64, s.name);
}

rl::ObservationSpec ObservationUpdater::MakeSpec(sim::Physics& physics) {
  rl::ObservationSpec spec;
  for (State& s : states_) {
    s.size = static_cast<int>(s.observable->Observe(physics).size());
    spec.Insert(s.name, OutputSpec(s));
  }
  return spec;
}

rl::ObservationSpec ObservationUpdater::Spec() const {
  rl::ObservationSpec spec;
  for (const State& s : states_) spec.Insert(s.name, OutputSpec(s));
  return spec;
}

void ObservationUpdater::Plan(State& s, std::int64_t horizon, RandomState& random_state) {
  while (s.next_sample_time <= horizon) {
    const int delay = s.observable->delay.Draw(random_state);
    if (delay < 0) {
      throw InvalidArgumentError("observable '" + s.name + "' drew negative delay " +
                                 std::to_string(delay));
    }
    s.planned.push_back({s.next_sample_time, s.next_sample_time + delay, true});
    const int interval = s.observable->update_interval.Draw(random_state);
    if (interval < 1) {
      throw InvalidArgumentError("observable '" + s.name + "' drew update interval " +
                                 std::to_string(interval));
    }
    s.next_sample_time += interval;
  }
}

void ObservationUpdater::MarkNeeded(State& s, std::int64_t read_time) const {
  // A sample available by the next read is needed only if fewer than
  // buffer_size samples will be available after it by then; later reads
  // only see newer samples. Samples arriving after the next read are kept.
  std::vector<std::pair<std::int64_t, std::int64_t>> keys;
  for (const Pending& p : s.pending) keys.emplace_back(p.available_time, p.sample_time);
  for (const Planned& p : s.planned) keys.emplace_back(p.available_time, p.sample_time);
  for (Planned& p : s.planned) {
    if (p.available_time > read_time) {
      p.evaluate = true;
      continue;
    }
    const auto key = std::make_pair(p.available_time, p.sample_time);
    int newer = 0;
    for (const auto& k : keys) newer += k > key && k.first <= read_time;
    p.evaluate = newer < s.observable->buffer_size;
  }
}

void ObservationUpdater::Sample(State& s, sim::Physics& physics, RandomState& random_state) {
  while (!s.planned.empty() && s.planned.front().sample_time == time_) {
    Planned p = s.planned.front();
    s.planned.pop_front();
    if (!p.evaluate) continue;
    Eigen::VectorXd value = s.observable->Observe(physics);
    ++source_calls_;
    if (s.observable->corruptor) value = s.observable->corruptor(value, random_state);
    if (s.size < 0) s.size = static_cast<int>(value.size());
    if (value.size() != s.size) {
      throw Error("observable '" + s.name + "' changed size from " + std::to_string(s.size) +
                  " to " + std::to_string(value.size()));
    }
    s.pending.push_back({p.sample_time, p.available_time, std::move(value)});
  }
}

void ObservationUpdater::Flush(State& s) const {
  std::stable_sort(s.pending.begin(), s.pending.end(), [](const Pending& a, const Pending& b) {
    return std::tie(a.available_time, a.sample_time) < std::tie(b.available_time, b.sample_time);
  });
  std::size_t ready = 0;
  while (ready < s.pending.size() && s.pending[ready].available_time <= time_) {
    s.buffer.push_back(std::move(s.pending[ready].value));
    if (static_cast<int>(s.buffer.size()) > s.observable->buffer_size) s.buffer.pop_front();
    ++ready;
  }
  s.pending.erase(s.pending.begin(), s.pending.begin() + static_cast<std::ptrdiff_t>(ready));
}

void ObservationUpdater::Reset(sim::Physics& physics, RandomState& random_state) {
  time_ = 0;
  for (State& s : states_) {
    s.size = -1;
    s.planned.clear();
    s.pending.clear();
    s.next_sample_time = 0;
    Plan(s, 0, random_state);
    MarkNeeded(s, 0);
    Sample(s, physics, random_state);
    // The sample at time 0 is always evaluated, so the size is known here.
    s.buffer.assign(s.observable->buffer_size, Eigen::VectorXd::Zero(s.size));
    Flush(s);
  }
}

void ObservationUpdater::PrepareForNextControlStep(RandomState& random_state) {
  const std::int64_t read_time = time_ + substeps_per_step_;
  for (State& s : states_) {
    Plan(s, read_time, random_state);
    MarkNeeded(s, read_time);
  }
}

void ObservationUpdater::Update(sim::Physics& physics, RandomState& random_state) {
  ++time_;
  for (State& s : states_) {
    Sample(s, physics, random_state);
    Flush(s);
  }
}

rl::Observation ObservationUpdater::GetObservation() const {
  rl::Observation out;
  for (const State& s : states_) {
    std::vector<Eigen::VectorXd> buffer(s.buffer.begin(), s.buffer.end());
    rl::Array array = rl::Array::Zeros(OutputSpec(s).shape());
    if (s.observable->aggregator.kind != AggregatorKind::kNone) {
      Eigen::VectorXd v = s.observable->aggregator.Reduce(buffer);
      if (v.size() != s.size) {
        throw Error("aggregator of observable '" + s.name + "' returned " +
                    std::to_string(v.size()) + " values, expected " + std::to_string(s.size));
      }
      array.data.assign(v.data(), v.data() + v.size());
    } else {
      array.data.clear();
      for (const Eigen::VectorXd& v : buffer) array.data.insert(array.data.end(), v.data(), v.data() + v.size());
    }
    out.Insert(s.name, std::move(array));
  }
  return out;
}

}  // namespace ctrlforge::composer
