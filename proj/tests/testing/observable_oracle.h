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

// Trace oracle for the observation pipeline: buffer contents and source call
// counts derived from the sample schedule alone.

#ifndef CTRLFORGE_TESTS_TESTING_OBSERVABLE_ORACLE_H_
#define CTRLFORGE_TESTS_TESTING_OBSERVABLE_ORACLE_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "composer/fixtures.h"
#include "ctrlforge/composer/environment.h"
#include "ctrlforge/composer/observable.h"

namespace ctrlforge::testing {

inline constexpr int kSubsteps = 5;
inline constexpr int kSteps = 6;

struct Sample {
  std::int64_t time;
  std::int64_t delay;
};

// Buffer contents at read time `read`: the newest `buffer_size` samples
// available by then, ordered by (availability, sample time), zero-padded in
// front. One row per entry.
inline Eigen::MatrixXd OracleBuffer(const std::vector<Sample>& samples, std::int64_t read,
                                    int buffer_size) {
  std::vector<std::pair<std::int64_t, std::int64_t>> available;
  for (const Sample& s : samples) {
    if (s.time <= read && s.time + s.delay <= read) available.emplace_back(s.time + s.delay, s.time);
  }
  std::sort(available.begin(), available.end());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(buffer_size, 2);
  const int n = static_cast<int>(available.size());
  for (int row = buffer_size - 1, k = n - 1; row >= 0 && k >= 0; --row, --k) {
    out.row(row) = CounterValue(available[k].second).transpose();
  }
  return out;
}

// Number of samples taken up to `last_read` that can reach an output buffer:
// either they arrive after the read of the step that scheduled them, or they
// are among the newest `buffer_size` available at that read.
inline std::int64_t OracleSourceCalls(const std::vector<Sample>& samples, std::int64_t last_read,
                                      int substeps, int buffer_size) {
  std::int64_t calls = 0;
  for (const Sample& s : samples) {
    if (s.time > last_read) continue;
    const std::int64_t read = (s.time + substeps - 1) / substeps * substeps;
    if (s.time + s.delay > read) {
      ++calls;
      continue;
    }
    int newer = 0;
    for (const Sample& o : samples) {
      if (o.time > read || o.time + o.delay > read) continue;
      newer += std::make_pair(o.time + o.delay, o.time) > std::make_pair(s.time + s.delay, s.time);
    }
    calls += newer < buffer_size;
  }
  return calls;
}

// Column-wise reduction of a buffer, computed by sorting.
inline Eigen::VectorXd OracleReduce(const Eigen::MatrixXd& buffer,
                                    composer::AggregatorKind kind) {
  using composer::AggregatorKind;
  Eigen::VectorXd out(buffer.cols());
  for (int c = 0; c < buffer.cols(); ++c) {
    std::vector<double> col(buffer.rows());
    for (int r = 0; r < buffer.rows(); ++r) col[r] = buffer(r, c);
    std::sort(col.begin(), col.end());
    double sum = 0;
    for (double v : col) sum += v;
    switch (kind) {
      case AggregatorKind::kMean: out[c] = sum / col.size(); break;
      case AggregatorKind::kMin: out[c] = col.front(); break;
      case AggregatorKind::kMax: out[c] = col.back(); break;
      case AggregatorKind::kMedian: {
        const std::size_t m = col.size() / 2;
        out[c] = col.size() % 2 ? col[m] : (col[m - 1] + col[m]) / 2;
        break;
      }
      default: out[c] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

inline Eigen::MatrixXd AsMatrix(const rl::Array& a, int rows) {
  Eigen::MatrixXd m(rows, 2);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < 2; ++c) m(r, c) = a.data[r * 2 + c];
  }
  return m;
}

struct GridCase {
  int update_interval;
  int buffer_size;
  int delay;
  composer::AggregatorKind aggregator;
};

inline constexpr std::array<GridCase, 12> kGridCases = {{
    {1, 1, 0, composer::AggregatorKind::kNone},
    {1, 1, 2, composer::AggregatorKind::kNone},
    {2, 3, 0, composer::AggregatorKind::kNone},
    {1, 5, 0, composer::AggregatorKind::kMean},
    {3, 2, 1, composer::AggregatorKind::kNone},
    {1, 3, 4, composer::AggregatorKind::kMax},
    {2, 2, 3, composer::AggregatorKind::kMin},
    {1, 4, 1, composer::AggregatorKind::kMedian},
    {5, 1, 0, composer::AggregatorKind::kNone},
    {2, 5, 2, composer::AggregatorKind::kMean},
    {4, 3, 7, composer::AggregatorKind::kNone},
    {1, 2, 6, composer::AggregatorKind::kMedian},
}};

// Runs a counter observable configured by `c` for kSteps control steps and
// compares every observation and the source call count with the oracle.
// Returns an empty string on agreement, else the first mismatch.
inline std::string CheckGridCase(const GridCase& c) {
  using composer::AggregatorKind;
  auto obs = MakeCounterObservable();
  obs->update_interval = c.update_interval;
  obs->buffer_size = c.buffer_size;
  obs->delay = c.delay;
  obs->aggregator = c.aggregator;
  composer::Environment env(std::make_shared<SimpleTask>(MakeCounterEntity(obs), kSubsteps));

  std::vector<Sample> samples;
  for (std::int64_t t = 0; t <= kSteps * kSubsteps; t += c.update_interval) {
    samples.push_back({t, c.delay});
  }

  rl::TimeStep ts = env.Reset();
  for (int k = 0; k <= kSteps; ++k) {
    if (k > 0) ts = env.Step(Eigen::VectorXd(0));
    const rl::Array& out = ts.observation.At("pipe/counter");
    const Eigen::MatrixXd expected = OracleBuffer(samples, k * kSubsteps, c.buffer_size);
    const std::string where = " at step " + std::to_string(k);
    if (c.aggregator != AggregatorKind::kNone) {
      if (out.shape != std::vector<int>{2}) return "aggregated shape" + where;
      if (out.AsVector() != OracleReduce(expected, c.aggregator)) return "aggregate" + where;
    } else if (c.buffer_size == 1) {
      if (out.shape != std::vector<int>{2}) return "single-sample shape" + where;
      if (out.AsVector() != Eigen::VectorXd(expected.row(0).transpose())) return "value" + where;
    } else {
      if (out.shape != std::vector<int>{c.buffer_size, 2}) return "buffer shape" + where;
      if (AsMatrix(out, c.buffer_size) != expected) return "buffer" + where;
    }
  }
  const std::int64_t want =
      OracleSourceCalls(samples, kSteps * kSubsteps, kSubsteps, c.buffer_size);
  if (env.source_calls() != want) {
    return "source calls " + std::to_string(env.source_calls()) + " != " + std::to_string(want);
  }
  return {};
}

}  // namespace ctrlforge::testing

#endif  // CTRLFORGE_TESTS_TESTING_OBSERVABLE_ORACLE_H_
