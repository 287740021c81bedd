// SPDX-License-Identifier: Apache-2.0
//
// vrarcade: latency and reliability simulator for wireless VR arcades
// Copyright (C) 2026 The vrarcade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef VRARCADE_EXPERIMENT_HPP
#define VRARCADE_EXPERIMENT_HPP

#include "vrarcade/config.hpp"
#include "vrarcade/metrics.hpp"
#include "vrarcade/simulation.hpp"

namespace vrarcade::engine
{

struct ExperimentOptions
{
    int workers = 0;   // 0: VRARCADE_WORKERS, else hardware concurrency
    TraceSinks trace;  // attached to replication 0 only
};

struct ExperimentResult
{
    MetricsSummary summary;
    ReplicationStats totals; // summed over replications
};

// Worker count from VRARCADE_WORKERS (positive integer) or the machine.
int default_workers();

// Runs every replication (in parallel when workers > 1) and reduces them in
// replication order, so the result does not depend on scheduling.
// Throws std::runtime_error when no frame was measured.
ExperimentResult run_experiment(const ValidatedScenario &scenario, const ExperimentOptions &options = {});

} // namespace vrarcade::engine

#endif
