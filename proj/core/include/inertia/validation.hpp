// Copyright 2026 The Inertia Authors
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

#pragma once

#include <optional>

#include "inertia/inertial_solution.hpp"
#include "inertia/protocol.hpp"

namespace inertia {

/// Protocol singularity check plus the inertial-parameter summary. The
/// summary is only present when the protocol itself is nonsingular.
struct ValidationReport {
  ProtocolCheck protocol;
  std::optional<InertialReport> inertial;

  [[nodiscard]] bool ok() const { return protocol.ok; }
};

[[nodiscard]] ValidationReport validate(const ProtocolParams& params,
                                        const InertialThresholds& thresholds = {},
                                        double mu_floor = kDefaultMuFloor);

}  // namespace inertia
