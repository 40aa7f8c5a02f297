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

#include "inertia/validation.hpp"

namespace inertia {

ValidationReport validate(const ProtocolParams& params, const InertialThresholds& thresholds,
                          double mu_floor) {
  ValidationReport report;
  report.protocol = check_protocol(params, mu_floor);
  if (report.protocol.ok) {
    report.inertial = inertial_parameter(params, thresholds);
  }
  return report;
}

}  // namespace inertia
