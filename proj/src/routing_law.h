// Copyright 2026 The cfqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef CFQKD_ROUTING_LAW_H
#define CFQKD_ROUTING_LAW_H

#include <array>
#include <cmath>

#include "cfqkd/optics.h"

namespace cfqkd::routing_law {

/// Power-level routing of Bob's decoder and the output splitter, written with scalar energy laws
/// only (no Jones algebra) so that it can check the amplitude-level simulation.
///
/// `sl` is the sl power at Bob's PBS, `ls` the ls power at the output splitter. `sl_reflects` says
/// whether sl arrives with the polarization the PBS reflects to D3. `delta` is the residual phase
/// of sl relative to ls.
inline std::array<double, 3> detector_energies(
    double sl, bool sl_reflects, double ls, bool coherent, double delta, double eps, const PbsExtinction &pbs) {
    const double wrong_reflect = 1.0 / (pbs.reflect_port + 1.0);
    const double wrong_transmit = 1.0 / (pbs.transmit_port + 1.0);
    if (sl_reflects) {
        const double leak = sl * wrong_transmit;
        const double d3 = sl - leak;
        // Orthogonal polarizations: no interference.
        return {(leak + ls) / 2, (leak + ls) / 2, d3};
    }
    const double d3 = sl * wrong_reflect;
    const double passed = sl - d3;
    if (!coherent) {
        return {(passed + ls) / 2, (passed + ls) / 2, d3};
    }
    const double cross = std::sqrt(passed * ls) * std::cos(delta);
    const double bright = (passed + ls) / 2 + cross;
    const double dark = (passed + ls) / 2 - cross;
    return {(1 - eps) * bright, dark + eps * bright, d3};
}

}  // namespace cfqkd::routing_law

#endif
