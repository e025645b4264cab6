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


#ifndef CFQKD_CHANNEL_H
#define CFQKD_CHANNEL_H

#include <stdexcept>

namespace cfqkd {

/// The public fiber between Alice's station and Bob.
struct ChannelModel {
    double length_km = 12.5;
    double attenuation_db_per_km = 0.25;

    double loss_db() const {
        return length_km * attenuation_db_per_km;
    }

    /// Fraction of the incident power the fiber absorbs: 1 - 10^(-a L / 10).
    double eta_loss() const;

    void validate() const {
        if (!(length_km >= 0)) {
            throw std::invalid_argument("channel length must be >= 0 km");
        }
        if (!(attenuation_db_per_km >= 0)) {
            throw std::invalid_argument("channel attenuation must be >= 0 dB/km");
        }
    }

    bool operator==(const ChannelModel &) const = default;
};

}  // namespace cfqkd

#endif
