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


#ifndef CFQKD_OPTICS_H
#define CFQKD_OPTICS_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

/// Coherent-state optical algebra.
///
/// A weak laser pulse in one spatial mode is represented by its Jones vector, scaled so that the
/// squared norm equals the mean photon number of the mode. Passive components act linearly on the
/// amplitudes; threshold detectors turn an incident mean photon number into a click probability.
namespace cfqkd {

template <typename Scalar>
using JonesVector = Eigen::Matrix<std::complex<Scalar>, 2, 1>;

template <typename Scalar>
using JonesMatrix = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar>
JonesVector<Scalar> horizontal(Scalar amplitude = Scalar(1)) {
    return JonesVector<Scalar>(std::complex<Scalar>(amplitude), std::complex<Scalar>(0));
}

template <typename Scalar>
JonesVector<Scalar> vertical(Scalar amplitude = Scalar(1)) {
    return JonesVector<Scalar>(std::complex<Scalar>(0), std::complex<Scalar>(amplitude));
}

enum class PathLabel : uint8_t { sl, ls, aux };

/// Polarization rotator settings. Only the two settings used by the protocol exist.
enum class Rotation : uint8_t { deg0, deg90 };

enum class PhaseTarget : uint8_t { both, horizontal, vertical };

template <typename Scalar>
struct ModeAmplitude {
    PathLabel path = PathLabel::aux;
    JonesVector<Scalar> jones = JonesVector<Scalar>::Zero();

    Scalar mean_photons() const {
        return jones.squaredNorm();
    }

    static ModeAmplitude vacuum(PathLabel path) {
        return {path, JonesVector<Scalar>::Zero()};
    }

    /// A mode with the given mean photon number and unit polarization `pol`.
    static ModeAmplitude coherent(PathLabel path, Scalar mean_photons, const JonesVector<Scalar> &pol) {
        if (!(mean_photons >= 0)) {
            throw std::invalid_argument("mean photon number must be >= 0");
        }
        return {path, pol.normalized() * std::sqrt(mean_photons)};
    }
};

template <typename Scalar>
JonesMatrix<Scalar> rotation_matrix(Rotation angle) {
    JonesMatrix<Scalar> m;
    if (angle == Rotation::deg0) {
        m.setIdentity();
    } else {
        m << Scalar(0), Scalar(-1), Scalar(1), Scalar(0);
    }
    return m;
}

template <typename Scalar>
JonesVector<Scalar> rotate(const JonesVector<Scalar> &j, Rotation angle) {
    return rotation_matrix<Scalar>(angle) * j;
}

/// Inverse of `rotate`; this is what a rotator applies to light passing it in the return sense.
template <typename Scalar>
JonesVector<Scalar> counter_rotate(const JonesVector<Scalar> &j, Rotation angle) {
    return rotation_matrix<Scalar>(angle).transpose() * j;
}

template <typename Scalar>
ModeAmplitude<Scalar> rotate(const ModeAmplitude<Scalar> &m, Rotation angle) {
    return {m.path, rotate(m.jones, angle)};
}

template <typename Scalar>
ModeAmplitude<Scalar> counter_rotate(const ModeAmplitude<Scalar> &m, Rotation angle) {
    return {m.path, counter_rotate(m.jones, angle)};
}

/// Half-wave plate at 45 degrees: H <-> V with no sign change.
template <typename Scalar>
ModeAmplitude<Scalar> exchange_polarizations(const ModeAmplitude<Scalar> &m) {
    return {m.path, JonesVector<Scalar>(m.jones(1), m.jones(0))};
}

template <typename Scalar>
struct PortPair {
    ModeAmplitude<Scalar> out1;
    ModeAmplitude<Scalar> out2;
};

/// 50:50 splitter fed on one port. Both outputs carry half the energy with no relative phase.
template <typename Scalar>
PortPair<Scalar> split_bs(const ModeAmplitude<Scalar> &m) {
    const Scalar k = Scalar(1) / std::sqrt(Scalar(2));
    return {{m.path, m.jones * k}, {m.path, m.jones * k}};
}

/// 50:50 splitter fed on both ports; amplitudes interfere per polarization component.
/// In-phase, equal, co-polarized inputs leave entirely through out1.
template <typename Scalar>
PortPair<Scalar> combine_bs(const ModeAmplitude<Scalar> &a, const ModeAmplitude<Scalar> &b) {
    const Scalar k = Scalar(1) / std::sqrt(Scalar(2));
    return {{PathLabel::aux, (a.jones + b.jones) * k}, {PathLabel::aux, (a.jones - b.jones) * k}};
}

/// Extinction ratios of a polarizing beam splitter.
///
/// A ratio r lets 1/(r+1) of the wrong polarization's power leak into that port: `reflect_port`
/// governs H leaking into the reflected port, `transmit_port` V leaking into the transmitted port.
/// Each must be >= 1; infinity means an ideal port.
struct PbsExtinction {
    double reflect_port = std::numeric_limits<double>::infinity();
    double transmit_port = std::numeric_limits<double>::infinity();

    static PbsExtinction symmetric(double r) {
        return {r, r};
    }

    void validate() const {
        if (!(reflect_port >= 1) || !(transmit_port >= 1)) {
            throw std::invalid_argument("PBS extinction ratio must be >= 1");
        }
    }

    bool operator==(const PbsExtinction &) const = default;
};

template <typename Scalar>
struct PbsOutputs {
    ModeAmplitude<Scalar> transmitted;
    ModeAmplitude<Scalar> reflected;
};

template <typename Scalar>
PbsOutputs<Scalar> apply_pbs(const ModeAmplitude<Scalar> &m, const PbsExtinction &extinction) {
    extinction.validate();
    // Power fractions sent to the transmitted port.
    const Scalar h_t = Scalar(1) - Scalar(1) / (Scalar(extinction.reflect_port) + Scalar(1));
    const Scalar v_t = Scalar(1) / (Scalar(extinction.transmit_port) + Scalar(1));
    PbsOutputs<Scalar> out{{m.path, {}}, {m.path, {}}};
    out.transmitted.jones << m.jones(0) * std::sqrt(h_t), m.jones(1) * std::sqrt(v_t);
    out.reflected.jones << m.jones(0) * std::sqrt(Scalar(1) - h_t), m.jones(1) * std::sqrt(Scalar(1) - v_t);
    return out;
}

template <typename Scalar>
PbsOutputs<Scalar> apply_pbs(const ModeAmplitude<Scalar> &m, double extinction) {
    return apply_pbs(m, PbsExtinction::symmetric(extinction));
}

inline double db_to_transmission(double loss_db) {
    return std::pow(10.0, -loss_db / 10.0);
}

template <typename Scalar>
ModeAmplitude<Scalar> attenuate(const ModeAmplitude<Scalar> &m, double loss_db) {
    if (!(loss_db >= 0)) {
        throw std::invalid_argument("attenuation must be >= 0 dB, got " + std::to_string(loss_db));
    }
    return {m.path, m.jones * Scalar(std::sqrt(db_to_transmission(loss_db)))};
}

template <typename Scalar>
ModeAmplitude<Scalar> phase_shift(const ModeAmplitude<Scalar> &m, Scalar phi, PhaseTarget target) {
    const std::complex<Scalar> u = std::polar(Scalar(1), phi);
    ModeAmplitude<Scalar> out = m;
    if (target != PhaseTarget::vertical) {
        out.jones(0) *= u;
    }
    if (target != PhaseTarget::horizontal) {
        out.jones(1) *= u;
    }
    return out;
}

enum class DetectorLabel : uint8_t { d1, d2, d3, eve };

inline const char *detector_name(DetectorLabel label) {
    switch (label) {
        case DetectorLabel::d1:
            return "d1";
        case DetectorLabel::d2:
            return "d2";
        case DetectorLabel::d3:
            return "d3";
        case DetectorLabel::eve:
            return "eve";
    }
    return "?";
}

/// Threshold single-photon detector with per-gate dark count probability.
struct DetectorModel {
    DetectorLabel label = DetectorLabel::d1;
    double efficiency = 1.0;
    double dark_prob = 0.0;

    void validate() const {
        if (!(efficiency >= 0 && efficiency <= 1)) {
            throw std::invalid_argument(std::string("efficiency of ") + detector_name(label) + " must lie in [0,1]");
        }
        if (!(dark_prob >= 0 && dark_prob <= 1)) {
            throw std::invalid_argument(std::string("dark probability of ") + detector_name(label) + " must lie in [0,1]");
        }
    }

    /// Probability that at least one incident photon is registered (dark counts excluded).
    double signal_probability(double mean_photons) const {
        if (!(mean_photons >= 0)) {
            throw std::invalid_argument("incident mean photon number must be >= 0");
        }
        return -std::expm1(-efficiency * mean_photons);
    }

    /// 1 - (1 - dark) * exp(-efficiency * n).
    double click_probability(double mean_photons) const {
        const double p_signal = signal_probability(mean_photons);
        return p_signal + (1.0 - p_signal) * dark_prob;
    }

    bool operator==(const DetectorModel &) const = default;
};

enum class ClickCause : uint8_t { none, signal, dark };

struct ClickSample {
    bool clicked = false;
    ClickCause cause = ClickCause::none;

    bool operator==(const ClickSample &) const = default;
};

/// Maps a 64-bit draw onto [0, 1) with 53 bits of precision.
inline double unit_interval(uint64_t draw) {
    return static_cast<double>(draw >> 11) * 0x1.0p-53;
}

/// Samples one detection gate. Consumes exactly one draw from `rng`.
template <typename Rng>
ClickSample detect(const DetectorModel &d, double mean_photons, Rng &rng) {
    const double p_signal = d.signal_probability(mean_photons);
    const double p_click = d.click_probability(mean_photons);
    const double u = unit_interval(rng());
    if (u < p_signal) {
        return {true, ClickCause::signal};
    }
    if (u < p_click) {
        return {true, ClickCause::dark};
    }
    return {false, ClickCause::none};
}

}  // namespace cfqkd

#endif
