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


#include "cfqkd/scenario.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace cfqkd {

ConfigError::ConfigError(const std::string &message, int line)
    : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line(line) {
}

void Scenario::validate() const {
    try {
        round.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    if (!(attack.fraction >= 0 && attack.fraction <= 1)) {
        throw ConfigError("attack.fraction must lie in [0,1]");
    }
    if (attack.tap_fraction && !(*attack.tap_fraction >= 0 && *attack.tap_fraction <= 1)) {
        throw ConfigError("attack.tap_fraction must lie in [0,1]");
    }
    if (n_pulses < 1) {
        throw ConfigError("n_pulses must be >= 1");
    }
    if (!(rep_rate_hz > 0)) {
        throw ConfigError("rep_rate_hz must be > 0");
    }
    if (duration_s && std::llround(rep_rate_hz * *duration_s) != static_cast<long long>(n_pulses)) {
        throw ConfigError("rep_rate_hz x duration_s does not equal n_pulses");
    }
    for (double mu : analysis.curve_mus) {
        if (!(mu > 0)) {
            throw ConfigError("curves.mu entries must be > 0");
        }
    }
    if (!(analysis.curve_step_km > 0) || !(analysis.curve_max_km >= 0)) {
        throw ConfigError("curves.step_km must be > 0 and curves.max_km >= 0");
    }
}

AttackModel build_attack(const Scenario &s) {
    switch (s.attack.type) {
        case AttackType::none:
            return NoAttack{};
        case AttackType::vacuum:
            return VacuumAttackModel::make(s.attack.variant, s.attack.fraction);
        case AttackType::pns: {
            PnsAttackModel m = PnsAttackModel::full_budget(s.round.channel);
            m.lossless_replacement = s.attack.lossless_replacement;
            if (s.attack.tap_fraction) {
                m.tap_fraction = *s.attack.tap_fraction;
            }
            m.validate();
            return m;
        }
    }
    return NoAttack{};
}

void set_pulses(Scenario &s, uint64_t n_pulses) {
    s.n_pulses = n_pulses;
    s.duration_s.reset();
}

namespace {

std::string format_double(double x) {
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

std::string trim(std::string_view s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
        ++a;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        --b;
    }
    return std::string(s.substr(a, b - a));
}

double parse_double(const std::string &text, int line) {
    std::string body = text;
    double scale = 1.0;
    if (body.size() > 2 && body.ends_with("pi")) {
        body = trim(body.substr(0, body.size() - 2));
        scale = std::numbers::pi;
    }
    if (body == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    double value = 0;
    auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec != std::errc() || end != body.data() + body.size() || !std::isfinite(value)) {
        throw ConfigError("expected a number, got '" + text + "'", line);
    }
    return value * scale;
}

uint64_t parse_count(const std::string &text, int line) {
    uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && end == text.data() + text.size()) {
        return value;
    }
    // Accept integral values written in floating notation, e.g. 2.7e6.
    const double d = parse_double(text, line);
    if (d < 0 || d != std::floor(d) || d > 9.0e18) {
        throw ConfigError("expected a nonnegative integer, got '" + text + "'", line);
    }
    return static_cast<uint64_t>(d);
}

std::vector<double> parse_list(const std::string &text, int line) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(parse_double(item, line));
        }
    }
    return out;
}

std::string format_list(const std::vector<double> &xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        out += (i ? ", " : "") + format_double(xs[i]);
    }
    return out;
}

bool parse_bool(const std::string &text, int line) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError("expected true or false, got '" + text + "'", line);
}

void require_range(bool ok, const std::string &key, const std::string &what, int line) {
    if (!ok) {
        throw ConfigError(key + " " + what, line);
    }
}

double nonneg(const std::string &key, const std::string &v, int line) {
    const double x = parse_double(v, line);
    require_range(x >= 0, key, "must be >= 0", line);
    return x;
}

double probability(const std::string &key, const std::string &v, int line) {
    const double x = parse_double(v, line);
    require_range(x >= 0 && x <= 1, key, "must lie in [0,1]", line);
    return x;
}

double positive(const std::string &key, const std::string &v, int line) {
    const double x = parse_double(v, line);
    require_range(x > 0, key, "must be > 0", line);
    return x;
}

template <typename E>
E parse_enum(const std::string &key, const std::string &v, int line, const std::map<std::string, E> &names) {
    auto it = names.find(v);
    if (it == names.end()) {
        std::string allowed;
        for (const auto &[name, _] : names) {
            allowed += (allowed.empty() ? "" : ", ") + name;
        }
        throw ConfigError(key + " must be one of {" + allowed + "}, got '" + v + "'", line);
    }
    return it->second;
}

template <typename E>
std::string enum_text(E value, const std::map<std::string, E> &names) {
    for (const auto &[name, e] : names) {
        if (e == value) {
            return name;
        }
    }
    return "?";
}

const std::map<std::string, NormalizationPlane> plane_names{
    {"input", NormalizationPlane::input}, {"at_hr", NormalizationPlane::at_hr}};
const std::map<std::string, AttackType> attack_names{
    {"none", AttackType::none}, {"vacuum", AttackType::vacuum}, {"pns", AttackType::pns}};
const std::map<std::string, VacuumVariant> variant_names{
    {"relational_capture", VacuumVariant::relational_capture}, {"paper_literal", VacuumVariant::paper_literal}};
const std::map<std::string, BitChoice> bit_names{
    {"random", BitChoice::random}, {"0", BitChoice::zero}, {"1", BitChoice::one}};

struct Key {
    std::string name;
    std::function<std::string(const Scenario &)> write;
    std::function<void(Scenario &, const std::string &, int)> read;
};

const std::vector<Key> &keys() {
    static const std::vector<Key> table = [] {
        std::vector<Key> k;
        auto number = [&k](std::string name, double RoundConfig::*field, auto check) {
            k.push_back({name,
                         [field](const Scenario &s) {
                             return format_double(s.round.*field);
                         },
                         [name, field, check](Scenario &s, const std::string &v, int line) {
                             s.round.*field = check(name, v, line);
                         }});
        };
        number("mu", &RoundConfig::mu, positive);
        k.push_back({"rep_rate_hz",
                     [](const Scenario &s) {
                         return format_double(s.rep_rate_hz);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.rep_rate_hz = positive("rep_rate_hz", v, line);
                     }});
        k.push_back({"duration_s",
                     [](const Scenario &s) {
                         return s.duration_s ? format_double(*s.duration_s) : std::string("none");
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         if (v == "none") {
                             s.duration_s.reset();
                         } else {
                             s.duration_s = positive("duration_s", v, line);
                         }
                     }});
        k.push_back({"n_pulses",
                     [](const Scenario &s) {
                         return std::to_string(s.n_pulses);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.n_pulses = parse_count(v, line);
                         require_range(s.n_pulses >= 1, "n_pulses", "must be >= 1", line);
                     }});
        k.push_back({"seed",
                     [](const Scenario &s) {
                         return std::to_string(s.seed);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.seed = parse_count(v, line);
                     }});
        k.push_back({"normalization_plane",
                     [](const Scenario &s) {
                         return enum_text(s.round.plane, plane_names);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.round.plane = parse_enum("normalization_plane", v, line, plane_names);
                     }});
        number("loss_long_db", &RoundConfig::loss_long_db, nonneg);
        number("loss_short_db", &RoundConfig::loss_short_db, nonneg);
        k.push_back({"attn2_db",
                     [](const Scenario &s) {
                         return s.round.attn2_db ? format_double(*s.round.attn2_db) : std::string("auto");
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         if (v == "auto") {
                             s.round.attn2_db.reset();
                         } else {
                             s.round.attn2_db = nonneg("attn2_db", v, line);
                         }
                     }});
        const char *det_names[] = {"d1", "d2", "d3"};
        for (size_t i = 0; i < 3; ++i) {
            const std::string name = std::string("path_loss.") + det_names[i];
            k.push_back({name,
                         [i](const Scenario &s) {
                             return format_double(s.round.path_loss_db[i]);
                         },
                         [i, name](Scenario &s, const std::string &v, int line) {
                             s.round.path_loss_db[i] = nonneg(name, v, line);
                         }});
        }
        auto detector = [](Scenario &s, size_t i) -> DetectorModel & {
            return i < 3 ? s.round.detectors[i] : s.round.eve_detector;
        };
        auto detector_c = [](const Scenario &s, size_t i) -> const DetectorModel & {
            return i < 3 ? s.round.detectors[i] : s.round.eve_detector;
        };
        const char *all_det[] = {"d1", "d2", "d3", "eve"};
        for (size_t i = 0; i < 4; ++i) {
            const std::string name = std::string("det_eff.") + all_det[i];
            k.push_back({name,
                         [i, detector_c](const Scenario &s) {
                             return format_double(detector_c(s, i).efficiency);
                         },
                         [i, name, detector](Scenario &s, const std::string &v, int line) {
                             detector(s, i).efficiency = probability(name, v, line);
                         }});
        }
        for (size_t i = 0; i < 4; ++i) {
            const std::string name = std::string("dark.") + all_det[i];
            k.push_back({name,
                         [i, detector_c](const Scenario &s) {
                             return format_double(detector_c(s, i).dark_prob);
                         },
                         [i, name, detector](Scenario &s, const std::string &v, int line) {
                             detector(s, i).dark_prob = probability(name, v, line);
                         }});
        }
        number("visibility_noise_eps", &RoundConfig::visibility_noise_eps, probability);
        k.push_back({"pbs_extinction",
                     [](const Scenario &s) {
                         return format_double(s.round.pbs.reflect_port);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         const double r = parse_double(v, line);
                         require_range(r >= 1, "pbs_extinction", "must be >= 1", line);
                         s.round.pbs.reflect_port = r;
                     }});
        k.push_back({"pbs_transmit_extinction",
                     [](const Scenario &s) {
                         return format_double(s.round.pbs.transmit_port);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         const double r = parse_double(v, line);
                         require_range(r >= 1, "pbs_transmit_extinction", "must be >= 1", line);
                         s.round.pbs.transmit_port = r;
                     }});
        auto any = [](const std::string &, const std::string &v, int line) {
            return parse_double(v, line);
        };
        number("birefringent_phase_rad", &RoundConfig::birefringent_phase, any);
        number("pm_compensation_rad", &RoundConfig::pm_compensation_phase, any);
        k.push_back({"attack.type",
                     [](const Scenario &s) {
                         return enum_text(s.attack.type, attack_names);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.attack.type = parse_enum("attack.type", v, line, attack_names);
                     }});
        k.push_back({"attack.variant",
                     [](const Scenario &s) {
                         return enum_text(s.attack.variant, variant_names);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.attack.variant = parse_enum("attack.variant", v, line, variant_names);
                     }});
        k.push_back({"attack.fraction",
                     [](const Scenario &s) {
                         return format_double(s.attack.fraction);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.attack.fraction = probability("attack.fraction", v, line);
                     }});
        k.push_back({"attack.tap_fraction",
                     [](const Scenario &s) {
                         return s.attack.tap_fraction ? format_double(*s.attack.tap_fraction) : std::string("budget");
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         if (v == "budget") {
                             s.attack.tap_fraction.reset();
                         } else {
                             s.attack.tap_fraction = probability("attack.tap_fraction", v, line);
                         }
                     }});
        k.push_back({"attack.lossless_replacement",
                     [](const Scenario &s) {
                         return std::string(s.attack.lossless_replacement ? "true" : "false");
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.attack.lossless_replacement = parse_bool(v, line);
                     }});
        k.push_back({"channel.length_km",
                     [](const Scenario &s) {
                         return format_double(s.round.channel.length_km);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.round.channel.length_km = nonneg("channel.length_km", v, line);
                     }});
        k.push_back({"channel.atten_db_per_km",
                     [](const Scenario &s) {
                         return format_double(s.round.channel.attenuation_db_per_km);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.round.channel.attenuation_db_per_km = nonneg("channel.atten_db_per_km", v, line);
                     }});
        k.push_back({"bits.alice",
                     [](const Scenario &s) {
                         return enum_text(s.bit_alice, bit_names);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.bit_alice = parse_enum("bits.alice", v, line, bit_names);
                     }});
        k.push_back({"bits.bob",
                     [](const Scenario &s) {
                         return enum_text(s.bit_bob, bit_names);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.bit_bob = parse_enum("bits.bob", v, line, bit_names);
                     }});
        k.push_back({"sweep.values",
                     [](const Scenario &s) {
                         return format_list(s.analysis.sweep_values);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.analysis.sweep_values = parse_list(v, line);
                     }});
        k.push_back({"curves.mu",
                     [](const Scenario &s) {
                         return format_list(s.analysis.curve_mus);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.analysis.curve_mus = parse_list(v, line);
                         for (double mu : s.analysis.curve_mus) {
                             require_range(mu > 0, "curves.mu", "entries must be > 0", line);
                         }
                     }});
        k.push_back({"curves.max_km",
                     [](const Scenario &s) {
                         return format_double(s.analysis.curve_max_km);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.analysis.curve_max_km = nonneg("curves.max_km", v, line);
                     }});
        k.push_back({"curves.step_km",
                     [](const Scenario &s) {
                         return format_double(s.analysis.curve_step_km);
                     },
                     [](Scenario &s, const std::string &v, int line) {
                         s.analysis.curve_step_km = positive("curves.step_km", v, line);
                     }});
        return k;
    }();
    return table;
}

}  // namespace

std::string write_scenario(const Scenario &s) {
    std::string out;
    for (const Key &k : keys()) {
        out += k.name + " = " + k.write(s) + "\n";
    }
    return out;
}

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    std::map<std::string, int> seen;
    bool pbs_transmit_given = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value', got '" + content + "'", line);
        }
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        const Key *match = nullptr;
        for (const Key &k : keys()) {
            if (k.name == key) {
                match = &k;
                break;
            }
        }
        if (match == nullptr) {
            throw ConfigError("unknown key '" + key + "'", line);
        }
        if (seen.contains(key)) {
            throw ConfigError("duplicate key '" + key + "' (first set on line " + std::to_string(seen[key]) + ")", line);
        }
        seen[key] = line;
        if (value.empty() && key != "sweep.values") {
            throw ConfigError("missing value for '" + key + "'", line);
        }
        match->read(s, value, line);
        pbs_transmit_given |= key == "pbs_transmit_extinction";
    }
    if (!pbs_transmit_given) {
        s.round.pbs.transmit_port = s.round.pbs.reflect_port;
    }
    const bool has_n = seen.contains("n_pulses");
    const bool has_duration = seen.contains("duration_s") && s.duration_s;
    if (has_duration && !has_n) {
        s.n_pulses = static_cast<uint64_t>(std::llround(s.rep_rate_hz * *s.duration_s));
    } else if (has_n && !seen.contains("duration_s")) {
        s.duration_s.reset();
    } else if (!has_n && !seen.contains("duration_s")) {
        s.n_pulses = static_cast<uint64_t>(std::llround(s.rep_rate_hz * *s.duration_s));
    }
    if (has_n && has_duration && std::llround(s.rep_rate_hz * *s.duration_s) != static_cast<long long>(s.n_pulses)) {
        throw ConfigError("rep_rate_hz x duration_s = " + format_double(s.rep_rate_hz * *s.duration_s) +
                              " does not equal n_pulses = " + std::to_string(s.n_pulses),
                          seen["n_pulses"]);
    }
    s.validate();
    return s;
}

Scenario load_config(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read scenario file '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string fingerprint(const Scenario &s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : write_scenario(s)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace cfqkd
