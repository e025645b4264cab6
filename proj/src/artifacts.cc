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


#include "cfqkd/artifacts.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cfqkd/security.h"
#include "json.hpp"

namespace cfqkd {

using nlohmann::ordered_json;

const ArtifactFile *RunArtifacts::find(const std::string &name) const {
    for (const ArtifactFile &f : files) {
        if (f.name == name) {
            return &f;
        }
    }
    return nullptr;
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

namespace {

std::string num(double x) {
    return format_number(x);
}

std::string num(uint64_t x) {
    return std::to_string(x);
}

ordered_json json_number(double x) {
    if (!std::isfinite(x)) {
        return format_number(x);
    }
    return x;
}

ordered_json estimate_json(const Estimate &e) {
    return {{"value", json_number(e.value)}, {"lower", json_number(e.lower)}, {"upper", json_number(e.upper)}};
}

std::string with_extension(const std::string &stem, TableFormat format) {
    return stem + (format == TableFormat::csv ? ".csv" : ".json");
}

ArtifactFile table_file(const std::string &stem, const Table &t, const std::string &fp, uint64_t seed,
                        TableFormat format) {
    return {with_extension(stem, format), render_table(t, fp, seed, format)};
}

double ratio(uint64_t num_, uint64_t den) {
    return den == 0 ? std::nan("") : static_cast<double>(num_) / static_cast<double>(den);
}

/// Reads a preset scenario file; problems surface as ConfigError naming the file.
Scenario load_preset(const std::filesystem::path &dir, const std::string &file, const RunOverrides &overrides) {
    const std::filesystem::path path = dir / file;
    Scenario s;
    try {
        s = load_config(path);
    } catch (const ConfigError &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    apply_overrides(s, overrides);
    return s;
}

std::string describe_ratio(const Estimate &e) {
    std::ostringstream out;
    out << "1:" << format_number(std::round(e.value * 1000) / 1000) << " [" << format_number(std::round(e.lower * 1000) / 1000)
        << ", " << format_number(std::round(e.upper * 1000) / 1000) << "]";
    return out.str();
}

std::string digest(const SimulationSummary &s) {
    std::ostringstream out;
    out << "pulses " << s.n_pulses << "  D1 " << s.counters.detector_totals[0] << "  D2 " << s.counters.detector_totals[1]
        << "  D3 " << s.counters.detector_totals[2] << "  sifted " << s.counters.sifted << "\n";
    if (s.report) {
        out << "C1:C2 " << describe_ratio(s.report->ratio_c1_c2);
        if (s.report->ratio_c3_c4) {
            out << "  C3:C4 " << format_number(std::round(s.report->ratio_c3_c4->value * 100) / 100) << ":1";
        }
        out << "  visibility " << format_number(std::round(s.report->visibility.value * 1e4) / 1e4) << "  qber "
            << format_number(std::round(s.report->qber.value * 1e4) / 1e4) << "\n";
    } else {
        out << "monitor statistics: insufficient counts\n";
    }
    for (const auto &w : s.warnings) {
        out << "warning: " << w << "\n";
    }
    return out.str();
}

uint64_t fnv1a(const std::string &text) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex16(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

std::string render_table(const Table &t, const std::string &fingerprint, uint64_t seed, TableFormat format) {
    if (format == TableFormat::json) {
        ordered_json rows = ordered_json::array();
        for (const auto &row : t.rows) {
            ordered_json r = ordered_json::object();
            for (size_t i = 0; i < t.columns.size() && i < row.size(); ++i) {
                r[t.columns[i]] = row[i];
            }
            rows.push_back(std::move(r));
        }
        ordered_json doc{{"fingerprint", fingerprint}, {"seed", seed}, {"columns", t.columns}, {"rows", rows}};
        return doc.dump(2) + "\n";
    }
    std::string out = "# fingerprint=" + fingerprint + " seed=" + std::to_string(seed) + "\n";
    auto line = [&out](const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            out += (i ? "," : "") + cells[i];
        }
        out += "\n";
    };
    line(t.columns);
    for (const auto &row : t.rows) {
        line(row);
    }
    return out;
}

std::string summary_json(const SimulationSummary &summary, const Scenario &s) {
    const MonitorCounters &c = summary.counters;
    ordered_json counters = ordered_json::object();
    for (const auto &[name, value] : named_counts(c, summary.eve)) {
        counters[name] = value;
    }
    ordered_json doc;
    doc["fingerprint"] = summary.fingerprint;
    doc["seed"] = summary.seed;
    doc["n_pulses"] = summary.n_pulses;
    doc["counters"] = counters;
    doc["detector_totals"] = {{"d1", c.detector_totals[0]}, {"d2", c.detector_totals[1]}, {"d3", c.detector_totals[2]}};
    ordered_json eve = ordered_json::object();
    eve["informed_fraction"] = summary.eve_informed_fraction() ? json_number(*summary.eve_informed_fraction())
                                                               : ordered_json(nullptr);
    eve["error_rate"] = summary.eve_error_rate() ? json_number(*summary.eve_error_rate()) : ordered_json(nullptr);
    doc["eve"] = eve;
    if (summary.report) {
        const MonitorReport &r = *summary.report;
        ordered_json report;
        report["confidence"] = r.confidence;
        report["ratio_c1_c2"] = estimate_json(r.ratio_c1_c2);
        report["ratio_c3_c4"] = r.ratio_c3_c4 ? estimate_json(*r.ratio_c3_c4) : ordered_json(nullptr);
        report["visibility"] = estimate_json(r.visibility);
        report["qber"] = estimate_json(r.qber);
        report["coincidence_prob"] = r.coincidence_prob ? estimate_json(*r.coincidence_prob) : ordered_json(nullptr);
        report["anomaly"] = anomaly_verdict_name(detect_anomaly(c));
        doc["report"] = report;
        const SecurityReport sec = security_report(r.qber.value, s.round.mu, s.round.channel);
        doc["security"] = {{"qber_bob", json_number(sec.qber_bob)},
                           {"info_bob", json_number(sec.info_bob)},
                           {"info_eve", json_number(sec.info_eve)},
                           {"pns_bound", json_number(sec.pns_bound)},
                           {"secret_rate", json_number(sec.secret_rate)},
                           {"verdict", verdict_name(sec.verdict)}};
    } else {
        doc["report"] = nullptr;
        doc["security"] = nullptr;
    }
    doc["warnings"] = summary.warnings;
    return doc.dump(2) + "\n";
}

std::vector<std::pair<std::string, uint64_t>> named_counts(const MonitorCounters &c, const EveTally &e) {
    return {
        {"c1", c.c1},
        {"c2", c.c2},
        {"c3", c.c3},
        {"c4", c.c4},
        {"c5", c.c5},
        {"c6", c.c6},
        {"pulses_same", c.pulses_same},
        {"pulses_diff", c.pulses_diff},
        {"coincidences_d3_d12", c.coincidences_d3_d12},
        {"sifted", c.sifted},
        {"sifted_errors", c.sifted_errors},
        {"multi_click", c.multi_click},
        {"d1_total", c.detector_totals[0]},
        {"d2_total", c.detector_totals[1]},
        {"d3_total", c.detector_totals[2]},
        {"eve_sifted_with_guess", e.sifted_with_guess},
        {"eve_sifted_informed", e.sifted_informed},
        {"eve_sifted_wrong", e.sifted_wrong},
        {"eve_attacked_rounds", e.attacked_rounds},
    };
}

std::vector<std::pair<std::string, double>> monitor_deviation(
    const MonitorCounters &observed, const MonitorCounters &baseline) {
    const EveTally none;
    const auto a = named_counts(observed, none);
    const auto b = named_counts(baseline, none);
    const double na = static_cast<double>(observed.pulses());
    const double nb = static_cast<double>(baseline.pulses());
    std::vector<std::pair<std::string, double>> out;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].first.starts_with("eve_")) {
            continue;
        }
        const double pa = a[i].second / na;
        const double pb = b[i].second / nb;
        const double pooled = (a[i].second + b[i].second) / (na + nb);
        const double se = std::sqrt(pooled * (1 - pooled) * (1 / na + 1 / nb));
        out.emplace_back(a[i].first, se > 0 ? (pa - pb) / se : 0.0);
    }
    return out;
}

Table counters_table(const SimulationSummary &summary) {
    Table t{{"counter", "value"}, {}};
    t.rows.push_back({"n_pulses", num(summary.n_pulses)});
    for (const auto &[name, value] : named_counts(summary.counters, summary.eve)) {
        t.rows.push_back({name, num(value)});
    }
    return t;
}

Table oracle_diff_table(const SimulationSummary &summary, const OracleResult &oracle) {
    Table t{{"counter", "simulated", "simulated_per_pulse", "expected_per_pulse", "std_error", "z"}, {}};
    const auto counts = named_counts(summary.counters, summary.eve);
    const auto expected = named_expectations(oracle.per_pulse);
    const double n = static_cast<double>(summary.n_pulses);
    for (size_t i = 0; i < counts.size(); ++i) {
        const double rate = counts[i].second / n;
        const double p = expected[i].per_pulse;
        const double se = std::sqrt(std::max(0.0, p * (1 - p)) / n);
        double z = 0;
        if (se > 0) {
            z = (rate - p) / se;
        } else if (rate != p) {
            z = std::numeric_limits<double>::infinity();
        }
        t.rows.push_back({counts[i].first, num(counts[i].second), num(rate), num(p), num(se), num(z)});
    }
    return t;
}

Table curves_table(const std::vector<GainCurve> &curves) {
    Table t{{"family", "mu", "L_km", "gain"}, {}};
    for (const GainCurve &c : curves) {
        for (const GainPoint &p : c.points) {
            t.rows.push_back({curve_family_name(c.family), num(c.mu), num(p.length_km), num(p.gain)});
        }
    }
    return t;
}

void apply_overrides(Scenario &s, const RunOverrides &o) {
    if (o.seed) {
        s.seed = *o.seed;
    }
    if (o.pulses) {
        if (*o.pulses == 0) {
            throw ConfigError("--pulses must be >= 1");
        }
        set_pulses(s, *o.pulses);
    }
}

namespace {

RunArtifacts summary_artifacts(const Scenario &s, const SimulationSummary &summary, TableFormat format) {
    const OracleResult oracle = enumeration_oracle(s, OracleMode::poisson);
    RunArtifacts out;
    out.fingerprint = summary.fingerprint;
    out.seed = s.seed;
    out.files.push_back({"scenario.cfg", "# fingerprint=" + out.fingerprint + "\n" + write_scenario(s)});
    out.files.push_back({"summary.json", summary_json(summary, s)});
    out.files.push_back(table_file("counters", counters_table(summary), out.fingerprint, s.seed, format));
    out.files.push_back(table_file("oracle_diff", oracle_diff_table(summary, oracle), out.fingerprint, s.seed, format));
    out.report = digest(summary);
    return out;
}

}  // namespace

RunArtifacts simulate_artifacts(const Scenario &s, TableFormat format, const EngineOptions &options) {
    return summary_artifacts(s, simulate(s, options), format);
}

RunArtifacts oracle_artifacts(const Scenario &s, TableFormat format) {
    const OracleResult poisson = enumeration_oracle(s, OracleMode::poisson);
    const OracleResult single = enumeration_oracle(s, OracleMode::single_photon);
    RunArtifacts out;
    out.fingerprint = fingerprint(s);
    out.seed = s.seed;

    Table rates{{"counter", "poisson_per_pulse", "single_photon_per_pulse"}, {}};
    const auto p = named_expectations(poisson.per_pulse);
    const auto q = named_expectations(single.per_pulse);
    for (size_t i = 0; i < p.size(); ++i) {
        rates.rows.push_back({p[i].name, num(p[i].per_pulse), num(q[i].per_pulse)});
    }
    rates.rows.push_back({"ratio_c2_c1", num(poisson.ratio_c1_c2()), num(single.ratio_c1_c2())});
    rates.rows.push_back({"ratio_c3_c4", num(poisson.ratio_c3_c4()), num(single.ratio_c3_c4())});
    rates.rows.push_back({"qber", num(poisson.qber()), num(single.qber())});
    rates.rows.push_back({"visibility", num(poisson.visibility()), num(single.visibility())});
    rates.rows.push_back({"eve_error_rate", num(poisson.eve_error_rate()), num(single.eve_error_rate())});
    rates.rows.push_back({"eve_informed_fraction", num(poisson.eve_informed_fraction()), num(single.eve_informed_fraction())});

    Table settings{{"mode", "bit_alice", "bit_bob", "weight", "d1", "d2", "d3"}, {}};
    for (const OracleResult *r : {&poisson, &single}) {
        for (const SettingExpectation &e : r->settings) {
            settings.rows.push_back({r->mode == OracleMode::poisson ? "poisson" : "single_photon", num(uint64_t(e.bit_alice)),
                                     num(uint64_t(e.bit_bob)), num(e.weight), num(e.detector[0]), num(e.detector[1]),
                                     num(e.detector[2])});
        }
    }
    out.files.push_back(table_file("oracle", rates, out.fingerprint, s.seed, format));
    out.files.push_back(table_file("oracle_settings", settings, out.fingerprint, s.seed, format));
    std::ostringstream report;
    report << "C1:C2 1:" << format_number(poisson.ratio_c1_c2()) << " (single photon 1:" << format_number(single.ratio_c1_c2())
           << ")  qber " << format_number(poisson.qber()) << "  visibility " << format_number(poisson.visibility()) << "\n";
    out.report = report.str();
    return out;
}

RunArtifacts curves_artifacts(const Scenario &s, TableFormat format) {
    const std::vector<double> lengths = length_grid(s.analysis.curve_max_km, s.analysis.curve_step_km);
    const std::vector<CurveFamily> families{CurveFamily::counterfactual, CurveFamily::conventional};
    const auto curves = eve_gain_curves(s.analysis.curve_mus, lengths, families, s.round.channel.attenuation_db_per_km);
    RunArtifacts out;
    out.fingerprint = fingerprint(s);
    out.seed = s.seed;
    out.files.push_back(table_file("curves", curves_table(curves), out.fingerprint, s.seed, format));
    out.report = std::to_string(curves.size()) + " curves x " + std::to_string(lengths.size()) + " lengths\n";
    return out;
}

const std::vector<std::string> &preset_names() {
    static const std::vector<std::string> names{"table1", "fig2", "fig3", "vacuum", "pns"};
    return names;
}

namespace {

struct Reference {
    std::string quantity;
    double published = 0;
    double tolerance = 0;
    std::string kind;
};

std::vector<Reference> load_reference(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read reference table '" + path.string() + "'");
    }
    std::vector<Reference> out;
    std::string line;
    int line_no = 0;
    bool header = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (header) {
            header = false;
            continue;
        }
        std::stringstream ss(line);
        Reference r;
        std::string published, tolerance;
        if (!std::getline(ss, r.quantity, ',') || !std::getline(ss, published, ',') ||
            !std::getline(ss, tolerance, ',') || !std::getline(ss, r.kind, ',')) {
            throw ConfigError(path.string() + ": expected quantity,published,tolerance,kind", line_no);
        }
        try {
            r.published = std::stod(published);
            r.tolerance = std::stod(tolerance);
        } catch (const std::exception &) {
            throw ConfigError(path.string() + ": bad number", line_no);
        }
        if (r.kind != "rel" && r.kind != "abs" && r.kind != "info") {
            throw ConfigError(path.string() + ": kind must be rel, abs or info", line_no);
        }
        out.push_back(r);
    }
    return out;
}

std::optional<double> simulated_quantity(const SimulationSummary &s, const std::string &q) {
    const MonitorCounters &c = s.counters;
    if (q == "d1") {
        return c.detector_totals[0];
    }
    if (q == "d2") {
        return c.detector_totals[1];
    }
    if (q == "d3") {
        return c.detector_totals[2];
    }
    if (q == "sifted") {
        return c.sifted;
    }
    if (!s.report) {
        return std::nullopt;
    }
    if (q == "ratio_c2_c1") {
        return s.report->ratio_c1_c2.value;
    }
    if (q == "ratio_c3_c4" && s.report->ratio_c3_c4) {
        return s.report->ratio_c3_c4->value;
    }
    if (q == "visibility") {
        return s.report->visibility.value;
    }
    if (q == "qber") {
        return s.report->qber.value;
    }
    if (q == "coincidence_prob" && s.report->coincidence_prob) {
        return s.report->coincidence_prob->value;
    }
    return std::nullopt;
}

RunArtifacts preset_table1(const std::filesystem::path &dir, const RunOverrides &o, TableFormat format,
                           const EngineOptions &options) {
    const Scenario s = load_preset(dir, "table1.cfg", o);
    const auto reference = load_reference(dir / "table1_reference.csv");
    const SimulationSummary summary = simulate(s, options);
    RunArtifacts out = summary_artifacts(s, summary, format);
    Table t{{"quantity", "published", "simulated", "tolerance", "kind", "within"}, {}};
    std::ostringstream report;
    for (const Reference &r : reference) {
        const auto value = simulated_quantity(summary, r.quantity);
        std::string within = "n/a";
        if (value && r.kind != "info") {
            const double allowed = r.kind == "rel" ? r.tolerance * r.published : r.tolerance;
            within = std::abs(*value - r.published) <= allowed ? "yes" : "no";
        }
        t.rows.push_back({r.quantity, num(r.published), value ? num(*value) : "nan", num(r.tolerance), r.kind, within});
        report << r.quantity << ": published " << format_number(r.published) << ", simulated "
               << (value ? format_number(*value) : "n/a") << " (" << within << ")\n";
    }
    out.files.push_back(table_file("table1_comparison", t, out.fingerprint, s.seed, format));
    out.report += report.str();
    return out;
}

RunArtifacts preset_fig2(const std::filesystem::path &dir, const RunOverrides &o, TableFormat format) {
    return curves_artifacts(load_preset(dir, "fig2.cfg", o), format);
}

RunArtifacts preset_fig3(const std::filesystem::path &dir, const RunOverrides &o, TableFormat format,
                         const EngineOptions &options) {
    const Scenario base = load_preset(dir, "fig3.cfg", o);
    RunArtifacts out;
    out.fingerprint = fingerprint(base);
    out.seed = base.seed;
    Table t{{"bit_alice", "bit_bob", "pulses", "d1", "d2", "d3", "segment_fingerprint"}, {}};
    uint64_t d3_same = 0, d3_diff = 0, n_same = 0, n_diff = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            Scenario seg = base;
            seg.bit_alice = a ? BitChoice::one : BitChoice::zero;
            seg.bit_bob = b ? BitChoice::one : BitChoice::zero;
            const SimulationSummary r = simulate(seg, options);
            const auto &d = r.counters.detector_totals;
            t.rows.push_back({num(uint64_t(a)), num(uint64_t(b)), num(r.n_pulses), num(d[0]), num(d[1]), num(d[2]),
                              r.fingerprint});
            (a == b ? d3_same : d3_diff) += d[2];
            (a == b ? n_same : n_diff) += r.n_pulses;
        }
    }
    const double extinction = ratio(d3_same, n_same) / ratio(d3_diff, n_diff);
    Table e{{"quantity", "value"}, {{"d3_same_per_pulse", num(ratio(d3_same, n_same))},
                                    {"d3_diff_per_pulse", num(ratio(d3_diff, n_diff))},
                                    {"extinction_ratio", num(extinction)}}};
    out.files.push_back(table_file("fig3_segments", t, out.fingerprint, out.seed, format));
    out.files.push_back(table_file("fig3_extinction", e, out.fingerprint, out.seed, format));
    out.report = "D3 extinction same:different bits " + format_number(std::round(extinction * 100) / 100) + ":1\n";
    return out;
}

RunArtifacts preset_vacuum(const std::filesystem::path &dir, const RunOverrides &o, TableFormat format,
                           const EngineOptions &options) {
    const Scenario base = load_preset(dir, "vacuum.cfg", o);
    if (base.attack.type != AttackType::vacuum) {
        throw ConfigError("vacuum preset must set attack.type = vacuum");
    }
    RunArtifacts out;
    out.fingerprint = fingerprint(base);
    out.seed = base.seed;
    Table sweep{{"fraction", "c1", "c2", "ratio_c2_c1", "lower", "upper", "oracle_ratio_c2_c1", "qber", "oracle_qber",
                 "eve_error", "oracle_eve_error", "anomaly"},
                {}};
    Table ideal{{"fraction", "ratio_c2_c1", "bob_error", "eve_error", "case_i", "case_ii", "case_iii", "case_iv"}, {}};
    std::ostringstream report;
    for (double f : base.analysis.sweep_values) {
        Scenario s = base;
        s.attack.fraction = f;
        s.validate();
        const SimulationSummary r = simulate(s, options);
        const OracleResult p = enumeration_oracle(s, OracleMode::poisson);
        const auto c2c1 = r.report ? r.report->ratio_c1_c2 : Estimate{std::nan(""), std::nan(""), std::nan("")};
        const double eve_err = r.eve_error_rate().value_or(std::nan(""));
        sweep.rows.push_back({num(f), num(r.counters.c1), num(r.counters.c2), num(c2c1.value), num(c2c1.lower),
                              num(c2c1.upper), num(p.ratio_c1_c2()), num(r.report ? r.report->qber.value : std::nan("")),
                              num(p.qber()), num(eve_err), num(f > 0 ? p.eve_error_rate() : std::nan("")),
                              anomaly_verdict_name(detect_anomaly(r.counters))});
        const VacuumStats v = enumerate_vacuum_stats(VacuumAttackModel::make(s.attack.variant, f), s.round);
        ideal.rows.push_back({num(f), num(v.ratio_c2_over_c1()), num(v.bob_error), num(v.eve_error),
                              v.key_cases[0] ? "key" : "-", v.key_cases[1] ? "key" : "-", v.key_cases[2] ? "key" : "-",
                              v.key_cases[3] ? "key" : "-"});
        report << "f=" << format_number(f) << "  C1:C2 " << describe_ratio(c2c1) << "  expected 1:"
               << format_number(std::round(p.ratio_c1_c2() * 1000) / 1000) << "\n";
    }
    out.files.push_back(table_file("vacuum_sweep", sweep, out.fingerprint, out.seed, format));
    out.files.push_back(table_file("vacuum_oracle", ideal, out.fingerprint, out.seed, format));
    out.report = report.str();
    return out;
}

RunArtifacts preset_pns(const std::filesystem::path &dir, const RunOverrides &o, TableFormat format,
                        const EngineOptions &options) {
    const Scenario base = load_preset(dir, "pns.cfg", o);
    if (base.attack.type != AttackType::pns) {
        throw ConfigError("pns preset must set attack.type = pns");
    }
    RunArtifacts out;
    out.fingerprint = fingerprint(base);
    out.seed = base.seed;
    Scenario clean = base;
    clean.attack.type = AttackType::none;
    const SimulationSummary baseline = simulate(clean, options);
    const double budget = base.round.channel.eta_loss();
    Table t{{"budget_multiple", "tap_fraction", "informed_fraction", "oracle_informed_fraction", "pns_gain_bound",
             "max_abs_z", "worst_statistic", "invisible", "warning"},
            {}};
    std::ostringstream report;
    for (double m : base.analysis.sweep_values) {
        Scenario s = base;
        s.attack.tap_fraction = std::min(1.0, m * budget);
        s.validate();
        const SimulationSummary r = simulate(s, options);
        const OracleResult p = enumeration_oracle(s, OracleMode::poisson);
        double worst = 0;
        std::string worst_name = "-";
        for (const auto &[name, z] : monitor_deviation(r.counters, baseline.counters)) {
            if (std::abs(z) > worst) {
                worst = std::abs(z);
                worst_name = name;
            }
        }
        const bool invisible = worst < 3;
        t.rows.push_back({num(m), num(*s.attack.tap_fraction), num(r.eve_informed_fraction().value_or(std::nan(""))),
                          num(p.eve_informed_fraction()), num(pns_gain_bound(s.round.mu, s.round.channel)), num(worst),
                          worst_name, invisible ? "yes" : "no", r.warnings.empty() ? "" : "over_budget"});
        report << "tap " << format_number(m) << "x budget: informed "
               << format_number(std::round(r.eve_informed_fraction().value_or(std::nan("")) * 1e4) / 1e4) << "  max |z| "
               << format_number(std::round(worst * 100) / 100) << (invisible ? "  invisible" : "  visible") << "\n";
    }
    out.files.push_back(table_file("pns_sweep", t, out.fingerprint, out.seed, format));
    out.report = report.str();
    return out;
}

}  // namespace

RunArtifacts run_preset(
    const std::string &name,
    const std::filesystem::path &preset_dir,
    const RunOverrides &overrides,
    TableFormat format,
    const EngineOptions &options) {
    if (name == "table1") {
        return preset_table1(preset_dir, overrides, format, options);
    }
    if (name == "fig2") {
        return preset_fig2(preset_dir, overrides, format);
    }
    if (name == "fig3") {
        return preset_fig3(preset_dir, overrides, format, options);
    }
    if (name == "vacuum") {
        return preset_vacuum(preset_dir, overrides, format, options);
    }
    if (name == "pns") {
        return preset_pns(preset_dir, overrides, format, options);
    }
    std::string known;
    for (const auto &n : preset_names()) {
        known += (known.empty() ? "" : ", ") + n;
    }
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

std::vector<std::filesystem::path> emit(const RunArtifacts &artifacts, const std::filesystem::path &out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw ArtifactIoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
    }
    ordered_json manifest;
    manifest["fingerprint"] = artifacts.fingerprint;
    manifest["seed"] = artifacts.seed;
    ordered_json files = ordered_json::array();
    for (const ArtifactFile &f : artifacts.files) {
        files.push_back({{"name", f.name}, {"fnv1a64", hex16(fnv1a(f.content))}, {"bytes", f.content.size()}});
    }
    manifest["files"] = files;
    std::vector<ArtifactFile> all = artifacts.files;
    all.push_back({"manifest.json", manifest.dump(2) + "\n"});

    std::vector<std::filesystem::path> written;
    for (const ArtifactFile &f : all) {
        const std::filesystem::path path = out_dir / f.name;
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw ArtifactIoError("cannot open '" + path.string() + "' for writing");
        }
        file << f.content;
        file.close();
        if (!file) {
            throw ArtifactIoError("failed writing '" + path.string() + "'");
        }
        written.push_back(path);
    }
    return written;
}

}  // namespace cfqkd
