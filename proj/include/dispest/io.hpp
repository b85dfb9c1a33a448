#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dispest/estimation.hpp"
#include "dispest/event.hpp"
#include "dispest/montecarlo.hpp"
#include "dispest/wigner.hpp"

namespace dispest {

/// A configuration or event file could not be understood.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parsed flat key/value configuration. Loss entries are applied to the
/// base mixtures when building the run (see effective_probe/effective_ancilla).
struct SimulationSettings {
    double v = 0.34;
    double r = 0.2;
    PhotonMixture probe = PhotonMixture::fock(0);
    PhotonMixture ancilla = PhotonMixture::fock(0);
    double probe_loss = 0.0;
    double ancilla_loss = 0.0;
    std::uint64_t n_events = 100000;
    std::uint64_t seed = 1;
    int profile_bins = 60;
    double profile_rmax = 4.0;

    PhotonMixture effective_probe() const;
    PhotonMixture effective_ancilla() const;
    RunConfig run_config() const;
};

enum class SweepAxis { prior_variance, selection_radius, loss };

/// One sweep: vary `axis` over `values`, everything else from `base`.
/// Loss sweeps apply the axis value as loss on both arms.
struct SweepSpec {
    SweepAxis axis = SweepAxis::prior_variance;
    std::vector<double> values;
    SimulationSettings base;
};

/// "n:w,n:w,..." <-> PhotonMixture
PhotonMixture mixture_from_string(const std::string& text);
std::string mixture_to_string(const PhotonMixture& mix);

SimulationSettings parse_config_text(const std::string& text);
SimulationSettings load_config(const std::filesystem::path& path);
SweepSpec parse_sweep_text(const std::string& text);
SweepSpec load_sweep(const std::filesystem::path& path);

/// Event log CSV. Numbers are written with 17 significant digits so a
/// write/read round trip reproduces every double bit-for-bit; absent
/// estimates round-trip as "nan".
void write_events_csv(const std::filesystem::path& path, std::span<const EventRecord> events);
std::vector<EventRecord> read_events_csv(const std::filesystem::path& path);

/// Result summary for one configuration, in both Monte-Carlo and
/// quadrature form. `ratio` always equals v_prime / v_prime_c exactly.
struct EstimationReport {
    // config echo
    double v = 0.0;
    double r = 0.0;
    std::string probe;
    std::string ancilla;
    std::uint64_t n_events = 0;
    std::uint64_t seed = 0;
    // headline numbers (Monte Carlo when run, else quadrature)
    std::string method;
    double v_prime = 0.0;
    double v_prime_stderr = 0.0;
    double v_prime_c = 0.0;
    double ratio = 0.0;
    double ratio_stderr = 0.0;
    double select_prob = 0.0;
    std::uint64_t n_selected = 0;
    // deterministic cross-check, present whenever the headline is MC
    std::optional<ExpectedError> quad;
};

std::string report_to_json(const EstimationReport& report);
void write_report_json(const std::filesystem::path& path, const EstimationReport& report);

/// Reports as CSV; `rows` share one header line.
std::string report_csv_header();
std::string report_csv_row(const EstimationReport& report);
void write_report_csv(const std::filesystem::path& path,
                      std::span<const EstimationReport> rows);

}  // namespace dispest
