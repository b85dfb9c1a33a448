#include "dispest/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <vector>

#include "dispest/bounds.hpp"
#include "dispest/errors.hpp"
#include "dispest/io.hpp"
#include "dispest/montecarlo.hpp"

namespace dispest {

namespace {

// retarget/analysis draws use a stream index no event can occupy
constexpr std::uint64_t kAnalysisStream = ~std::uint64_t{0};

SimulationSettings load_with_overrides(const CliOptions& opts) {
    if (opts.config.empty()) throw ConfigError("--config is required");
    SimulationSettings s = load_config(opts.config);
    if (opts.v) s.v = *opts.v;
    if (opts.r) s.r = *opts.r;
    if (opts.seed) s.seed = *opts.seed;
    if (opts.mc) s.n_events = *opts.mc;
    return s;
}

std::filesystem::path with_suffix(const std::filesystem::path& base, const char* suffix) {
    std::filesystem::path p = base;
    p.replace_extension();
    p += suffix;
    return p;
}

EstimationReport make_mc_report(const SimulationSettings& s,
                                std::span<const EventRecord> events,
                                const LikelihoodKernel& kernel) {
    const ErrorStats stats = estimation_error(events);
    EstimationReport rep;
    rep.v = s.v;
    rep.r = s.r;
    rep.probe = mixture_to_string(s.effective_probe());
    rep.ancilla = mixture_to_string(s.effective_ancilla());
    rep.n_events = events.size();
    rep.seed = s.seed;
    rep.method = "monte_carlo";
    rep.v_prime = stats.v_prime;
    rep.v_prime_stderr = stats.std_error;
    rep.v_prime_c = classical_limit(s.v, s.r).v_prime_c;
    rep.ratio = rep.v_prime / rep.v_prime_c;
    rep.ratio_stderr = rep.v_prime_stderr / rep.v_prime_c;
    rep.select_prob = static_cast<double>(stats.n_selected) / static_cast<double>(events.size());
    rep.n_selected = stats.n_selected;
    rep.quad = expected_error_quadrature(PriorModel(s.v), kernel, s.r);
    return rep;
}

EstimationReport make_quad_report(const SimulationSettings& s, const LikelihoodKernel& kernel) {
    EstimationReport rep;
    rep.v = s.v;
    rep.r = s.r;
    rep.probe = mixture_to_string(s.effective_probe());
    rep.ancilla = mixture_to_string(s.effective_ancilla());
    rep.n_events = 0;
    rep.seed = s.seed;
    rep.method = "quadrature";
    const ExpectedError e = expected_error_quadrature(PriorModel(s.v), kernel, s.r);
    rep.v_prime = e.v_prime;
    rep.v_prime_c = classical_limit(s.v, s.r).v_prime_c;
    rep.ratio = rep.v_prime / rep.v_prime_c;
    rep.select_prob = e.select_prob;
    return rep;
}

void print_report(const EstimationReport& r) {
    std::printf("v=%g r=%g probe=%s ancilla=%s\n", r.v, r.r, r.probe.c_str(),
                r.ancilla.c_str());
    std::printf("  v' = %.6f +- %.6f  (%s)\n", r.v_prime, r.v_prime_stderr, r.method.c_str());
    std::printf("  v'_C = %.6f   ratio = %.4f +- %.4f\n", r.v_prime_c, r.ratio, r.ratio_stderr);
    std::printf("  selected: %llu (P = %.4f)\n",
                static_cast<unsigned long long>(r.n_selected), r.select_prob);
    if (r.quad)
        std::printf("  quadrature: v' = %.6f ratio = %.4f P = %.4f\n", r.quad->v_prime,
                    r.quad->v_prime / r.v_prime_c, r.quad->select_prob);
}

int run_guarded(const char* name, int (*body)(const CliOptions&), const CliOptions& opts) {
    try {
        return body(opts);
    } catch (const ConfigError& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const RetargetDirectionError& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const DegenerateSelectionError& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const NoEventsError& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return 1;
    }
}

int simulate_body(const CliOptions& opts) {
    const SimulationSettings s = load_with_overrides(opts);
    if (s.n_events < 1) throw ConfigError("n_events must be >= 1");
    if (!(s.v > 0.0)) throw ConfigError("v must be > 0");
    if (!(s.r >= 0.0)) throw ConfigError("r must be >= 0");

    const LikelihoodKernel kernel =
        build_likelihood(s.effective_probe(), s.effective_ancilla());
    const std::vector<EventRecord> events = run_experiment(s.run_config());

    const std::filesystem::path out = opts.out.empty() ? "events.csv" : opts.out;
    write_events_csv(out, events);
    std::printf("wrote %zu events to %s\n", events.size(), out.string().c_str());

    const EstimationReport rep = make_mc_report(s, events, kernel);  // throws if none selected
    write_report_json(with_suffix(out, ".report.json"), rep);
    const EstimationReport rows[] = {rep};
    write_report_csv(with_suffix(out, ".report.csv"), rows);
    print_report(rep);
    return kExitOk;
}

int sweep_body(const CliOptions& opts) {
    if (opts.config.empty()) throw ConfigError("--config is required");
    SweepSpec spec = load_sweep(opts.config);
    if (opts.seed) spec.base.seed = *opts.seed;
    if (opts.v) spec.base.v = *opts.v;
    if (opts.r) spec.base.r = *opts.r;

    auto row_settings = [&](std::size_t i) {
        SimulationSettings s = spec.base;
        const double x = spec.values[i];
        switch (spec.axis) {
            case SweepAxis::prior_variance: s.v = x; break;
            case SweepAxis::selection_radius: s.r = x; break;
            case SweepAxis::loss: s.probe_loss = s.ancilla_loss = x; break;
        }
        s.seed = spec.base.seed + i;  // per-row substream of the base seed
        return s;
    };

    auto compute_row = [&](std::size_t i) {
        const SimulationSettings s = row_settings(i);
        const LikelihoodKernel kernel =
            build_likelihood(s.effective_probe(), s.effective_ancilla());
        if (opts.mc) {
            SimulationSettings ms = s;
            ms.n_events = *opts.mc;
            const std::vector<EventRecord> events = run_experiment(ms.run_config(), 1);
            return make_mc_report(ms, events, kernel);
        }
        return make_quad_report(s, kernel);
    };

    // Rows run independently; output stays in input order.
    std::vector<std::future<EstimationReport>> futures;
    futures.reserve(spec.values.size());
    for (std::size_t i = 0; i < spec.values.size(); ++i)
        futures.push_back(std::async(std::launch::async, compute_row, i));
    std::vector<EstimationReport> rows;
    rows.reserve(futures.size());
    for (auto& f : futures) rows.push_back(f.get());

    const std::filesystem::path out = opts.out.empty() ? "sweep.csv" : opts.out;
    write_report_csv(out, rows);
    for (const EstimationReport& r : rows) print_report(r);
    std::printf("wrote %zu rows to %s\n", rows.size(), out.string().c_str());
    return kExitOk;
}

int profile_body(const CliOptions& opts) {
    const SimulationSettings s = load_with_overrides(opts);
    if (s.n_events < 1) throw ConfigError("n_events must be >= 1");
    if (s.profile_bins < 1) throw ConfigError("profile_bins must be >= 1");
    if (!(s.profile_rmax > 0.0)) throw ConfigError("profile_rmax must be > 0");

    const LikelihoodKernel kernel =
        build_likelihood(s.effective_probe(), s.effective_ancilla());

    // No displacement: the outcome density is the radial kernel itself.
    std::vector<std::uint64_t> counts(s.profile_bins, 0);
    const double bin_width = s.profile_rmax / s.profile_bins;
    for (std::uint64_t i = 0; i < s.n_events; ++i) {
        RngStream rng(s.seed, i);
        const Outcome y = sample_outcome(kernel, Displacement{0.0, 0.0}, rng);
        const double rho = std::hypot(y.y_x, y.y_p);
        const auto bin = static_cast<std::int64_t>(rho / bin_width);
        if (bin >= 0 && bin < s.profile_bins) ++counts[bin];
    }

    const std::filesystem::path out = opts.out.empty() ? "profile.csv" : opts.out;
    std::ofstream file(out);
    if (!file) throw ConfigError("cannot write " + out.string());
    file << "radius,model_density,sim_density,count\n";
    char buf[160];
    for (int b = 0; b < s.profile_bins; ++b) {
        const double lo = b * bin_width;
        const double hi = lo + bin_width;
        const double center = 0.5 * (lo + hi);
        const double model = 2.0 * kernel.kernel().value_at(2.0 * center * center);
        const double area = std::numbers::pi * (hi * hi - lo * lo);
        const double sim =
            static_cast<double>(counts[b]) / (static_cast<double>(s.n_events) * area);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%llu\n", center, model, sim,
                      static_cast<unsigned long long>(counts[b]));
        file << buf;
    }
    std::printf("wrote %d profile bins to %s\n", s.profile_bins, out.string().c_str());
    return kExitOk;
}

int analyze_body(const CliOptions& opts) {
    if (opts.events.empty()) throw ConfigError("analyze needs an event file");
    if (opts.config.empty()) throw ConfigError("--config is required");
    const SimulationSettings base = load_config(opts.config);
    const double v_source = base.v;  // the prior the stored events were drawn from
    SimulationSettings s = base;
    if (opts.v) s.v = *opts.v;
    if (opts.r) s.r = *opts.r;
    if (opts.seed) s.seed = *opts.seed;

    std::vector<EventRecord> events = read_events_csv(opts.events);
    const LikelihoodKernel kernel =
        build_likelihood(s.effective_probe(), s.effective_ancilla());

    if (s.v < v_source) {
        RngStream rng(s.seed, kAnalysisStream);
        events = retarget_variance(events, v_source, s.v, kernel, rng);
    } else if (s.v > v_source) {
        throw RetargetDirectionError("analyze: target v exceeds the v events were drawn from");
    }

    // Re-derive selection and estimates from the stored outcomes.
    const PriorModel prior(s.v);
    for (EventRecord& e : events) {
        const Outcome y{e.y_x, e.y_p};
        e.selected = post_select(y, s.r);
        if (e.selected) {
            try {
                const PosteriorSummary ps = posterior_mean(prior, kernel, y);
                e.est_xi = ps.mean_xi;
                e.est_eta = ps.mean_eta;
                const double dx = e.xi - ps.mean_xi;
                const double dy = e.eta - ps.mean_eta;
                e.sq_err = dx * dx + dy * dy;
            } catch (const DegeneratePosteriorError&) {
                e.selected = false;
            }
        }
        if (!e.selected) {
            e.est_xi = e.est_eta = e.sq_err = std::numeric_limits<double>::quiet_NaN();
        }
    }

    SimulationSettings echo = s;
    echo.n_events = events.size();
    const EstimationReport rep = make_mc_report(echo, events, kernel);
    const std::filesystem::path out = opts.out.empty() ? "analysis.json" : opts.out;
    write_report_json(out, rep);
    const EstimationReport rows[] = {rep};
    write_report_csv(with_suffix(out, ".csv"), rows);
    print_report(rep);
    return kExitOk;
}

}  // namespace

int cmd_simulate(const CliOptions& opts) { return run_guarded("simulate", simulate_body, opts); }
int cmd_sweep(const CliOptions& opts) { return run_guarded("sweep", sweep_body, opts); }
int cmd_profile(const CliOptions& opts) { return run_guarded("profile", profile_body, opts); }
int cmd_analyze(const CliOptions& opts) { return run_guarded("analyze", analyze_body, opts); }

}  // namespace dispest
