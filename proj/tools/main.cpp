#include <CLI11.hpp>

#include "dispest/commands.hpp"

namespace {

void add_common(CLI::App* sub, dispest::CliOptions& opts, bool config_required) {
    auto* config = sub->add_option("--config", opts.config, "configuration file");
    if (config_required) config->required();
    sub->add_option("--out", opts.out, "output path");
    sub->add_option("--seed", opts.seed, "override the RNG seed");
    sub->add_option("--mc", opts.mc, "Monte-Carlo event count");
    sub->add_option("--r", opts.r, "override the selection radius");
    sub->add_option("--v", opts.v, "override the prior variance");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian two-parameter displacement estimation simulator"};
    app.require_subcommand(1);

    dispest::CliOptions opts;
    int (*entry)(const dispest::CliOptions&) = nullptr;

    auto* simulate = app.add_subcommand(
        "simulate", "run the experiment and write an event log plus a report");
    add_common(simulate, opts, true);
    simulate->callback([&] { entry = dispest::cmd_simulate; });

    auto* sweep = app.add_subcommand(
        "sweep", "evaluate a sweep over prior variance, selection radius or loss");
    add_common(sweep, opts, true);
    sweep->callback([&] { entry = dispest::cmd_sweep; });

    auto* profile = app.add_subcommand(
        "profile", "radial outcome distribution at zero displacement, model vs simulation");
    add_common(profile, opts, true);
    profile->callback([&] { entry = dispest::cmd_profile; });

    auto* analyze = app.add_subcommand(
        "analyze", "recompute selection, estimates and errors from a stored event log");
    analyze->add_option("events", opts.events, "event CSV produced by simulate")->required();
    add_common(analyze, opts, true);
    analyze->callback([&] { entry = dispest::cmd_analyze; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return dispest::kExitUsage;
    }
    return entry(opts);
}
