#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

namespace dispest {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDegenerate = 3;

/// Options shared by the CLI subcommands; unset optionals fall back to the
/// configuration file.
struct CliOptions {
    std::filesystem::path config;
    std::filesystem::path out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> mc;
    std::optional<double> r;
    std::optional<double> v;
    std::filesystem::path events;  // analyze input
};

int cmd_simulate(const CliOptions& opts);
int cmd_sweep(const CliOptions& opts);
int cmd_profile(const CliOptions& opts);
int cmd_analyze(const CliOptions& opts);

}  // namespace dispest
