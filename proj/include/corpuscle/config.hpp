#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "corpuscle/concentration.hpp"
#include "corpuscle/potentials.hpp"

namespace corpuscle {

struct InitialState {
    Vec3 r0, v0;
    double t0 = 0.0;
    double t1 = 1.0;
    double step = 1e-3;
};

struct ProfileSpec {
    std::string name = "gaussian";  // "gaussian" or "power"
    double p = 2.0;
    double C = 1.0;
    RadialProfile build() const;
    Nonlinearity build_nonlinearity() const;  // closed form matching the profile
};

struct StudyConfig {
    PhysicalConstants constants;
    AnalyticPotentials potentials;
    ProfileSpec profile;
    double a = 0.05;
    double lambda = 0.0;
    InitialState initial_state;
    ConcentrationSchedule schedule;
    PolyScalarField P3;
    std::optional<PolyVectorField> field;  // input of `split`
    std::uint64_t seed = 12345;
    int n_points = 200;       // sample count for corpuscle-verify / conserve
    double h = 0.0;           // stencil half-step; 0 -> a/20
    int time_steps = 24;
    double reconstruct_r_max = 12.0;
    int reconstruct_samples = 4096;

    static StudyConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;  // throws std::invalid_argument with field paths
};

StudyConfig load_config(const std::string& path);

}  // namespace corpuscle
