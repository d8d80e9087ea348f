#include "corpuscle/config.hpp"

#include <fstream>

namespace corpuscle {

RadialProfile ProfileSpec::build() const {
    if (name == "gaussian") return gaussian_profile();
    if (name == "power") return power_profile(p, C);
    throw std::invalid_argument("profile.name: unknown profile '" + name + "'");
}

Nonlinearity ProfileSpec::build_nonlinearity() const {
    if (name == "gaussian") return logarithmic_nonlinearity();
    if (name == "power") return power_profile_nonlinearity(p, C);
    throw std::invalid_argument("profile.name: unknown profile '" + name + "'");
}

namespace {

Vec3 vec3_from(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument(path + ": expected a 3-array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
void get_if(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

StudyConfig StudyConfig::from_json(const nlohmann::json& j) {
    StudyConfig c;
    if (j.contains("constants")) {
        const auto& k = j.at("constants");
        get_if(k, "m", c.constants.m);
        get_if(k, "q", c.constants.q);
        get_if(k, "chi", c.constants.chi);
        get_if(k, "c", c.constants.c);
    }
    if (j.contains("potentials")) c.potentials = AnalyticPotentials::from_json(j.at("potentials"));
    if (j.contains("profile")) {
        const auto& p = j.at("profile");
        get_if(p, "name", c.profile.name);
        get_if(p, "p", c.profile.p);
        get_if(p, "C", c.profile.C);
    }
    get_if(j, "a", c.a);
    get_if(j, "lambda", c.lambda);
    if (j.contains("initial_state")) {
        const auto& s = j.at("initial_state");
        if (s.contains("r0")) c.initial_state.r0 = vec3_from(s.at("r0"), "initial_state.r0");
        if (s.contains("v0")) c.initial_state.v0 = vec3_from(s.at("v0"), "initial_state.v0");
        get_if(s, "t0", c.initial_state.t0);
        get_if(s, "t1", c.initial_state.t1);
        get_if(s, "step", c.initial_state.step);
    }
    if (j.contains("schedule")) {
        const auto& s = j.at("schedule");
        get_if(s, "n_min", c.schedule.n_min);
        get_if(s, "n_max", c.schedule.n_max);
        get_if(s, "a0", c.schedule.a0);
        get_if(s, "a_exp", c.schedule.a_exp);
        get_if(s, "R0", c.schedule.R0);
        get_if(s, "R_exp", c.schedule.R_exp);
    }
    if (j.contains("P3")) c.P3 = PolyScalarField::from_json(j.at("P3"));
    if (j.contains("field")) c.field = PolyVectorField::from_json(j.at("field"));
    get_if(j, "seed", c.seed);
    get_if(j, "n_points", c.n_points);
    get_if(j, "h", c.h);
    get_if(j, "time_steps", c.time_steps);
    get_if(j, "reconstruct_r_max", c.reconstruct_r_max);
    get_if(j, "reconstruct_samples", c.reconstruct_samples);
    return c;
}

nlohmann::json StudyConfig::to_json() const {
    nlohmann::json j;
    j["constants"] = {{"m", constants.m}, {"q", constants.q}, {"chi", constants.chi}, {"c", constants.c}};
    j["potentials"] = potentials.to_json();
    j["profile"] = {{"name", profile.name}, {"p", profile.p}, {"C", profile.C}};
    j["a"] = a;
    j["lambda"] = lambda;
    j["initial_state"] = {{"r0", {initial_state.r0.x, initial_state.r0.y, initial_state.r0.z}},
                          {"v0", {initial_state.v0.x, initial_state.v0.y, initial_state.v0.z}},
                          {"t0", initial_state.t0},
                          {"t1", initial_state.t1},
                          {"step", initial_state.step}};
    j["schedule"] = {{"n_min", schedule.n_min}, {"n_max", schedule.n_max}, {"a0", schedule.a0},
                     {"a_exp", schedule.a_exp}, {"R0", schedule.R0}, {"R_exp", schedule.R_exp}};
    if (!P3.empty()) j["P3"] = P3.to_json();
    if (field) j["field"] = field->to_json();
    j["seed"] = seed;
    j["n_points"] = n_points;
    j["h"] = h;
    j["time_steps"] = time_steps;
    j["reconstruct_r_max"] = reconstruct_r_max;
    j["reconstruct_samples"] = reconstruct_samples;
    return j;
}

void StudyConfig::validate() const {
    constants.validate();
    if (!(a > 0.0)) throw std::invalid_argument("a: must be positive");
    if (!(initial_state.t1 > initial_state.t0))
        throw std::invalid_argument("initial_state: need t1 > t0");
    if (!(initial_state.step > 0.0)) throw std::invalid_argument("initial_state.step: must be positive");
    schedule.validate();
    if (n_points < 1) throw std::invalid_argument("n_points: must be positive");
    if (time_steps < 2) throw std::invalid_argument("time_steps: must be at least 2");
    profile.build();  // validates the name and parameters
}

StudyConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    StudyConfig c = StudyConfig::from_json(j);
    c.validate();
    return c;
}

}  // namespace corpuscle
