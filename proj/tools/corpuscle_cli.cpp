#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "corpuscle/concentration.hpp"
#include "corpuscle/config.hpp"
#include "corpuscle/conservation.hpp"
#include "corpuscle/corpuscle.hpp"
#include "corpuscle/csvio.hpp"
#include "corpuscle/rng.hpp"
#include "corpuscle/selftest.hpp"
#include "corpuscle/splitting.hpp"

namespace {

using namespace corpuscle;

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("CORPUSCLE_LOG");
    if (!env) return LogLevel::error;
    const std::string v(env);
    if (v == "debug") return LogLevel::debug;
    if (v == "info") return LogLevel::info;
    return LogLevel::error;
}

void log(LogLevel lvl, const std::string& msg) {
    static const LogLevel threshold = log_level();
    if (lvl <= threshold) std::cerr << "[corpuscle] " << msg << "\n";
}

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    std::uint64_t seed = 0;
    bool seed_set = false;
    int quad_nodes = 32;
    double step = 0.0;
    bool step_set = false;
};

StudyConfig load(const Options& opt) {
    if (opt.config_path.empty()) throw std::invalid_argument("config: --config is required");
    StudyConfig c = load_config(opt.config_path);
    if (opt.seed_set) c.seed = opt.seed;
    if (opt.step_set) c.initial_state.step = opt.step;
    return c;
}

std::string join(const std::string& dir, const std::string& name) { return dir + "/" + name; }

int cmd_reconstruct(const Options& opt) {
    StudyConfig c = load(opt);
    const RadialProfile profile = c.profile.build();
    const Nonlinearity rec =
        reconstruct_nonlinearity(profile, c.reconstruct_r_max, c.reconstruct_samples);
    const Nonlinearity closed = c.profile.build_nonlinearity();
    const double s_lo = std::pow(profile.value(4.0), 2);
    const double s_hi = std::pow(profile.value(0.0), 2);
    CsvWriter csv({"s", "gprime", "gprime_closed_form", "abs_err"});
    const int n = std::max(2, c.n_points);
    for (int i = 0; i < n; ++i) {
        const double s = s_lo * std::pow(s_hi / s_lo, double(i) / (n - 1));
        const double gp = rec.gprime(s);
        const double gp_ref = closed.gprime(s);
        csv.add_row({s, gp, gp_ref, std::abs(gp - gp_ref)});
    }
    csv.write(join(opt.out_dir, "reconstruct.csv"));
    log(LogLevel::info, "wrote reconstruct.csv (" + std::to_string(n) + " rows)");
    return 0;
}

int cmd_split(const Options& opt) {
    StudyConfig c = load(opt);
    if (!c.field) throw std::invalid_argument("field: required for the split command");
    SplitResult s = split_polynomial_field(*c.field);
    nlohmann::json j;
    j["potential"] = s.potential.to_json();
    j["tangent"] = s.tangent.to_json();
    atomic_write(join(opt.out_dir, "split.json"), j.dump(2) + "\n");
    log(LogLevel::info, "wrote split.json");
    return 0;
}

Trajectory make_trajectory(const StudyConfig& c) {
    return integrate_newton(c.potentials, c.initial_state.r0, c.initial_state.v0,
                            c.initial_state.t0, c.initial_state.t1, c.initial_state.step,
                            c.constants);
}

int cmd_trajectory(const Options& opt) {
    StudyConfig c = load(opt);
    Trajectory traj = make_trajectory(c);
    CsvWriter csv({"t", "rx", "ry", "rz", "vx", "vy", "vz", "s_p"});
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const TrajectoryState& s = traj.node(i);
        csv.add_row({traj.times()[i], s.r.x, s.r.y, s.r.z, s.v.x, s.v.y, s.v.z, s.s_p});
    }
    csv.write(join(opt.out_dir, "trajectory.csv"));
    log(LogLevel::info, "wrote trajectory.csv (" + std::to_string(traj.size()) + " rows)");
    return 0;
}

WaveCorpuscle make_corpuscle(const StudyConfig& c, const Trajectory& traj) {
    FormFactor ff{c.profile.build(), c.a, c.lambda};
    return WaveCorpuscle(ff, traj, c.potentials, c.P3, c.constants);
}

int cmd_corpuscle_verify(const Options& opt) {
    StudyConfig c = load(opt);
    Trajectory traj = make_trajectory(c);
    WaveCorpuscle wc = make_corpuscle(c, traj);
    Nonlinearity nl = scaled_nonlinearity(c.profile.build_nonlinearity(), c.a);
    const double scale0 = c.constants.chi * c.constants.chi / (2.0 * c.constants.m * c.a * c.a);
    SeededRng rng(c.seed);
    CsvWriter csv({"t", "x", "y", "z", "abs_psi", "residual_re", "residual_im",
                   "residual_over_scale"});
    for (int i = 0; i < c.n_points; ++i) {
        const double t = rng.uniform(traj.t0(), traj.t1());
        const Vec3 x = traj.r(t) + rng.uniform(0.0, 4.0 * c.a) * rng.unit_vector();
        const FieldSample s = wc.sample(t, x);
        const Complex res = nls_residual(s, wc.aux_potentials(t), nl, t, x, c.constants);
        csv.add_row({t, x.x, x.y, x.z, std::abs(s.psi), res.real(), res.imag(),
                     std::abs(res) / (scale0 * std::abs(s.psi))});
    }
    csv.write(join(opt.out_dir, "corpuscle_verify.csv"));
    log(LogLevel::info, "wrote corpuscle_verify.csv");
    return 0;
}

int cmd_conserve(const Options& opt) {
    StudyConfig c = load(opt);
    Trajectory traj = make_trajectory(c);
    WaveCorpuscle wc = make_corpuscle(c, traj);
    Nonlinearity nl = scaled_nonlinearity(c.profile.build_nonlinearity(), c.a);
    AuxPotentials prov(wc);
    const double h = c.h > 0.0 ? c.h : c.a / 20.0;
    SeededRng rng(c.seed);
    CsvWriter csv({"t", "x", "y", "z", "u", "p1", "p2", "p3", "cont_res", "mom_res1", "mom_res2",
                   "mom_res3"});
    const double margin = 2.5 * h;
    for (int i = 0; i < c.n_points; ++i) {
        const double t = rng.uniform(traj.t0() + margin, traj.t1() - margin);
        const Vec3 x = traj.r(t) + rng.uniform(0.0, 3.0 * c.a) * rng.unit_vector();
        const AnalyticPotentials pot = prov.at(t);
        const EnMT e = enmt_at_point(wc.sample(t, x), pot, nl, t, x, c.constants);
        const double cr = continuity_residual(wc, prov, t, x, h, c.constants);
        const Vec3 mr = momentum_residual(wc, prov, nl, t, x, h, c.constants);
        csv.add_row({t, x.x, x.y, x.z, e.u, e.p.x, e.p.y, e.p.z, cr, mr.x, mr.y, mr.z});
    }
    csv.write(join(opt.out_dir, "conserve.csv"));
    log(LogLevel::info, "wrote conserve.csv");
    return 0;
}

int cmd_concentrate(const Options& opt) {
    StudyConfig c = load(opt);
    StudyOptions so;
    so.step = c.initial_state.step;
    so.time_steps = c.time_steps;
    so.threads = std::max(1, opt.threads);
    ConcentrationReport rep = concentration_study(
        c.potentials, c.profile.build(), c.profile.build_nonlinearity(), c.initial_state.r0,
        c.initial_state.v0, c.initial_state.t0, c.initial_state.t1, c.schedule, c.P3, c.constants,
        so);
    CsvWriter csv({"n", "a", "R", "theta", "rho_bar", "center_err", "Q0", "Q01", "Q20", "Q22",
                   "Q23", "Q3", "Pprime_int", "Q0prime", "Q2prime", "Q3prime"});
    for (const ConcentrationRecord& r : rep.records) {
        csv.add_row({double(r.n), r.a, r.R, r.theta, r.rho_bar, r.center_err, norm(r.q.Q0),
                     norm(r.q.Q01), r.q.Q20_sup, r.q.Q22_sup, std::abs(r.q.Q23), norm(r.q.Q3),
                     r.p.Pprime_sup, r.p.Q0prime, r.p.Q2prime, r.p.Q3prime});
    }
    csv.write(join(opt.out_dir, "concentrate.csv"));
    nlohmann::json summary;
    summary["sup_speed"] = rep.sup_speed;
    summary["sup_accel"] = rep.sup_accel;
    for (const auto& [name, fit] : rep.slopes)
        summary["slopes"][name] = {{"slope", fit.slope},
                                   {"r2", fit.r2},
                                   {"points", fit.points},
                                   {"valid", fit.valid}};
    atomic_write(join(opt.out_dir, "concentrate_summary.json"), summary.dump(2) + "\n");
    log(LogLevel::info, "wrote concentrate.csv and concentrate_summary.json");
    return 0;
}

int cmd_selftest(const Options&) {
    bool all_pass = true;
    for (const SelfTestResult& r : run_selftests()) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail << ")\n";
    }
    return all_pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corpuscle: exact soliton solutions, point dynamics, and concentration studies"};
    app.require_subcommand(1);
    app.fallthrough();  // allow global flags after the subcommand name

    Options opt;
    app.add_option("--config", opt.config_path, "JSON study config path");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--threads", opt.threads, "worker count");
    app.add_option("--seed", opt.seed, "override the config seed")
        ->each([&](const std::string&) { opt.seed_set = true; });
    app.add_option("--quad-nodes", opt.quad_nodes, "quadrature node count for ray integrals");
    app.add_option("--step", opt.step, "override the trajectory step")
        ->each([&](const std::string&) { opt.step_set = true; });

    int (*handler)(const Options&) = nullptr;
    app.add_subcommand("reconstruct", "recover the nonlinearity from the profile")
        ->callback([&] { handler = cmd_reconstruct; });
    app.add_subcommand("split", "decompose a polynomial field into gradient + tangent parts")
        ->callback([&] { handler = cmd_split; });
    app.add_subcommand("trajectory", "integrate the point dynamics")
        ->callback([&] { handler = cmd_trajectory; });
    app.add_subcommand("corpuscle-verify", "sample the field-equation residual")
        ->callback([&] { handler = cmd_corpuscle_verify; });
    app.add_subcommand("conserve", "sample conservation-law residuals")
        ->callback([&] { handler = cmd_conserve; });
    app.add_subcommand("concentrate", "run the shrinking-neighborhood study")
        ->callback([&] { handler = cmd_concentrate; });
    app.add_subcommand("selftest", "run the built-in invariant checks")
        ->callback([&] { handler = cmd_selftest; });

    CLI11_PARSE(app, argc, argv);

    try {
        return handler(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
}
