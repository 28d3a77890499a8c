#include "wpt/serialize.hpp"

namespace wpt {

using nlohmann::json;

void to_json(json& j, const CoilPair& c)
{
    j = json{{"gamma_s", c.gamma_s},   {"gamma_d", c.gamma_d},   {"gamma_w", c.gamma_w},
             {"omega_s0", c.omega_s0}, {"omega_d0", c.omega_d0}, {"l_s", c.l_s},
             {"l_d", c.l_d}};
}

void to_json(json& j, const IntegratorConfig& c)
{
    j = json{{"method", to_string(c.method)},
             {"rel_tol", c.rel_tol},
             {"abs_tol", c.abs_tol},
             {"max_step_fraction", c.max_step_fraction},
             {"sample_count", c.sample_count}};
}

void to_json(json& j, const PhysicsOptions& p)
{
    j = json{{"phi_dot_mode", to_string(p.cd.phi_dot)},
             {"kappa_a_ramp_fraction", p.cd.ramp_fraction},
             {"loss_convention", to_string(p.losses)}};
}

void to_json(json& j, const DistanceModel& m)
{
    j = json{{"form", to_string(m.form)}, {"kappa_ref", m.kappa_ref}, {"d_ref", m.d_ref}, {"exponent", m.exponent}};
}

void to_json(json& j, const ScheduleParams& s)
{
    j = json{{"kappa0", s.kappa0}, {"delta_offset", s.delta_offset}, {"beta", s.beta}, {"t0", s.t0}};
}

void to_json(json& j, const SweepAxis& a)
{
    j = json{{"name", a.name}, {"min", a.min}, {"max", a.max}, {"count", a.count}, {"scale", to_string(a.scale)}};
}

void to_json(json& j, const SweepOutputs& o)
{
    json list = json::array();
    if (o.eta)
        list.push_back("eta");
    if (o.fidelity)
        list.push_back("fidelity");
    if (o.trajectories)
        list.push_back("trajectories");
    j = list;
}

void to_json(json& j, const SweepSpec& s)
{
    json protocols = json::array();
    for (Protocol p : s.protocols)
        protocols.push_back(to_string(p));
    j = json{{"axes", s.axes},         {"coils", s.coils},           {"schedule", s.schedule},
             {"distance", s.distance}, {"protocols", protocols},     {"outputs", s.outputs},
             {"integrator", s.integrator}, {"physics", s.physics}};
}

void to_json(json& j, const Figure4Config& f)
{
    j = json{{"kappa0", f.kappa0},       {"ratios", f.ratios},         {"delta_min", f.delta_min},
             {"delta_max", f.delta_max}, {"delta_count", f.delta_count}, {"gamma_w", f.gamma_w},
             {"beta_t0", f.beta_t0}};
}

void to_json(json& j, const Figure5Config& f)
{
    json sched = f.schedule;
    sched.erase("kappa0");
    json coils{{"gamma_s", f.coils.gamma_s}, {"gamma_d", f.coils.gamma_d}, {"gamma_w", f.coils.gamma_w}};
    j = json{{"model", f.model}, {"d_min", f.d_min}, {"d_max", f.d_max}, {"d_count", f.d_count},
             {"schedule", sched}, {"coils", coils}};
}

void to_json(json& j, const Figure6Config& f)
{
    j = json{{"kappa_min", f.kappa_min}, {"kappa_max", f.kappa_max}, {"kappa_count", f.kappa_count},
             {"gamma_min", f.gamma_min}, {"gamma_max", f.gamma_max}, {"gamma_count", f.gamma_count},
             {"delta", f.delta},         {"beta_t0", f.beta_t0},     {"gamma_w", f.gamma_w}};
}

void to_json(json& j, const Provenance& p)
{
    j = json{{"config_hash", p.config_hash},
             {"integrator_stats", p.stats},
             {"wall_seconds", p.wall_seconds},
             {"threads", p.threads}};
}

} // namespace wpt

namespace wpt::ode {

void to_json(nlohmann::json& j, const Stats& s)
{
    j = nlohmann::json{{"accepted_steps", s.accepted}, {"rejected_steps", s.rejected}, {"rhs_evaluations", s.rhs_evals}};
}

} // namespace wpt::ode
