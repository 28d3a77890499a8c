#include "wpt/config.hpp"

#include "wpt/error.hpp"
#include "wpt/serialize.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace wpt {

using nlohmann::json;

namespace {

const json& empty_object()
{
    static const json e = json::object();
    return e;
}

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

/// Strict view over one JSON object: every key must be consumed.
class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(path_, "expected an object");
    }

    const std::string& path() const { return path_; }
    std::string at(const std::string& key) const { return join(path_, key); }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json* raw(const std::string& key)
    {
        used_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    double number(const std::string& key, double def)
    {
        const json* v = raw(key);
        if (!v)
            return def;
        if (!v->is_number())
            throw ConfigError(at(key), "expected a number");
        return v->get<double>();
    }

    int integer(const std::string& key, int def)
    {
        const json* v = raw(key);
        if (!v)
            return def;
        if (!v->is_number_integer())
            throw ConfigError(at(key), "expected an integer");
        return v->get<int>();
    }

    bool boolean(const std::string& key, bool def)
    {
        const json* v = raw(key);
        if (!v)
            return def;
        if (!v->is_boolean())
            throw ConfigError(at(key), "expected true or false");
        return v->get<bool>();
    }

    std::string string(const std::string& key, const std::string& def)
    {
        const json* v = raw(key);
        if (!v)
            return def;
        if (!v->is_string())
            throw ConfigError(at(key), "expected a string");
        return v->get<std::string>();
    }

    std::vector<double> numbers(const std::string& key, const std::vector<double>& def)
    {
        const json* v = raw(key);
        if (!v)
            return def;
        if (!v->is_array())
            throw ConfigError(at(key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v->size(); ++i) {
            if (!(*v)[i].is_number())
                throw ConfigError(at(key) + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back((*v)[i].get<double>());
        }
        return out;
    }

    Node child(const std::string& key)
    {
        const json* v = raw(key);
        return Node(v ? *v : empty_object(), at(key));
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!used_.count(it.key()))
                throw ConfigError(at(it.key()), "unknown key");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

void require(bool ok, const std::string& path, const std::string& what)
{
    if (!ok)
        throw ConfigError(path, what);
}

// Converts a library parse failure into a field-path error.
template <class F>
auto enum_field(Node& n, const std::string& key, const std::string& def, F&& parse)
{
    const std::string s = n.string(key, def);
    try {
        return parse(s);
    } catch (const InvalidParameter& e) {
        throw ConfigError(n.at(key), e.what());
    }
}

CoilPair parse_coils(Node n, const CoilPair& def)
{
    CoilPair c;
    c.gamma_s = n.number("gamma_s", def.gamma_s);
    c.gamma_d = n.number("gamma_d", def.gamma_d);
    c.gamma_w = n.number("gamma_w", def.gamma_w);
    c.omega_s0 = n.number("omega_s0", def.omega_s0);
    c.omega_d0 = n.number("omega_d0", def.omega_d0);
    c.l_s = n.number("l_s", def.l_s);
    c.l_d = n.number("l_d", def.l_d);
    n.finish();
    require(c.gamma_s >= 0.0, n.at("gamma_s"), "must be >= 0");
    require(c.gamma_d >= 0.0, n.at("gamma_d"), "must be >= 0");
    require(c.gamma_w >= 0.0, n.at("gamma_w"), "must be >= 0");
    require(c.omega_s0 > 0.0, n.at("omega_s0"), "must be > 0");
    require(c.omega_d0 > 0.0, n.at("omega_d0"), "must be > 0");
    require(c.l_s > 0.0, n.at("l_s"), "must be > 0");
    require(c.l_d > 0.0, n.at("l_d"), "must be > 0");
    return c;
}

ScheduleParams parse_lz(Node& n, const ScheduleParams& def, bool need_kappa0 = true)
{
    ScheduleParams s;
    s.kappa0 = need_kappa0 ? n.number("kappa0", def.kappa0) : def.kappa0;
    s.delta_offset = n.number("delta_offset", def.delta_offset);
    s.beta = n.number("beta", def.beta);
    s.t0 = n.number("t0", def.t0);
    if (need_kappa0)
        require(s.kappa0 > 0.0, n.at("kappa0"), "must be > 0");
    require(s.t0 > 0.0, n.at("t0"), "must be > 0");
    return s;
}

ScheduleConfig parse_schedule(Node n)
{
    ScheduleConfig s;
    const std::string kind = n.string("kind", "landau_zener");
    if (kind == "landau_zener")
        s.kind = ScheduleKind::LandauZener;
    else if (kind == "sampled")
        s.kind = ScheduleKind::Sampled;
    else
        throw ConfigError(n.at("kind"), "expected landau_zener or sampled");
    s.lz = parse_lz(n, ScheduleParams{});
    s.times = n.numbers("times", {});
    s.delta = n.numbers("delta", {});
    s.kappa = n.numbers("kappa", {});
    n.finish();
    if (s.kind == ScheduleKind::Sampled) {
        try {
            (void)s.build();
        } catch (const InvalidParameter& e) {
            throw ConfigError(n.at("times"), e.what());
        }
    }
    return s;
}

IntegratorConfig parse_integrator(Node n)
{
    IntegratorConfig c;
    const IntegratorConfig def;
    c.method = enum_field(n, "method", std::string(to_string(def.method)), integrator_method_from_string);
    c.rel_tol = n.number("rel_tol", def.rel_tol);
    c.abs_tol = n.number("abs_tol", def.abs_tol);
    c.max_step_fraction = n.number("max_step_fraction", def.max_step_fraction);
    c.sample_count = n.integer("sample_count", def.sample_count);
    n.finish();
    require(c.rel_tol > 0.0, n.at("rel_tol"), "must be > 0");
    require(c.abs_tol > 0.0, n.at("abs_tol"), "must be > 0");
    require(c.max_step_fraction > 0.0 && c.max_step_fraction <= 1.0, n.at("max_step_fraction"),
            "must lie in (0, 1]");
    require(c.sample_count >= 2, n.at("sample_count"), "must be >= 2");
    return c;
}

DistanceModel parse_distance(Node n, const DistanceModel& def)
{
    DistanceModel m;
    m.form = enum_field(n, "form", std::string(to_string(def.form)), distance_form_from_string);
    m.kappa_ref = n.number("kappa_ref", def.kappa_ref);
    m.d_ref = n.number("d_ref", def.d_ref);
    m.exponent = n.number("exponent", def.exponent);
    n.finish();
    require(m.kappa_ref > 0.0, n.at("kappa_ref"), "must be > 0");
    require(m.d_ref > 0.0, n.at("d_ref"), "must be > 0");
    require(m.exponent > 0.0, n.at("exponent"), "must be > 0");
    return m;
}

std::vector<Protocol> parse_protocols(Node& n, const std::string& key, const std::vector<Protocol>& def)
{
    const json* v = n.raw(key);
    if (!v)
        return def;
    require(v->is_array() && !v->empty(), n.at(key), "expected a non-empty array of protocol names");
    std::vector<Protocol> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
        const std::string p = n.at(key) + "[" + std::to_string(i) + "]";
        require((*v)[i].is_string(), p, "expected a string");
        try {
            out.push_back(protocol_from_string((*v)[i].get<std::string>()));
        } catch (const InvalidParameter& e) {
            throw ConfigError(p, e.what());
        }
    }
    return out;
}

SweepConfig parse_sweep(Node n)
{
    SweepConfig s;
    if (const json* axes = n.raw("axes")) {
        const std::string path = n.at("axes");
        require(axes->is_array() && !axes->empty() && axes->size() <= 2, path, "expected one or two axes");
        s.axes.clear();
        for (std::size_t i = 0; i < axes->size(); ++i) {
            Node a((*axes)[i], path + "[" + std::to_string(i) + "]");
            SweepAxis axis;
            axis.name = a.string("name", "");
            require(sweep_param_from_string(axis.name).has_value(), a.at("name"),
                    "unrecognized axis (kappa0, delta, beta, t0, gamma_s, gamma_d, gamma_w, gamma_sd, d)");
            axis.min = a.number("min", 0.0);
            axis.max = a.number("max", 1.0);
            axis.count = a.integer("count", 2);
            axis.scale = enum_field(a, "scale", "linear", axis_scale_from_string);
            a.finish();
            require(axis.count >= 1, a.at("count"), "must be >= 1");
            if (axis.scale == AxisScale::Log)
                require(axis.min > 0.0 && axis.max > 0.0, a.at("min"), "log axis needs positive bounds");
            s.axes.push_back(axis);
        }
        if (s.axes.size() == 2)
            require(s.axes[0].name != s.axes[1].name, path, "axes must differ");
    }
    s.protocols = parse_protocols(n, "protocols", s.protocols);
    if (const json* outs = n.raw("outputs")) {
        const std::string path = n.at("outputs");
        require(outs->is_array(), path, "expected an array");
        s.outputs = SweepOutputs{false, false, false};
        for (std::size_t i = 0; i < outs->size(); ++i) {
            const std::string p = path + "[" + std::to_string(i) + "]";
            require((*outs)[i].is_string(), p, "expected a string");
            const auto name = (*outs)[i].get<std::string>();
            if (name == "eta")
                s.outputs.eta = true;
            else if (name == "fidelity")
                s.outputs.fidelity = true;
            else if (name == "trajectories")
                s.outputs.trajectories = true;
            else
                throw ConfigError(p, "expected eta, fidelity or trajectories");
        }
    }
    n.finish();
    return s;
}

Figure4Config parse_figure4(Node n)
{
    const Figure4Config def;
    Figure4Config f;
    f.kappa0 = n.number("kappa0", def.kappa0);
    f.ratios = n.numbers("ratios", def.ratios);
    f.delta_min = n.number("delta_min", def.delta_min);
    f.delta_max = n.number("delta_max", def.delta_max);
    f.delta_count = n.integer("delta_count", def.delta_count);
    f.gamma_w = n.number("gamma_w", def.gamma_w);
    f.beta_t0 = n.number("beta_t0", def.beta_t0);
    n.finish();
    require(f.kappa0 > 0.0, n.at("kappa0"), "must be > 0");
    require(!f.ratios.empty(), n.at("ratios"), "must not be empty");
    for (double r : f.ratios)
        require(r > 0.0, n.at("ratios"), "entries must be > 0");
    require(f.delta_count >= 2, n.at("delta_count"), "must be >= 2");
    require(f.gamma_w >= 0.0, n.at("gamma_w"), "must be >= 0");
    return f;
}

Figure5Config parse_figure5(Node n)
{
    const Figure5Config def;
    Figure5Config f;
    f.model = parse_distance(n.child("model"), def.model);
    f.d_min = n.number("d_min", def.d_min);
    f.d_max = n.number("d_max", def.d_max);
    f.d_count = n.integer("d_count", def.d_count);
    {
        Node s = n.child("schedule");
        f.schedule = parse_lz(s, def.schedule, false);
        s.finish();
    }
    {
        Node c = n.child("coils");
        f.coils.gamma_s = c.number("gamma_s", def.coils.gamma_s);
        f.coils.gamma_d = c.number("gamma_d", def.coils.gamma_d);
        f.coils.gamma_w = c.number("gamma_w", def.coils.gamma_w);
        c.finish();
        require(f.coils.gamma_s >= 0.0 && f.coils.gamma_d >= 0.0 && f.coils.gamma_w >= 0.0, c.path(),
                "loss rates must be >= 0");
    }
    n.finish();
    require(f.d_min > 0.0, n.at("d_min"), "must be > 0");
    require(f.d_max > f.d_min, n.at("d_max"), "must exceed d_min");
    require(f.d_count >= 2, n.at("d_count"), "must be >= 2");
    return f;
}

Figure6Config parse_figure6(Node n)
{
    const Figure6Config def;
    Figure6Config f;
    f.kappa_min = n.number("kappa_min", def.kappa_min);
    f.kappa_max = n.number("kappa_max", def.kappa_max);
    f.kappa_count = n.integer("kappa_count", def.kappa_count);
    f.gamma_min = n.number("gamma_min", def.gamma_min);
    f.gamma_max = n.number("gamma_max", def.gamma_max);
    f.gamma_count = n.integer("gamma_count", def.gamma_count);
    f.delta = n.number("delta", def.delta);
    f.beta_t0 = n.number("beta_t0", def.beta_t0);
    f.gamma_w = n.number("gamma_w", def.gamma_w);
    n.finish();
    require(f.kappa_min > 0.0, n.at("kappa_min"), "must be > 0");
    require(f.kappa_max >= f.kappa_min, n.at("kappa_max"), "must be >= kappa_min");
    require(f.kappa_count >= 2, n.at("kappa_count"), "must be >= 2");
    require(f.gamma_min >= 0.0, n.at("gamma_min"), "must be >= 0");
    require(f.gamma_max >= f.gamma_min, n.at("gamma_max"), "must be >= gamma_min");
    require(f.gamma_count >= 2, n.at("gamma_count"), "must be >= 2");
    require(f.gamma_w >= 0.0, n.at("gamma_w"), "must be >= 0");
    return f;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

DriveSchedule ScheduleConfig::build() const
{
    if (kind == ScheduleKind::Sampled)
        return DriveSchedule::sampled(times, delta, kappa);
    return lz.build();
}

PhysicsOptions RunConfig::physics() const
{
    PhysicsOptions p;
    p.cd.phi_dot = phi_dot_mode;
    p.cd.ramp_fraction = ramp_enabled ? ramp_fraction : 0.0;
    p.losses = loss_convention;
    return p;
}

IntegratorConfig RunConfig::effective_integrator() const
{
    IntegratorConfig c = integrator;
    if (deterministic)
        c.method = IntegratorMethod::FixedRK4;
    return c;
}

SweepSpec RunConfig::sweep_spec() const
{
    SweepSpec s;
    s.axes = sweep.axes;
    s.coils = coils;
    s.schedule = schedule.lz;
    s.distance = distance;
    s.protocols = sweep.protocols;
    s.outputs = sweep.outputs;
    s.integrator = effective_integrator();
    s.physics = physics();
    return s;
}

RunConfig parse_config(const json& doc)
{
    Node root(doc, "");
    RunConfig cfg;
    cfg.coils = parse_coils(root.child("coils"), cfg.coils);
    cfg.schedule = parse_schedule(root.child("schedule"));
    cfg.integrator = parse_integrator(root.child("integrator"));
    cfg.distance = parse_distance(root.child("distance"), cfg.distance);
    cfg.sweep = parse_sweep(root.child("sweep"));
    {
        Node sim = root.child("simulate");
        cfg.simulate_protocol = enum_field(sim, "protocol", "tqd", protocol_from_string);
        sim.finish();
    }
    {
        Node figs = root.child("figures");
        cfg.figures.figure4 = parse_figure4(figs.child("figure4"));
        cfg.figures.figure5 = parse_figure5(figs.child("figure5"));
        cfg.figures.figure6 = parse_figure6(figs.child("figure6"));
        figs.finish();
    }
    cfg.output_dir = root.string("output_dir", cfg.output_dir);
    require(!cfg.output_dir.empty(), "output_dir", "must not be empty");
    cfg.deterministic = root.boolean("deterministic", cfg.deterministic);
    cfg.phi_dot_mode = enum_field(root, "phi_dot_mode", "exact", phi_dot_mode_from_string);
    {
        Node ramp = root.child("kappa_a_ramp");
        cfg.ramp_enabled = ramp.boolean("enabled", cfg.ramp_enabled);
        cfg.ramp_fraction = ramp.number("fraction", cfg.ramp_fraction);
        ramp.finish();
        require(cfg.ramp_fraction > 0.0 && cfg.ramp_fraction <= 0.5, ramp.at("fraction"), "must lie in (0, 0.5]");
    }
    cfg.loss_convention = enum_field(root, "loss_convention", "amplitude", loss_convention_from_string);
    cfg.threads = root.integer("threads", cfg.threads);
    require(cfg.threads >= 0, "threads", "must be >= 0");
    root.finish();
    return cfg;
}

json parse_json_text(const std::string& text, const std::string& origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        std::ostringstream msg;
        msg << origin << ":" << line << ":" << col << ": JSON syntax error: " << e.what();
        throw ConfigError("", msg.str());
    }
}

void apply_overrides(json& doc, const std::vector<std::string>& overrides)
{
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("", "override '" + ov + "' is not KEY=VALUE");
        const std::string key = ov.substr(0, eq);
        const std::string text = ov.substr(eq + 1);
        json value;
        try {
            value = json::parse(text);
        } catch (const json::parse_error&) {
            value = text;
        }
        json* node = &doc;
        std::size_t start = 0;
        while (true) {
            const auto dot = key.find('.', start);
            const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
            if (part.empty())
                throw ConfigError(key, "empty path component in override");
            if (!node->is_object())
                throw ConfigError(key, "override path runs through a non-object");
            if (dot == std::string::npos) {
                (*node)[part] = value;
                break;
            }
            node = &(*node)[part];
            if (node->is_null())
                *node = json::object();
            start = dot + 1;
        }
    }
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides)
{
    json doc = json::object();
    if (!path.empty()) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("", "cannot read config file " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        doc = parse_json_text(buf.str(), path.string());
    }
    apply_overrides(doc, overrides);
    return parse_config(doc);
}

json emit_config(const RunConfig& cfg)
{
    json schedule{{"kind", cfg.schedule.kind == ScheduleKind::Sampled ? "sampled" : "landau_zener"},
                  {"kappa0", cfg.schedule.lz.kappa0},
                  {"delta_offset", cfg.schedule.lz.delta_offset},
                  {"beta", cfg.schedule.lz.beta},
                  {"t0", cfg.schedule.lz.t0},
                  {"times", cfg.schedule.times},
                  {"delta", cfg.schedule.delta},
                  {"kappa", cfg.schedule.kappa}};
    json protocols = json::array();
    for (Protocol p : cfg.sweep.protocols)
        protocols.push_back(to_string(p));
    return json{{"coils", cfg.coils},
                {"schedule", schedule},
                {"integrator", cfg.integrator},
                {"distance", cfg.distance},
                {"sweep", {{"axes", cfg.sweep.axes}, {"protocols", protocols}, {"outputs", cfg.sweep.outputs}}},
                {"simulate", {{"protocol", to_string(cfg.simulate_protocol)}}},
                {"figures",
                 {{"figure4", cfg.figures.figure4}, {"figure5", cfg.figures.figure5}, {"figure6", cfg.figures.figure6}}},
                {"output_dir", cfg.output_dir},
                {"deterministic", cfg.deterministic},
                {"phi_dot_mode", to_string(cfg.phi_dot_mode)},
                {"kappa_a_ramp", {{"enabled", cfg.ramp_enabled}, {"fraction", cfg.ramp_fraction}}},
                {"loss_convention", to_string(cfg.loss_convention)},
                {"threads", cfg.threads}};
}

} // namespace wpt
