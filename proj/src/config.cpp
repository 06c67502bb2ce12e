#include "relsim/config.hpp"

#include <fstream>
#include <stdexcept>

#include "relsim/transition.hpp"

namespace relsim {

using nlohmann::json;

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::simulate: return "simulate";
        case ExperimentKind::validate_sampler: return "validate-sampler";
        case ExperimentKind::drift_check: return "drift-check";
        case ExperimentKind::hitting_moments: return "hitting-moments";
        case ExperimentKind::theorem_check: return "theorem-check";
        case ExperimentKind::dynkin_check: return "dynkin-check";
        case ExperimentKind::stationary: return "stationary";
        case ExperimentKind::regeneration: return "regeneration";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

ExperimentKind parse_kind(const std::string& s) {
    for (auto k : {ExperimentKind::simulate, ExperimentKind::validate_sampler,
                   ExperimentKind::drift_check, ExperimentKind::hitting_moments,
                   ExperimentKind::theorem_check, ExperimentKind::dynkin_check,
                   ExperimentKind::stationary, ExperimentKind::regeneration})
        if (s == to_string(k)) return k;
    fail("config: unknown experiment '" + s + "'");
}

double require_num(const json& j, const std::string& where, const char* field) {
    if (!j.contains(field) || !j[field].is_number())
        fail("config: missing or non-numeric field " + where + "." + field);
    return j[field].get<double>();
}

FamilyDescriptor parse_family(const json& intensity, const char* name) {
    if (!intensity.contains(name))
        fail(std::string("config: missing intensity.") + name + " block");
    const json& jf = intensity[name];
    if (!jf.contains("kind") || !jf["kind"].is_string())
        fail(std::string("config: missing intensity.") + name + ".kind");
    const std::string kind = jf["kind"].get<std::string>();
    const json params = jf.value("params", json::object());
    const std::string where = std::string("intensity.") + name + ".params";

    FamilyDescriptor f;
    if (kind == "constant") {
        f = constant_family(require_num(params, where, "c"));
    } else if (kind == "reciprocal") {
        f = reciprocal_family(require_num(params, where, "a"),
                              require_num(params, where, "b"));
    } else if (kind == "aging") {
        f = aging_family(require_num(params, where, "g0"));
    } else if (kind == "cross_step") {
        f = cross_step_family(require_num(params, where, "g0"),
                              require_num(params, where, "beta"),
                              require_num(params, where, "x0"));
    } else if (kind == "piecewise_table") {
        f.kind = FamilyKind::piecewise_table;
        f.x_edges = params.value("x_edges", std::vector<double>{});
        f.y_edges = params.value("y_edges", std::vector<double>{});
        if (!params.contains("values"))
            fail("config: missing " + where + ".values");
        auto flatten = [](const json& rows) {
            std::vector<double> out;
            for (const auto& row : rows)
                for (const auto& v : row) out.push_back(v.get<double>());
            return out;
        };
        const json& values = params["values"];
        if (values.is_object()) {
            const char* keys[4] = {"00", "01", "10", "11"};
            for (int r = 0; r < 4; ++r) {
                if (!values.contains(keys[r]))
                    fail("config: missing " + where + ".values." + keys[r]);
                f.table_values[r] = flatten(values[keys[r]]);
            }
        } else {
            const auto flat = flatten(values);
            for (auto& t : f.table_values) t = flat;
        }
    } else {
        fail("config: unknown intensity kind '" + kind + "'");
    }
    return f;
}

State parse_state(const json& j) {
    State z;
    z.i = j.value("i", 0);
    z.x = j.value("x", 0.0);
    z.j = j.value("j", 0);
    z.y = j.value("y", 0.0);
    if ((z.i != 0 && z.i != 1) || (z.j != 0 && z.j != 1) || z.x < 0 || z.y < 0)
        fail("config: invalid state z0");
    return z;
}

}  // namespace

State state_from_json(const nlohmann::json& j) { return parse_state(j); }

IntensityModel ExperimentConfig::make_model() const {
    return unchecked ? IntensityModel::unchecked(lambda, mu, gamma, Gamma)
                     : IntensityModel(lambda, mu, gamma, Gamma);
}

ExperimentConfig parse_config(const json& j) {
    ExperimentConfig cfg;
    if (!j.contains("intensity")) fail("config: missing intensity block");
    const json& in = j["intensity"];
    cfg.lambda = parse_family(in, "lambda");
    cfg.mu = parse_family(in, "mu");
    cfg.gamma = require_num(in, "intensity", "gamma");
    cfg.Gamma = require_num(in, "intensity", "Gamma");
    cfg.unchecked = in.value("unchecked", false);

    if (!j.contains("experiment") || !j["experiment"].is_string())
        fail("config: missing experiment field");
    cfg.experiment = parse_kind(j["experiment"].get<std::string>());

    cfg.z0 = parse_state(j.value("z0", json::object()));
    cfg.horizon = j.value("horizon", cfg.horizon);
    cfg.burn_in = j.value("burn_in", cfg.burn_in);
    cfg.bins = j.value("bins", cfg.bins);
    cfg.K = j.value("K", cfg.K);
    cfg.K1 = j.value("K1", cfg.K1);
    cfg.m = j.value("m", cfg.m);
    cfg.m0 = j.value("m0", cfg.m0);
    cfg.k = j.value("k", cfg.k);
    cfg.k1 = j.value("k1", cfg.k1);
    cfg.delta = j.value("delta", cfg.delta);
    cfg.epsilon = j.value("epsilon", cfg.epsilon);
    cfg.p = j.value("p", cfg.p);
    cfg.h_power = j.value("h_power", cfg.h_power);
    cfg.t = j.value("t", cfg.t);
    cfg.part = j.value("part", cfg.part);
    cfg.cycles = j.value("cycles", cfg.cycles);
    cfg.deltas = j.value("deltas", std::vector<double>{0.1, 0.5, 1.0});
    cfg.reps = j.value("reps", cfg.reps);
    cfg.grid_points = j.value("grid_points", cfg.grid_points);
    cfg.time_cap = j.value("time_cap", cfg.time_cap);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    const std::string method = j.value("method", std::string("thinning"));
    if (method == "thinning")
        cfg.method = SampleMethod::thinning;
    else if (method == "inversion")
        cfg.method = SampleMethod::inversion;
    else
        fail("config: unknown method '" + method + "'");

    // Echo the fully resolved configuration for provenance.
    json resolved = j;
    resolved["experiment"] = to_string(cfg.experiment);
    resolved["z0"] = {{"i", cfg.z0.i}, {"x", cfg.z0.x}, {"j", cfg.z0.j}, {"y", cfg.z0.y}};
    resolved["seed"] = cfg.seed;
    resolved["reps"] = cfg.reps;
    resolved["method"] = method;
    resolved["output_dir"] = cfg.output_dir;
    resolved["deltas"] = cfg.deltas;
    cfg.resolved = resolved;

    validate_config(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) fail("config: cannot read " + path.string());
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        fail(std::string("config: parse error: ") + e.what());
    }
    return parse_config(j);
}

void validate_config(const ExperimentConfig& cfg) {
    // Certifies the (gamma, Gamma) bounds; throws naming the family.
    (void)cfg.make_model();

    switch (cfg.experiment) {
        case ExperimentKind::theorem_check: {
            if (cfg.part < 1 || cfg.part > 3) fail("config: part must be 1, 2 or 3");
            if (!(cfg.gamma > 2.0 * cfg.m0))
                fail("config: constraint gamma > 2*m0 fails");
            if (cfg.part >= 2 && !(cfg.m0 > 1.0 + 2.0 * cfg.k))
                fail("config: constraint m0 > 1 + 2k fails");
            if (cfg.part >= 2)
                (void)constant_C(cfg.part == 3 ? cfg.k1 : cfg.k, cfg.K, cfg.m,
                                 cfg.m0, cfg.gamma, cfg.delta, cfg.epsilon);
            if (cfg.part == 3 && !(cfg.K1 < cfg.K))
                fail("config: constraint K1 < K fails");
            if (cfg.part == 3 && !(cfg.k > 0.0 && cfg.k < cfg.k1))
                fail("config: constraint 0 < k < k1 fails");
            if (!(cfg.K > 0.0)) fail("config: constraint K > 0 fails");
            break;
        }
        case ExperimentKind::drift_check:
            if (!((1.0 - cfg.delta) * cfg.gamma > 2.0 * cfg.m))
                fail("config: constraint (1-delta)*gamma > 2m fails");
            (void)k_of_delta(cfg.delta, cfg.m);
            break;
        case ExperimentKind::validate_sampler:
            if (cfg.reps < 10'000)
                fail("config: constraint reps >= 1e4 fails for validate-sampler");
            break;
        case ExperimentKind::hitting_moments:
            if (!(cfg.K > 0.0)) fail("config: constraint K > 0 fails");
            if (cfg.reps < 100) fail("config: constraint reps >= 100 fails");
            break;
        case ExperimentKind::regeneration:
            if (!(cfg.K1 < cfg.K)) fail("config: constraint K1 < K fails");
            break;
        case ExperimentKind::stationary:
            if (!(cfg.horizon > cfg.burn_in))
                fail("config: constraint horizon > burn_in fails");
            break;
        case ExperimentKind::dynkin_check:
            if (!(cfg.t > 0.0)) fail("config: constraint t > 0 fails");
            break;
        case ExperimentKind::simulate:
            if (!(cfg.horizon > 0.0)) fail("config: constraint horizon > 0 fails");
            break;
    }
}

namespace {

json report_to_json(const EstimateReport& r) {
    json j{{"quantity", r.quantity},
           {"n", r.n},
           {"point", r.point},
           {"std_err", r.std_err},
           {"ci_low", r.ci_low},
           {"ci_high", r.ci_high},
           {"verdict", to_string(r.verdict)},
           {"seed", r.seed},
           {"excluded_count", r.excluded},
           {"max_over_mean", r.max_over_mean}};
    if (r.bound) j["bound"] = *r.bound;
    return j;
}

void write_report_csv(std::ostream& os, const EstimateReport& r) {
    os << "quantity,n,point,std_err,ci_low,ci_high,bound,verdict,seed,excluded_count\n";
    os << r.quantity << ',' << r.n << ',' << r.point << ',' << r.std_err << ','
       << r.ci_low << ',' << r.ci_high << ',';
    if (r.bound) os << *r.bound;
    os << ',' << to_string(r.verdict) << ',' << r.seed << ',' << r.excluded << '\n';
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::consistent: return 0;
        case Verdict::violated: return 2;
        case Verdict::inconclusive: return 3;
    }
    return 1;
}

struct ReportWriter {
    std::filesystem::path dir;
    std::string stem;

    std::ofstream open(const std::string& suffix) const {
        std::ofstream os(dir / (stem + suffix));
        if (!os) throw std::runtime_error("cannot write to " + dir.string());
        return os;
    }
};

}  // namespace

int run_experiment(const ExperimentConfig& cfg) {
    const IntensityModel model = cfg.make_model();
    std::filesystem::create_directories(cfg.output_dir);
    ReportWriter w{cfg.output_dir,
                   std::string(to_string(cfg.experiment)) + "_seed" +
                       std::to_string(cfg.seed)};
    {
        auto os = w.open("_config.json");
        os << cfg.resolved.dump(2) << '\n';
    }

    json out;
    out["experiment"] = to_string(cfg.experiment);
    out["seed"] = cfg.seed;
    out["config"] = cfg.resolved;
    int status = 0;

    switch (cfg.experiment) {
        case ExperimentKind::simulate: {
            const Path path = simulate_path(model, cfg.z0, cfg.horizon, cfg.seed, 0,
                                            cfg.method);
            auto os = w.open("_path.csv");
            write_path_csv(os, path);
            out["jumps"] = path.jumps.size();
            out["horizon"] = cfg.horizon;
            break;
        }
        case ExperimentKind::validate_sampler: {
            const IdentityReport rep = validate_identities(
                model, cfg.z0, cfg.deltas, cfg.reps, cfg.seed, cfg.method);
            json rows = json::array();
            auto os = w.open("_rows.csv");
            os << "delta,analytic,empirical,std_err,z_score\n";
            for (const auto& r : rep.rows) {
                rows.push_back({{"delta", r.delta},
                                {"analytic", r.analytic},
                                {"empirical", r.empirical},
                                {"std_err", r.std_err},
                                {"z_score", r.z_score}});
                os << r.delta << ',' << r.analytic << ',' << r.empirical << ','
                   << r.std_err << ',' << r.z_score << '\n';
            }
            out["rows"] = rows;
            out["max_abs_z"] = rep.max_abs_z;
            out["pass"] = rep.pass;
            status = rep.pass ? 0 : 2;
            break;
        }
        case ExperimentKind::drift_check: {
            const double K = k_of_delta(cfg.delta, cfg.m);
            const auto grid = make_drift_grid(K, cfg.m, cfg.grid_points);
            DriftParams dp{cfg.gamma, cfg.delta, cfg.epsilon, cfg.m, cfg.m0, cfg.k};
            const DriftReport rep = drift_check(model, dp, grid);
            auto os = w.open("_drift.csv");
            os << "i,x,j,y,LV,bound,margin,pass\n";
            for (const auto& viol : rep.violations)
                os << viol.state.i << ',' << viol.state.x << ',' << viol.state.j
                   << ',' << viol.state.y << ',' << viol.lv << ',' << viol.bound
                   << ',' << viol.margin << ",0\n";
            out["checked"] = rep.checked;
            out["violations"] = rep.violations.size();
            out["pass"] = rep.pass();
            status = rep.pass() ? 0 : 2;
            break;
        }
        case ExperimentKind::hitting_moments: {
            const EstimateReport r = estimate_tau_moment(
                model, cfg.z0, cfg.K, cfg.m, cfg.p, cfg.reps, cfg.seed,
                {.time_cap = cfg.time_cap, .method = cfg.method});
            out["report"] = report_to_json(r);
            auto os = w.open("_report.csv");
            write_report_csv(os, r);
            status = verdict_exit(r.verdict);
            break;
        }
        case ExperimentKind::theorem_check: {
            TheoremParams tp;
            tp.K = cfg.K;
            tp.K1 = cfg.K1;
            tp.m = cfg.m;
            tp.m0 = cfg.m0;
            tp.k = cfg.k;
            tp.k1 = cfg.k1;
            tp.delta = cfg.delta;
            tp.epsilon = cfg.epsilon;
            const EstimateReport r = check_theorem_bound(
                cfg.part, model, tp, cfg.z0, cfg.reps, cfg.seed,
                {.time_cap = cfg.time_cap, .method = cfg.method});
            out["part"] = cfg.part;
            out["report"] = report_to_json(r);
            auto os = w.open("_report.csv");
            write_report_csv(os, r);
            status = verdict_exit(r.verdict);
            break;
        }
        case ExperimentKind::dynkin_check: {
            const EstimateReport r = dynkin_residual(
                model, make_v_function(cfg.h_power), cfg.z0, cfg.t, cfg.reps,
                cfg.seed, {.method = cfg.method});
            out["h_power"] = cfg.h_power;
            out["report"] = report_to_json(r);
            auto os = w.open("_report.csv");
            write_report_csv(os, r);
            status = verdict_exit(r.verdict);
            break;
        }
        case ExperimentKind::stationary: {
            const OccupationReport rep = stationary_occupation(
                model, cfg.z0, cfg.horizon, cfg.burn_in, cfg.bins, cfg.seed,
                cfg.method);
            out["frac_i0"] = rep.frac_i0;
            out["frac_j0"] = rep.frac_j0;
            json rf = json::array();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    rf.push_back({{"i", i}, {"j", j},
                                  {"fraction", rep.regime_fraction[i][j]}});
            out["regime_fractions"] = rf;
            auto os = w.open("_occupation.csv");
            os << "grid,x_cdf,y_cdf\n";
            for (std::size_t g = 0; g < rep.grid.size(); ++g)
                os << rep.grid[g] << ',' << rep.x_cdf[g] << ',' << rep.y_cdf[g]
                   << '\n';
            break;
        }
        case ExperimentKind::regeneration: {
            const QEstimate q = estimate_q(model, cfg.K, cfg.K1, cfg.m,
                                           std::max(cfg.reps, 1000L), 5,
                                           cfg.seed ^ 0x5A5A5A5AULL, cfg.method);
            const ExcursionReport ex = estimate_excursion_survival(
                model, cfg.z0, cfg.K, cfg.K1, cfg.m, cfg.cycles, cfg.reps,
                cfg.seed, cfg.method);
            bool pass = q.q_low > 0.0;
            json rows = json::array();
            for (std::size_t l = 0; l < ex.freq.size(); ++l) {
                const double bound =
                    std::pow(1.0 - q.q_low, static_cast<double>(l + 1)) +
                    4.0 * ex.std_err[l];
                const bool ok = ex.freq[l] <= bound;
                pass = pass && ok;
                rows.push_back({{"l", l + 1},
                                {"freq", ex.freq[l]},
                                {"bound", bound},
                                {"pass", ok}});
            }
            out["q_low"] = q.q_low;
            out["q_min_freq"] = q.min_freq;
            out["excursions"] = rows;
            out["eta_indicator_corr"] = ex.eta_indicator_corr;
            out["pass"] = pass;
            status = pass ? 0 : 2;
            break;
        }
    }

    auto os = w.open("_report.json");
    os << out.dump(2) << '\n';
    return status;
}

}  // namespace relsim
