#include "hypam/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "hypam/error.hpp"
#include "hypam/selftest.hpp"

namespace hypam {

namespace {

constexpr const char* kVersion = "hypam 0.1.0";

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InputError, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(ErrorKind::InputError, std::string("malformed JSON: ") + e.what());
    }
    return j;
}

/// Inline object or a string path to a JSON file.
json resolve(const json& field) {
    if (field.is_string()) return load_json_file(field.get<std::string>());
    return field;
}

std::uint64_t require_seed(const json& job) {
    if (!job.contains("seed")) fail(ErrorKind::InputError, "sampling commands require a seed");
    return job.at("seed").get<std::uint64_t>();
}

void apply_tolerance_overrides(const json& job) {
    if (!job.contains("tol")) return;
    const json& t = job.at("tol");
    reject_unknown_fields(t, {"proj", "q", "disc", "rank", "antipode", "geo", "member",
                              "on_surface", "smooth", "conv"});
    Tolerances& g = tols();
    if (t.contains("proj")) g.proj = t.at("proj").get<double>();
    if (t.contains("q")) g.q = t.at("q").get<double>();
    if (t.contains("disc")) g.disc = t.at("disc").get<double>();
    if (t.contains("rank")) g.rank = t.at("rank").get<double>();
    if (t.contains("antipode")) g.antipode = t.at("antipode").get<double>();
    if (t.contains("geo")) g.geo = t.at("geo").get<double>();
    if (t.contains("member")) g.member = t.at("member").get<double>();
    if (t.contains("on_surface")) g.on_surface = t.at("on_surface").get<double>();
    if (t.contains("smooth")) g.smooth = t.at("smooth").get<double>();
    if (t.contains("conv")) g.conv = t.at("conv").get<double>();
}

void write_cloud(const PointCloud& cloud, const std::string& out) {
    if (out.size() >= 4 && out.substr(out.size() - 4) == ".ply")
        write_ply(cloud, out);
    else
        write_csv(cloud, out);
}

struct CommandOutput {
    json result = json::object();
    json verdicts = json::object();
    json residuals = json::object();
};

CommandOutput run_line_classify(const json& job) {
    reject_unknown_fields(job, {"command", "line", "out", "tol"});
    Line l = line_from_json(resolve(job.at("line")));
    LineAmoebaClass c = classify_line(l);
    json rep = to_json(c);
    // residuals: re-derived consistency numbers for the reported class
    json residuals = json::object();
    if (const auto* g = std::get_if<Geodesic>(&c)) {
        double worst = 0.0;
        for (const auto& lam : sample_line_params(l, 32, 1))
            worst = std::max(worst, dist_to_geodesic(kappa(l.at(lam)), g->end1, g->end2));
        residuals["max_dist_to_axis"] = worst;
    } else if (const auto* cy = std::get_if<Cylinder>(&c)) {
        double worst = 0.0;
        for (const auto& lam : sample_line_params(l, 32, 1))
            worst = std::max(worst,
                             std::abs(dist_to_geodesic(kappa(l.at(lam)), cy->axis1, cy->axis2) - cy->radius));
        residuals["radius_spread"] = worst;
    } else if (const auto* h = std::get_if<Horosphere>(&c)) {
        double level = busemann(h->center, h->basepoint);
        double worst = 0.0;
        for (const auto& lam : sample_line_params(l, 32, 1))
            worst = std::max(worst, std::abs(busemann(h->center, kappa(l.at(lam))) - level));
        residuals["busemann_range"] = worst;
    }
    CommandOutput out;
    out.result = rep;
    out.verdicts["class"] = class_name(c);
    out.residuals = residuals;
    return out;
}

CommandOutput run_line_sample(const json& job) {
    reject_unknown_fields(job, {"command", "line", "count", "seed", "out", "tol"});
    Line l = line_from_json(resolve(job.at("line")));
    int count = job.value("count", 256);
    PointCloud cloud = sample_line_amoeba(l, count, require_seed(job));
    if (job.contains("out")) write_cloud(cloud, job.at("out").get<std::string>());
    CommandOutput out;
    out.result["count"] = cloud.size();
    return out;
}

CommandOutput run_curve_gauss(const json& job) {
    reject_unknown_fields(job, {"command", "curve", "side", "out", "tol"});
    RationalCurve c = curve_from_json(resolve(job.at("curve")));
    GaussSide side = job.value("side", std::string("minus")) == "plus" ? GaussSide::Plus
                                                                       : GaussSide::Minus;
    int deg = gauss_degree_estimate(c, side);
    json samples = json::array();
    for (double th : {0.3, 1.1, 2.0})
        samples.push_back(to_json(gauss(c, CP1Point(std::cos(th), std::sin(th)), side)));
    CommandOutput out;
    out.result = json{{"degree_estimate", deg}, {"samples", samples}};
    out.verdicts["degree_estimate"] = deg;
    return out;
}

CommandOutput run_curve_critical(const json& job) {
    reject_unknown_fields(job, {"command", "curve", "grid", "crit_tol", "out", "tol"});
    RationalCurve c = curve_from_json(resolve(job.at("curve")));
    CriticalSearchOptions opts;
    opts.grid = job.value("grid", 512);
    opts.tol = job.value("crit_tol", 1e-8);
    auto params = critical_params(c, opts);
    json arr = json::array();
    for (const auto& p : params)
        arr.push_back({{"re", {std::real(p.u), std::real(p.v)}},
                       {"im", {std::imag(p.u), std::imag(p.v)}}});
    CommandOutput out;
    out.result = json{{"critical_params", arr}, {"count", params.size()}};
    return out;
}

CommandOutput run_surface_member(const json& job, int& exit_code) {
    reject_unknown_fields(job, {"command", "surface", "point", "starts", "seed", "out", "tol"});
    Surface s = surface_from_json(resolve(job.at("surface")));
    HPoint x = job.contains("point") ? hpoint_from_json(resolve(job.at("point"))) : HPoint::origin();
    MembershipOptions opts;
    opts.starts = job.value("starts", 64);
    opts.tau = tols().member;
    opts.seed = require_seed(job);
    MembershipResult r = membership(s, x, opts);
    exit_code = 0; // a negative membership verdict is still a successful query
    CommandOutput out;
    out.result = to_json(r);
    out.verdicts["member"] = r.member;
    out.residuals["min_value"] = r.min_value;
    return out;
}

CommandOutput run_surface_convexity(const json& job, int& exit_code) {
    reject_unknown_fields(job, {"command", "surface", "pairs", "steps", "starts", "seed", "out", "tol"});
    Surface s = surface_from_json(resolve(job.at("surface")));
    ConvexityOptions opts;
    opts.n_pairs = job.value("pairs", 50);
    opts.n_steps = job.value("steps", 20);
    opts.member.starts = job.value("starts", 32);
    opts.seed = require_seed(job);
    ConvexityReport rep = convexity_check(s, opts);
    exit_code = rep.violations.empty() ? 0 : 2;
    json viols = json::array();
    for (const auto& v : rep.violations)
        viols.push_back({{"x", to_json(v.x)}, {"y", to_json(v.y)}, {"interior", to_json(v.interior)},
                         {"value", v.value}});
    CommandOutput out;
    out.result = json{{"pairs_tested", rep.pairs_tested}, {"violations", viols}};
    out.verdicts["convex"] = rep.violations.empty();
    out.residuals["violation_count"] = rep.violations.size();
    return out;
}

CommandOutput run_surface_fill(const json& job, int& exit_code) {
    reject_unknown_fields(job, {"command", "surface", "count", "starts", "seed", "r_box", "out", "tol"});
    Surface s = surface_from_json(resolve(job.at("surface")));
    int count = job.value("count", 50);
    double r_box = job.value("r_box", 3.0);
    MembershipOptions opts;
    opts.starts = job.value("starts", 64);
    opts.seed = require_seed(job);
    Rng rng(opts.seed);
    int misses = 0;
    double worst = 0.0;
    for (int k = 0; k < count; ++k) {
        double dir[3];
        rng.unit3(dir);
        HPoint x = from_polar(r_box * rng.uniform(), AbsPoint::from_unit_vec({dir[0], dir[1], dir[2]}));
        MembershipOptions mo = opts;
        mo.seed = rng.bits();
        MembershipResult r = membership(s, x, mo);
        if (!r.member) ++misses;
        worst = std::max(worst, r.min_value);
    }
    exit_code = misses == 0 ? 0 : 2;
    CommandOutput out;
    out.result = json{{"count", count}, {"misses", misses}};
    out.verdicts["filled"] = misses == 0;
    out.residuals["worst_min_value"] = worst;
    return out;
}

CommandOutput run_surface_gauss(const json& job) {
    reject_unknown_fields(job, {"command", "surface", "at", "out", "tol"});
    Surface s = surface_from_json(resolve(job.at("surface")));
    ProjPoint a = projpoint_from_json(resolve(job.at("at")));
    Sym2Point g = gauss_left(s, a);
    CommandOutput out;
    out.result["gauss"] = to_json(g);
    out.residuals["real_dist"] = gauss_left_real_dist(s, a);
    out.residuals["jacobian_sigma_min"] = surface_jacobian_sigma_min(s, a);
    return out;
}

CommandOutput run_trop_validate(const json& job, int& exit_code) {
    reject_unknown_fields(job, {"command", "diagram", "out", "tol"});
    FloorDiagram d = diagram_from_json(resolve(job.at("diagram")));
    auto bad = validate_floor_diagram(d);
    exit_code = bad.empty() ? 0 : 2;
    CommandOutput out;
    out.result = json{{"violations", bad}};
    out.verdicts["valid"] = bad.empty();
    return out;
}

CommandOutput run_trop_theta(const json& job) {
    reject_unknown_fields(job, {"command", "diagram", "density", "out", "tol"});
    FloorDiagram d = diagram_from_json(resolve(job.at("diagram")));
    SphericalComplex sc = build_theta(d);
    PointCloud cloud = sc.sample(job.value("density", 256));
    if (job.contains("out")) write_cloud(cloud, job.at("out").get<std::string>());
    CommandOutput out;
    out.result = json{{"pieces", sc.pieces.size()}, {"points", cloud.size()}};
    return out;
}

CommandOutput run_trop_converge(const json& job, int& exit_code) {
    reject_unknown_fields(job,
                          {"command", "diagram", "line", "schedule_log", "density", "seed", "out", "tol"});
    FloorDiagram d = diagram_from_json(resolve(job.at("diagram")));
    Line l = line_from_json(resolve(job.at("line")));
    std::vector<double> slog = job.value("schedule_log", std::vector<double>{10, 20, 30, 40, 50});
    std::vector<double> schedule;
    for (double v : slog) schedule.push_back(std::exp(v));
    int density = job.value("density", 2000);
    std::uint64_t seed = require_seed(job);
    auto family = [&](double t) { return constant_line_family_samples(l, t, density, seed); };
    ConvergenceReport rep = kappa_convergence_check(family, d, schedule, density, tols().conv);
    exit_code = rep.pass ? 0 : 2;
    CommandOutput out;
    out.result = to_json(rep);
    out.verdicts["pass"] = rep.pass;
    out.verdicts["eventually_decreasing"] = rep.eventually_decreasing;
    out.residuals["final_distance"] = rep.final_distance;
    return out;
}

CommandOutput run_export(const json& job) {
    reject_unknown_fields(job, {"command", "points", "out", "tol"});
    json pts = resolve(job.at("points"));
    PointCloud cloud;
    for (const json& p : pts.at("points")) {
        BallPoint b;
        b.v = {p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()};
        double n = std::sqrt(b.v[0] * b.v[0] + b.v[1] * b.v[1] + b.v[2] * b.v[2]);
        if (n > 1.0 + 1e-12) fail(ErrorKind::InputError, "point outside the closed ball");
        b.boundary = n > 1.0 - 1e-12;
        cloud.add(b);
    }
    if (!job.contains("out")) fail(ErrorKind::InputError, "export needs an out path");
    write_cloud(cloud, job.at("out").get<std::string>());
    CommandOutput out;
    out.result["points"] = cloud.size();
    return out;
}

} // namespace

JobResult run_job(const json& job) {
    auto t0 = std::chrono::steady_clock::now();
    JobResult res;
    if (!job.is_object() || !job.contains("command"))
        fail(ErrorKind::InputError, "job needs a command field");
    apply_tolerance_overrides(job);
    std::string cmd = job.at("command").get<std::string>();

    CommandOutput payload;
    if (cmd == "line-classify") payload = run_line_classify(job);
    else if (cmd == "line-sample") payload = run_line_sample(job);
    else if (cmd == "curve-gauss") payload = run_curve_gauss(job);
    else if (cmd == "curve-critical") payload = run_curve_critical(job);
    else if (cmd == "surface-member") payload = run_surface_member(job, res.exit_code);
    else if (cmd == "surface-convexity") payload = run_surface_convexity(job, res.exit_code);
    else if (cmd == "surface-fill") payload = run_surface_fill(job, res.exit_code);
    else if (cmd == "surface-gauss") payload = run_surface_gauss(job);
    else if (cmd == "trop-validate") payload = run_trop_validate(job, res.exit_code);
    else if (cmd == "trop-theta") payload = run_trop_theta(job);
    else if (cmd == "trop-converge") payload = run_trop_converge(job, res.exit_code);
    else if (cmd == "export") payload = run_export(job);
    else fail(ErrorKind::InputError, "unknown command: " + cmd);

    auto t1 = std::chrono::steady_clock::now();
    res.report = json{{"command", cmd},
                      {"version", kVersion},
                      {"result", payload.result},
                      {"verdicts", payload.verdicts},
                      {"residuals", payload.residuals}};
    if (job.contains("seed")) res.report["seed"] = job.at("seed");
    res.report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return res;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"hyperbolic amoebas of subvarieties of PSL2(C)"};
    app.require_subcommand(0, 1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"line-classify", "classify a line amoeba (horosphere / cylinder / geodesic / empty)"},
        {"line-sample", "sample kappa-images of a line"},
        {"curve-gauss", "Gauss map values and degree estimate of a rational curve"},
        {"curve-critical", "critical parameters of kappa restricted to a curve"},
        {"surface-member", "does the surface amoeba contain a point of H^3"},
        {"surface-convexity", "test convexity of the amoeba complement"},
        {"surface-fill", "test that the amoeba fills sampled points"},
        {"surface-gauss", "left PSL2-Gauss map value and criticality data"},
        {"trop-validate", "validate a floor diagram"},
        {"trop-theta", "sample the spherical complex of a floor diagram"},
        {"trop-converge", "kappa-tropical convergence of a rescaled line family"},
        {"export", "write a ball-model point cloud to PLY/CSV"},
    };

    struct SubState {
        CLI::App* sub = nullptr;
        std::string job_path, out;
        std::uint64_t seed = 0;
        bool has_seed = false, selftest = false;
        int density = 0, starts = 0, count = 0;
        bool has_density = false, has_starts = false, has_count = false;
        std::map<std::string, double> tol;
    };
    std::vector<SubState> states(commands.size());

    for (size_t i = 0; i < commands.size(); ++i) {
        auto& st = states[i];
        st.sub = app.add_subcommand(commands[i].first, commands[i].second);
        st.sub->add_option("--job", st.job_path, "job JSON file");
        st.sub->add_flag("--selftest", st.selftest, "run the module's example checks");
        st.sub->add_option("--out", st.out, "output path for the report/artifacts");
        auto* s = st.sub->add_option("--seed", st.seed, "sampling seed");
        s->each([&st](const std::string&) { st.has_seed = true; });
        auto* d = st.sub->add_option("--density", st.density, "sampling density");
        d->each([&st](const std::string&) { st.has_density = true; });
        auto* n = st.sub->add_option("--starts", st.starts, "multistart budget");
        n->each([&st](const std::string&) { st.has_starts = true; });
        auto* c = st.sub->add_option("--count", st.count, "sample count");
        c->each([&st](const std::string&) { st.has_count = true; });
        for (const char* name : {"proj", "q", "disc", "rank", "antipode", "geo", "member",
                                 "on_surface", "smooth", "conv"})
            st.sub->add_option(std::string("--tol.") + name, st.tol[name]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    for (size_t i = 0; i < commands.size(); ++i) {
        const auto& st = states[i];
        if (!st.sub->parsed()) continue;

        const std::string module = commands[i].first.substr(0, commands[i].first.find('-'));
        if (st.selftest) {
            static const std::map<std::string, std::string> module_map = {
                {"line", "lines"}, {"curve", "curves"}, {"surface", "surfaces"},
                {"trop", "tropical"}, {"export", "core"}};
            auto results = run_selftests(module_map.at(module));
            bool all = true;
            for (const auto& r : results) {
                std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << "\n";
                all = all && r.pass;
            }
            return all ? 0 : 2;
        }

        try {
            json job;
            if (!st.job_path.empty()) job = load_json_file(st.job_path);
            job["command"] = commands[i].first;
            if (st.has_seed) job["seed"] = st.seed;
            if (!st.out.empty()) job["out"] = st.out;
            if (st.has_density) job["density"] = st.density;
            if (st.has_starts) job["starts"] = st.starts;
            if (st.has_count) job["count"] = st.count;
            for (const auto& [k, v] : st.tol)
                if (st.sub->count("--tol." + k)) job["tol"][k] = v;

            JobResult res = run_job(job);
            std::string text = res.report.dump(2) + "\n";
            std::cout << text;
            if (job.contains("out") && commands[i].first != "line-sample" &&
                commands[i].first != "trop-theta" && commands[i].first != "export") {
                std::ofstream out(job.at("out").get<std::string>());
                out << text;
            }
            return res.exit_code;
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            if (e.kind() == ErrorKind::NoComplementFound || e.kind() == ErrorKind::IllConditioned)
                return 4;
            return 3;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 3;
        }
    }

    std::cout << app.help();
    return 0;
}

} // namespace hypam
