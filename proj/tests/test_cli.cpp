#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hypam/cli.hpp"
#include "hypam/error.hpp"
#include "hypam/json_io.hpp"
#include "hypam/rng.hpp"

using namespace hypam;

namespace {

#ifndef HYPAM_CLI_PATH
#define HYPAM_CLI_PATH "./hypam"
#endif

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    std::string out_path = "/tmp/hypam_cli_out.txt";
    std::string cmd = std::string(HYPAM_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

json l2_line_json() {
    Line l = line_through(ProjPoint::from_entries(1, 0, 0, 0), ProjPoint::from_entries(0, 0, 0, 1));
    return to_json(l);
}

} // namespace

TEST_CASE("job API: line-classify on l2 reports a geodesic") {
    json job{{"command", "line-classify"}, {"line", l2_line_json()}};
    JobResult res = run_job(job);
    CHECK(res.exit_code == 0);
    CHECK(res.report.at("result").at("class") == "geodesic");
    auto ends = res.report.at("result").at("params").at("endpoints");
    REQUIRE(ends.size() == 2);
    // endpoints are the poles (0,0,+-1)
    double z0 = ends[0][2].get<double>(), z1 = ends[1][2].get<double>();
    CHECK(std::abs(std::abs(z0) - 1.0) < 1e-9);
    CHECK(std::abs(z0 + z1) < 1e-9);
}

TEST_CASE("job API: surface-member matches the library result") {
    Poly4 p;
    p.add({1, 0, 0, 1}, 4.0);
    p.add({0, 2, 0, 0}, -1.0);
    p.add({0, 0, 2, 0}, -1.0);
    json job{{"command", "surface-member"},
             {"surface", to_json(Surface::make(p))},
             {"point", to_json(HPoint::origin())},
             {"starts", 32},
             {"seed", 5}};
    JobResult res = run_job(job);
    CHECK(res.exit_code == 0);
    CHECK(res.report.at("result").at("member") == true);
}

TEST_CASE("job API: unknown fields are rejected") {
    json job{{"command", "line-classify"}, {"line", l2_line_json()}, {"bogus", 1}};
    CHECK_THROWS_AS(run_job(job), Error);
}

TEST_CASE("job API: sampling without a seed is an input error") {
    json job{{"command", "line-sample"}, {"line", l2_line_json()}, {"count", 16}};
    CHECK_THROWS_AS(run_job(job), Error);
}

TEST_CASE("CLI: malformed JSON exits 3 and writes nothing") {
    write_file("/tmp/hypam_bad.json", "{ not json");
    std::remove("/tmp/hypam_bad_out.json");
    RunResult r = run_cli("line-classify --job /tmp/hypam_bad.json --out /tmp/hypam_bad_out.json");
    CHECK(r.exit_code == 3);
    std::ifstream probe("/tmp/hypam_bad_out.json");
    CHECK_FALSE(probe.good());
}

TEST_CASE("CLI: line-classify end-to-end with deterministic reports") {
    write_file("/tmp/hypam_l2.json", l2_line_json().dump());
    write_file("/tmp/hypam_job.json", json{{"line", "/tmp/hypam_l2.json"}}.dump());
    RunResult r1 = run_cli("line-classify --job /tmp/hypam_job.json");
    RunResult r2 = run_cli("line-classify --job /tmp/hypam_job.json");
    CHECK(r1.exit_code == 0);
    json a = json::parse(r1.stdout_text), b = json::parse(r2.stdout_text);
    a.erase("timing_ms");
    b.erase("timing_ms");
    CHECK(a.dump() == b.dump());
    CHECK(a.at("result").at("class") == "geodesic");
}

TEST_CASE("CLI: trop-validate verdict failure exits 2") {
    FloorDiagram d = example_figure_diagram();
    d.degree = 5; // break the total-degree constraint
    write_file("/tmp/hypam_diag.json", to_json(d).dump());
    write_file("/tmp/hypam_diag_job.json", json{{"diagram", "/tmp/hypam_diag.json"}}.dump());
    RunResult r = run_cli("trop-validate --job /tmp/hypam_diag_job.json");
    CHECK(r.exit_code == 2);

    FloorDiagram good = example_figure_diagram();
    write_file("/tmp/hypam_diag2.json", to_json(good).dump());
    write_file("/tmp/hypam_diag2_job.json", json{{"diagram", "/tmp/hypam_diag2.json"}}.dump());
    CHECK(run_cli("trop-validate --job /tmp/hypam_diag2_job.json").exit_code == 0);
}

TEST_CASE("CLI: line-sample writes PLY output") {
    write_file("/tmp/hypam_l2.json", l2_line_json().dump());
    write_file("/tmp/hypam_sample_job.json", json{{"line", "/tmp/hypam_l2.json"}}.dump());
    std::remove("/tmp/hypam_cloud.ply");
    RunResult r = run_cli(
        "line-sample --job /tmp/hypam_sample_job.json --count 32 --seed 9 --out /tmp/hypam_cloud.ply");
    CHECK(r.exit_code == 0);
    std::ifstream ply("/tmp/hypam_cloud.ply", std::ios::binary);
    REQUIRE(ply.good());
    std::string header;
    std::getline(ply, header);
    CHECK(header == "ply");
    std::getline(ply, header);
    CHECK(header == "format binary_little_endian 1.0");
    std::stringstream rest;
    rest << ply.rdbuf();
    CHECK(rest.str().find("element vertex 32") != std::string::npos);
}

TEST_CASE("CLI: selftests run per module") {
    RunResult r = run_cli("line-classify --selftest");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("PASS") != std::string::npos);
    CHECK(r.stdout_text.find("FAIL") == std::string::npos);
}

TEST_CASE("CLI: trop-theta exports the complex") {
    write_file("/tmp/hypam_fig.json", to_json(example_figure_diagram()).dump());
    write_file("/tmp/hypam_theta_job.json", json{{"diagram", "/tmp/hypam_fig.json"}}.dump());
    std::remove("/tmp/hypam_theta.csv");
    RunResult r = run_cli(
        "trop-theta --job /tmp/hypam_theta_job.json --density 50 --out /tmp/hypam_theta.csv");
    CHECK(r.exit_code == 0);
    std::ifstream csv("/tmp/hypam_theta.csv");
    REQUIRE(csv.good());
    std::string head;
    std::getline(csv, head);
    CHECK(head == "x,y,z,piece");
}

TEST_CASE("CLI: exhausted numerical budget exits 4") {
    // a plane fills H^3, so complement rejection sampling must give up
    Poly4 p = Poly4::variable(2);
    write_file("/tmp/hypam_plane.json", to_json(Surface::make(p)).dump());
    write_file("/tmp/hypam_conv_job.json",
               json{{"surface", "/tmp/hypam_plane.json"}, {"pairs", 2}, {"steps", 2}}.dump());
    RunResult r = run_cli("surface-convexity --job /tmp/hypam_conv_job.json --seed 3 --starts 16");
    CHECK(r.exit_code == 4);
}

TEST_CASE("job API: export writes CSV and PLY clouds") {
    json pts{{"points", {{0.1, 0.2, 0.3}, {0.0, 0.0, 1.0}}}};
    std::remove("/tmp/hypam_export.csv");
    JobResult r1 =
        run_job(json{{"command", "export"}, {"points", pts}, {"out", "/tmp/hypam_export.csv"}});
    CHECK(r1.exit_code == 0);
    std::ifstream csv("/tmp/hypam_export.csv");
    REQUIRE(csv.good());
    std::string line;
    std::getline(csv, line);
    CHECK(line == "x,y,z");

    // points outside the closed ball are rejected
    json bad{{"points", {{2.0, 0.0, 0.0}}}};
    CHECK_THROWS_AS(run_job(json{{"command", "export"}, {"points", bad}, {"out", "/tmp/x.ply"}}),
                    Error);
}

TEST_CASE("JSON round-trips across the wire schemas") {
    Rng rng(888);
    for (int k = 0; k < 50; ++k) {
        ProjPoint p(Mat2(rng.cnormal(), rng.cnormal(), rng.cnormal(), rng.cnormal()));
        CHECK(same_point(projpoint_from_json(to_json(p)), p));
    }
    for (int k = 0; k < 20; ++k) {
        ProjPoint p(Mat2(rng.cnormal(), rng.cnormal(), rng.cnormal(), rng.cnormal()));
        ProjPoint q(Mat2(rng.cnormal(), rng.cnormal(), rng.cnormal(), rng.cnormal()));
        Line l;
        try {
            l = line_through(p, q);
        } catch (const Error&) {
            continue;
        }
        Line back = line_from_json(to_json(l));
        CHECK(back.qdata.kind == l.qdata.kind);
    }
    for (int k = 0; k < 20; ++k) {
        ProjPoint p(Mat2(rng.cnormal(), rng.cnormal(), rng.cnormal(), rng.cnormal()));
        if (on_quadric(p)) continue;
        HPoint x = kappa(p);
        CHECK(dist(hpoint_from_json(to_json(x)), x) < 1e-9);
    }
    // curve and surface coefficients survive exactly
    std::array<BinaryForm, 4> f;
    for (int i = 0; i < 4; ++i) f[i].coeffs = {rng.cnormal(), rng.cnormal(), rng.cnormal()};
    RationalCurve c = RationalCurve::make(f);
    RationalCurve c2 = curve_from_json(to_json(c));
    for (int i = 0; i < 4; ++i)
        for (size_t j = 0; j < c.components[i].coeffs.size(); ++j)
            CHECK(c.components[i].coeffs[j] == c2.components[i].coeffs[j]);

    Poly4 sp;
    sp.add({2, 0, 0, 0}, cplx(1.5, -0.25));
    sp.add({0, 1, 1, 0}, cplx(0.0, 2.0));
    Surface s = Surface::make(sp);
    Surface s2 = surface_from_json(to_json(s));
    CHECK(s2.p.monomials == s.p.monomials);

    FloorDiagram d = example_figure_diagram();
    FloorDiagram d2 = diagram_from_json(to_json(d));
    CHECK(validate_floor_diagram(d2).empty());
    CHECK(d2.vertices.size() == d.vertices.size());
    CHECK(d2.edges.size() == d.edges.size());
    CHECK(to_json(d2).dump() == to_json(d).dump());
}

TEST_CASE("job API: curve commands") {
    RationalCurve line = [] {
        std::array<BinaryForm, 4> f;
        f[0].coeffs = {1.0, 0.0};
        f[1].coeffs = {0.0, 1.0};
        f[2].coeffs = {1.0, -1.0};
        f[3].coeffs = {1.0, 2.0};
        return RationalCurve::make(f);
    }();
    JobResult g = run_job(json{{"command", "curve-gauss"}, {"curve", to_json(line)}});
    CHECK(g.exit_code == 0);
    CHECK(g.report.at("verdicts").at("degree_estimate") == 0);
    JobResult gp =
        run_job(json{{"command", "curve-gauss"}, {"curve", to_json(line)}, {"side", "plus"}});
    CHECK(gp.report.at("verdicts").at("degree_estimate") == 0);

    JobResult c = run_job(
        json{{"command", "curve-critical"}, {"curve", to_json(line)}, {"grid", 32}});
    CHECK(c.exit_code == 0);
    // a generic line is a cylinder type: no critical parameters
    CHECK(c.report.at("result").at("count") == 0);
}

TEST_CASE("job API: surface-gauss report") {
    Poly4 p;
    p.add({1, 0, 0, 0}, cplx(1.0, 0.25));
    p.add({0, 1, 0, 0}, cplx(0.4, -0.6));
    p.add({0, 0, 1, 0}, cplx(-0.8, 0.3));
    p.add({0, 0, 0, 1}, cplx(0.55, 0.9));
    Surface r = Surface::make(p);
    // a point of the plane, off Q
    cplx a(0.3, 1.1), b(-0.7, 0.2), c(1.0, 0.0);
    cplx d = -p.eval(Mat2(a, b, c, 0.0)) / p.monomials.at({0, 0, 0, 1});
    ProjPoint pt(Mat2(a, b, c, d));
    REQUIRE(!on_quadric(pt));
    JobResult res = run_job(
        json{{"command", "surface-gauss"}, {"surface", to_json(r)}, {"at", to_json(pt)}});
    CHECK(res.exit_code == 0);
    CHECK(res.report.at("residuals").contains("real_dist"));
    CHECK(res.report.at("residuals").contains("jacobian_sigma_min"));
}

TEST_CASE("CLI: unknown subcommand exits nonzero") {
    RunResult r = run_cli("no-such-command");
    CHECK(r.exit_code == 3);
}

TEST_CASE("job API: surface-fill on the Borel plane") {
    JobResult r = run_job(json{{"command", "surface-fill"},
                               {"surface", to_json(Surface::make(Poly4::variable(2)))},
                               {"count", 8},
                               {"starts", 32},
                               {"seed", 21}});
    CHECK(r.exit_code == 0);
    CHECK(r.report.at("verdicts").at("filled") == true);
}

TEST_CASE("job API: trop-converge verdicts on matched and mismatched diagrams") {
    Mat2 b(1, 1, 0, 1);
    Line l = line_through(ProjPoint(Mat2(1, 0, 0, 0) * b), ProjPoint(Mat2(0, 0, 0, 1) * b));
    auto cls = classify_line(l);
    const auto* cy = std::get_if<Cylinder>(&cls);
    REQUIRE(cy);
    json base{{"command", "trop-converge"},
              {"line", to_json(l)},
              {"diagram", to_json(constant_line_diagram(cy->axis1, cy->axis2))},
              {"schedule_log", {6.0, 10.0, 14.0, 18.0}},
              {"density", 1200},
              {"seed", 11}};
    JobResult ok = run_job(base);
    CHECK(ok.exit_code == 0);
    CHECK(ok.report.at("verdicts").at("pass") == true);

    json wrong = base;
    wrong["diagram"] =
        to_json(constant_line_diagram(AbsPoint(CP1Point(1.0, 1.0)), AbsPoint(CP1Point(1.0, -1.0))));
    JobResult bad = run_job(wrong);
    CHECK(bad.exit_code == 2);
    CHECK(bad.report.at("verdicts").at("pass") == false);
}

TEST_CASE("CLI: tolerance overrides are honored") {
    // forcing a huge antipode tolerance reclassifies a cylinder as a geodesic
    Mat2 b(1, 1, 0, 1);
    Line l = line_through(ProjPoint(Mat2(1, 0, 0, 0) * b), ProjPoint(Mat2(0, 0, 0, 1) * b));
    write_file("/tmp/hypam_cyl.json", to_json(l).dump());
    write_file("/tmp/hypam_cyl_job.json", json{{"line", "/tmp/hypam_cyl.json"}}.dump());
    RunResult normal = run_cli("line-classify --job /tmp/hypam_cyl_job.json");
    CHECK(json::parse(normal.stdout_text).at("result").at("class") == "cylinder");
    RunResult forced = run_cli("line-classify --job /tmp/hypam_cyl_job.json --tol.antipode 3.2");
    CHECK(json::parse(forced.stdout_text).at("result").at("class") == "geodesic");
}
